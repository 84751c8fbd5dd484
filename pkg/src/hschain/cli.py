"""Command-line front end.

Every subcommand resolves its configuration, computes, writes artifact
files into the output directory, and prints a one-line summary.  Output
files are deterministic: they begin with a comment header recording the
resolved configuration, floats are printed with 17 significant digits,
rationals as p/q strings, and nothing in the pipeline depends on time,
locale, or environment.

Exit codes: 0 success, 1 invalid configuration or capacity violation,
2 internal inconsistency detected by `crosscheck`.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .chains import ANTIFERRO, FERRO, ChainSpec
from .crosscheck import DEFAULT_BRUTE_CAP, run_crosscheck
from .density import (
    DEFAULT_COMPOSITION_CAP,
    composition_density,
    density_dp,
)
from .errors import CapacityError, ConvergenceError, ValidationError
from .hamiltonian import DEFAULT_DENSE_CAP, oracle_compare
from .levelstats import default_spacing_bins, ks_distance, spacing_distribution, unfold
from .moments import closed_form_moments
from .motifs import DEFAULT_ENUMERATION_CAP, brute_force_density
from .svgplot import histogram_plot, line_plot
from .table import format_rational
from .transfer import charfn_series, convergence_report
from . import __version__

_FAMILY_BY_FLAG = {"hs": "HS", "pf": "PF", "fi": "FI"}
_FORMATS = {"csv", "json", "svg"}


def _float_repr(x: float) -> str:
    return f"{float(x):.17g}"


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; this CLI reserves 2 for
    crosscheck inconsistencies, so parse errors exit 1 instead."""

    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_formats(text: str, allowed: set) -> list:
    formats = [part.strip() for part in text.split(",") if part.strip()]
    for fmt in formats:
        if fmt not in _FORMATS:
            raise ValidationError(f"unknown format {fmt!r}; choose from {sorted(_FORMATS)}")
        if fmt not in allowed:
            raise ValidationError(f"format {fmt!r} is not available for this subcommand")
    if not formats:
        raise ValidationError("at least one output format is required")
    return formats


def _parse_sweep(text: str) -> list:
    """Parse an N sweep given as a:b:geometric (doubling) or a:b:step."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"sweep must look like a:b:geometric or a:b:step, got {text!r}")
    try:
        start, stop = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValidationError(f"bad sweep bounds in {text!r}") from exc
    if start < 2 or stop < start:
        raise ValidationError(f"sweep bounds must satisfy 2 <= a <= b, got {text!r}")
    if parts[2] == "geometric":
        values = []
        n = start
        while n <= stop:
            values.append(n)
            n *= 2
    else:
        try:
            step = int(parts[2])
        except ValueError as exc:
            raise ValidationError(f"bad sweep step in {text!r}") from exc
        if step < 1:
            raise ValidationError("sweep step must be positive")
        values = list(range(start, stop + 1, step))
    if not values:
        raise ValidationError(f"sweep {text!r} is empty")
    return values


def _resolve_spec(args) -> ChainSpec:
    if getattr(args, "spec", None):
        text = args.spec
        if os.path.exists(text):
            with open(text, "r", encoding="utf-8") as handle:
                text = handle.read()
        return ChainSpec.from_json(text)
    missing = [flag for flag, value in (
        ("--family", args.family), ("--N", args.n_spins), ("--m", args.m)
    ) if value is None]
    if missing:
        raise ValidationError(f"missing required options: {', '.join(missing)} (or pass --spec)")
    return ChainSpec(
        family=_FAMILY_BY_FLAG[args.family],
        n_spins=args.n_spins,
        m=args.m,
        epsilon=args.epsilon,
        alpha=args.alpha,
    )


def _spec_config(spec: ChainSpec) -> dict:
    config = {
        "family": spec.family,
        "N": spec.n_spins,
        "m": spec.m,
        "epsilon": f"{spec.epsilon:+d}",
    }
    if spec.alpha is not None:
        config["alpha"] = format_rational(spec.alpha)
    return config


def _header_lines(command: str, config: dict) -> list:
    lines = [f"# hschain {__version__} {command}"]
    lines.extend(f"# {key} = {config[key]}" for key in sorted(config))
    return lines


def _write_csv(path: str, header: list, rows: list) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(header + rows) + "\n")
    print(f"wrote {path}")


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")


def _write_svg(path: str, command: str, config: dict, svg: str) -> None:
    comment_body = "\n".join(line[2:] for line in _header_lines(command, config))
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"<!--\n{comment_body}\n-->\n" + svg)
    print(f"wrote {path}")


def _out_path(args, name: str) -> str:
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_density(args) -> int:
    spec = _resolve_spec(args)
    if args.backend == "brute":
        density = brute_force_density(spec, cap=args.enumeration_cap)
    elif args.backend == "composition":
        density = composition_density(spec, cap=args.composition_cap)
    else:
        density = density_dp(spec)
    config = _spec_config(spec)
    config["backend"] = args.backend
    header = _header_lines("density", config)
    formats = _parse_formats(args.format, {"csv", "json"})
    if "csv" in formats:
        path = _out_path(args, "density.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            # to_csv adds the comment markers itself
            handle.write(density.to_csv(line[2:] for line in header))
        print(f"wrote {path}")
    if "json" in formats:
        payload = {"config": config, "density": density.to_json_dict()}
        _write_json(_out_path(args, "density.json"), payload)
    print(f"levels = {len(density.levels())}, states = {density.total}")
    return 0


def _cmd_moments(args) -> int:
    spec = _resolve_spec(args)
    stats = closed_form_moments(spec)
    config = _spec_config(spec)
    formats = _parse_formats(args.format, {"csv", "json"})
    mu_text = format_rational(stats.mu)
    sigma2_text = format_rational(stats.sigma2)
    if "csv" in formats:
        rows = [
            "quantity,value",
            f"mu,{mu_text}",
            f"sigma2,{sigma2_text}",
            f"sigma,{_float_repr(stats.sigma)}",
        ]
        _write_csv(_out_path(args, "moments.csv"), _header_lines("moments", config), rows)
    if "json" in formats:
        payload = {
            "config": config,
            "mu": mu_text,
            "sigma2": sigma2_text,
            "sigma": stats.sigma,
        }
        _write_json(_out_path(args, "moments.json"), payload)
    print(f"mu = {mu_text}, sigma2 = {sigma2_text}")
    return 0


def _t_grid_from(args) -> np.ndarray:
    if args.t_points < 2:
        raise ValidationError("--t-points must be at least 2")
    if not args.t_max > 0:
        raise ValidationError("--t-max must be positive")
    return np.linspace(-args.t_max, args.t_max, args.t_points)


def _cmd_charfn(args) -> int:
    spec = _resolve_spec(args)
    stats = closed_form_moments(spec)
    grid = _t_grid_from(args)
    series = charfn_series(spec, stats, grid)
    config = _spec_config(spec)
    config["t_max"] = _float_repr(args.t_max)
    config["t_points"] = args.t_points
    formats = _parse_formats(args.format, {"csv", "svg"})
    if "csv" in formats:
        rows = ["t,re_exact,im_exact,re_asym,im_asym,gauss_ref"]
        for k, t in enumerate(series.t_grid):
            rows.append(",".join([
                _float_repr(t),
                _float_repr(series.exact_values[k].real),
                _float_repr(series.exact_values[k].imag),
                _float_repr(series.asymptotic_values[k].real),
                _float_repr(series.asymptotic_values[k].imag),
                _float_repr(series.gaussian_ref[k]),
            ]))
        _write_csv(_out_path(args, "charfn.csv"), _header_lines("charfn", config), rows)
    if "svg" in formats:
        svg = line_plot(
            [
                ("|charfn exact|", series.t_grid, np.abs(series.exact_values)),
                ("|charfn asymptotic|", series.t_grid, np.abs(series.asymptotic_values)),
                ("gaussian", series.t_grid, series.gaussian_ref),
            ],
            title=f"characteristic function, {spec.family} N={spec.n_spins} m={spec.m}",
            x_label="t",
            y_label="modulus",
        )
        _write_svg(_out_path(args, "charfn.svg"), "charfn", config, svg)
    gap = float(np.abs(series.exact_values - series.gaussian_ref).max())
    print(f"max |charfn - gaussian| = {_float_repr(gap)}")
    return 0


def _cmd_convergence(args) -> int:
    family = _FAMILY_BY_FLAG[args.family]
    sweep = _parse_sweep(args.n_sweep)
    grid = _t_grid_from(args)
    report = convergence_report(
        family, args.m, args.epsilon, n_values=sweep, t_grid=grid, alpha=args.alpha
    )
    config = {
        "family": family,
        "m": args.m,
        "epsilon": f"{args.epsilon:+d}",
        "n_sweep": ",".join(str(n) for n in report.n_values),
        "t_max": _float_repr(args.t_max),
        "t_points": args.t_points,
        "gauss_slope": _float_repr(report.gauss_slope),
        "asym_slope": _float_repr(report.asym_slope),
    }
    if args.alpha is not None:
        spec = ChainSpec(family, sweep[0], args.m, args.epsilon, args.alpha)
        config["alpha"] = format_rational(spec.alpha)
    formats = _parse_formats(args.format, {"csv", "svg"})
    if "csv" in formats:
        rows = ["N,gauss_deviation,asym_deviation"]
        for k, n in enumerate(report.n_values):
            rows.append(
                f"{n},{_float_repr(report.gauss_deviation[k])},"
                f"{_float_repr(report.asym_deviation[k])}"
            )
        _write_csv(_out_path(args, "convergence.csv"), _header_lines("convergence", config), rows)
    if "svg" in formats:
        svg = line_plot(
            [
                ("sup distance to gaussian", report.n_values, report.gauss_deviation),
                ("sup distance to asymptotic", report.n_values, report.asym_deviation),
            ],
            title=f"convergence, {family} m={args.m}",
            x_label="N",
            y_label="sup distance",
            log_x=True,
            log_y=True,
        )
        _write_svg(_out_path(args, "convergence.svg"), "convergence", config, svg)
    print(
        f"gauss_slope = {_float_repr(report.gauss_slope)}, "
        f"asym_slope = {_float_repr(report.asym_slope)}"
    )
    return 0


def _cmd_spacings(args) -> int:
    spec = _resolve_spec(args)
    stats = closed_form_moments(spec)
    density = density_dp(spec)
    histogram = spacing_distribution(
        unfold(density, stats), bins=default_spacing_bins(args.s_max, args.bins)
    )
    config = _spec_config(spec)
    config["bins"] = args.bins
    config["s_max"] = _float_repr(args.s_max)
    formats = _parse_formats(args.format, {"csv", "svg"})
    if "csv" in formats:
        rows = ["bin_center,density,poisson_ref,wigner_ref"]
        for k, center in enumerate(histogram.bin_centers):
            rows.append(",".join([
                _float_repr(center),
                _float_repr(histogram.density[k]),
                _float_repr(histogram.poisson_ref[k]),
                _float_repr(histogram.wigner_ref[k]),
            ]))
        _write_csv(_out_path(args, "spacings.csv"), _header_lines("spacings", config), rows)
    if "svg" in formats:
        centers = histogram.bin_centers
        svg = histogram_plot(
            histogram.bin_edges,
            histogram.density,
            [
                ("poisson exp(-s)", centers, histogram.poisson_ref),
                ("wigner surmise", centers, histogram.wigner_ref),
            ],
            title=f"spacing distribution, {spec.family} N={spec.n_spins} m={spec.m}",
            x_label="s",
            y_label="p(s)",
        )
        _write_svg(_out_path(args, "spacings.svg"), "spacings", config, svg)
    mean = float(histogram.spacings.mean())
    print(f"spacings = {histogram.spacings.size}, mean = {_float_repr(mean)}")
    return 0


def _cmd_kscan(args) -> int:
    family = _FAMILY_BY_FLAG[args.family]
    sweep = _parse_sweep(args.n_sweep)
    rows = ["N,ks_distance"]
    distances = []
    for n in sweep:
        spec = ChainSpec(family, n, args.m, args.epsilon, args.alpha)
        value = ks_distance(density_dp(spec), closed_form_moments(spec))
        distances.append(value)
        rows.append(f"{n},{_float_repr(value)}")
    config = {
        "family": family,
        "m": args.m,
        "epsilon": f"{args.epsilon:+d}",
        "n_sweep": ",".join(str(n) for n in sweep),
    }
    if args.alpha is not None:
        config["alpha"] = format_rational(ChainSpec(family, sweep[0], args.m, args.epsilon, args.alpha).alpha)
    formats = _parse_formats(args.format, {"csv", "svg"})
    if "csv" in formats:
        _write_csv(_out_path(args, "kscan.csv"), _header_lines("kscan", config), rows)
    if "svg" in formats:
        svg = line_plot(
            [("ks distance", sweep, distances)],
            title=f"gaussian fit distance, {family} m={args.m}",
            x_label="N",
            y_label="ks distance",
            log_x=True,
            log_y=True,
        )
        _write_svg(_out_path(args, "kscan.svg"), "kscan", config, svg)
    print(f"ks distance: first = {_float_repr(distances[0])}, last = {_float_repr(distances[-1])}")
    return 0


def _cmd_oracle(args) -> int:
    spec = _resolve_spec(args)
    report = oracle_compare(spec, dense_cap=args.dense_cap)
    config = _spec_config(spec)
    config["dense_cap"] = args.dense_cap
    payload = {"config": config, "report": report.to_json_dict()}
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    formats = _parse_formats(args.format, {"json"})
    if "json" in formats and args.out is not None:
        _write_json(_out_path(args, "oracle.json"), payload)
    return 0


def _cmd_crosscheck(args) -> int:
    report = run_crosscheck(max_n=args.max_n, brute_cap=args.brute_cap)
    config = {"max_N": args.max_n, "brute_cap": args.brute_cap}
    formats = _parse_formats(args.format, {"csv"})
    if "csv" in formats:
        rows = ["check,family,N,m,epsilon,alpha,deviation,passed"]
        for result in report.results:
            spec = result.spec
            alpha = format_rational(spec.alpha) if spec.alpha is not None else ""
            rows.append(",".join([
                result.name,
                spec.family,
                str(spec.n_spins),
                str(spec.m),
                f"{spec.epsilon:+d}",
                alpha,
                _float_repr(result.deviation),
                "1" if result.passed else "0",
            ]))
        _write_csv(_out_path(args, "crosscheck.csv"), _header_lines("crosscheck", config), rows)
    total = len(report.results)
    failed = len(report.failures)
    print(f"checks = {total}, failed = {failed}")
    if failed:
        for result in report.failures[:10]:
            print(f"FAIL {result.name} {result.spec}", file=sys.stderr)
        return 2
    return 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _add_spec_options(parser, with_backend: bool = False) -> None:
    parser.add_argument("--family", choices=sorted(_FAMILY_BY_FLAG), type=str.lower,
                        help="chain family")
    parser.add_argument("--N", dest="n_spins", type=int, help="number of spins")
    parser.add_argument("--m", type=int, help="internal states per spin")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--ferro", dest="epsilon", action="store_const", const=FERRO,
                       help="ferromagnetic sign (default)")
    group.add_argument("--antiferro", dest="epsilon", action="store_const", const=ANTIFERRO,
                       help="antiferromagnetic sign")
    parser.set_defaults(epsilon=FERRO)
    parser.add_argument("--alpha", default=None,
                        help="hyperbolic-chain parameter, integer or p/q")
    parser.add_argument("--spec", default=None,
                        help="chain spec as inline JSON or a path to a JSON file")
    if with_backend:
        parser.add_argument("--backend", choices=("dp", "composition", "brute"), default="dp",
                            help="density backend")


def _add_sweep_options(parser, default_sweep: str) -> None:
    parser.add_argument("--family", choices=sorted(_FAMILY_BY_FLAG), type=str.lower,
                        required=True)
    parser.add_argument("--m", type=int, required=True)
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--ferro", dest="epsilon", action="store_const", const=FERRO)
    group.add_argument("--antiferro", dest="epsilon", action="store_const", const=ANTIFERRO)
    parser.set_defaults(epsilon=FERRO)
    parser.add_argument("--alpha", default=None)
    parser.add_argument("--n-sweep", default=default_sweep,
                        help="N sweep as a:b:geometric (doubling) or a:b:step")


def _add_grid_options(parser) -> None:
    parser.add_argument("--t-max", type=float, default=6.0)
    parser.add_argument("--t-points", type=int, default=241)


def _add_output_options(parser, default_format: str) -> None:
    parser.add_argument("--out", default="hschain-out", help="output directory")
    parser.add_argument("--format", default=default_format,
                        help="comma-separated output formats (csv, json, svg)")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="hschain",
        description="Exact spectra and level statistics of spin chains of Haldane-Shastry type.",
    )
    parser.add_argument("--version", action="version", version=f"hschain {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    sub = commands.add_parser("density", help="exact level density")
    _add_spec_options(sub, with_backend=True)
    sub.add_argument("--enumeration-cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    sub.add_argument("--composition-cap", type=int, default=DEFAULT_COMPOSITION_CAP)
    _add_output_options(sub, "csv")
    sub.set_defaults(handler=_cmd_density)

    sub = commands.add_parser("moments", help="closed-form mean and variance")
    _add_spec_options(sub)
    _add_output_options(sub, "csv")
    sub.set_defaults(handler=_cmd_moments)

    sub = commands.add_parser("charfn", help="characteristic function on a t grid")
    _add_spec_options(sub)
    _add_grid_options(sub)
    _add_output_options(sub, "csv")
    sub.set_defaults(handler=_cmd_charfn)

    sub = commands.add_parser("convergence", help="sup-norm distance to the gaussian over N")
    _add_sweep_options(sub, "16:1024:geometric")
    _add_grid_options(sub)
    _add_output_options(sub, "csv,svg")
    sub.set_defaults(handler=_cmd_convergence)

    sub = commands.add_parser("spacings", help="unfolded spacing histogram")
    _add_spec_options(sub)
    sub.add_argument("--bins", type=int, default=40)
    sub.add_argument("--s-max", type=float, default=4.0)
    _add_output_options(sub, "csv,svg")
    sub.set_defaults(handler=_cmd_spacings)

    sub = commands.add_parser("kscan", help="gaussian fit distance over an N sweep")
    _add_sweep_options(sub, "16:128:geometric")
    _add_output_options(sub, "csv")
    sub.set_defaults(handler=_cmd_kscan)

    sub = commands.add_parser("oracle", help="dense-Hamiltonian check of the motif spectrum")
    _add_spec_options(sub)
    sub.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP)
    _add_output_options(sub, "json")
    sub.set_defaults(handler=_cmd_oracle)

    sub = commands.add_parser("crosscheck", help="full internal consistency suite")
    sub.add_argument("--max-N", dest="max_n", type=int, default=12)
    sub.add_argument("--brute-cap", type=int, default=DEFAULT_BRUTE_CAP)
    _add_output_options(sub, "csv")
    sub.set_defaults(handler=_cmd_crosscheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValidationError, CapacityError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
