"""Chain families and their dispersion relations.

Three su(m) chains are supported, identified by the family tags

    "HS"  Haldane-Shastry         F(i) = i*(N-i)
    "PF"  Polychronakos-Frahm     F(i) = i
    "FI"  Frahm-Inozemtsev        F(i) = i*(alpha+i-1),  alpha > 0

where i = 1..N-1 runs over the bonds of the chain and F assigns each bond
its weight in the motif energy sum.  All downstream computations (exact
densities, moments, characteristic functions) consume a :class:`ChainSpec`
plus the :class:`DispersionTable` built here.

Dispersion values are kept as exact rationals.  The FI parameter alpha is
restricted to positive rationals so that, after scaling by its denominator,
every energy lives on an exact integer grid; floats are only produced at
the characteristic-function boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import ValidationError

FAMILIES = ("HS", "PF", "FI")

FERRO = 1
ANTIFERRO = -1


def _as_alpha(value) -> Fraction:
    """Coerce an FI parameter to an exact positive Fraction.

    Accepts int, Fraction, "p/q" strings and (num, den) pairs.  Floats are
    rejected: an inexact alpha would break exact degeneracy counting.
    """
    if isinstance(value, float):
        raise ValidationError(
            "alpha must be an exact rational (int, Fraction, 'p/q' or (p, q)); "
            f"got float {value!r}"
        )
    if isinstance(value, (tuple, list)):
        if len(value) != 2:
            raise ValidationError(f"alpha pair must have two entries, got {value!r}")
        value = Fraction(int(value[0]), int(value[1]))
    try:
        alpha = Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse alpha {value!r}") from exc
    if alpha <= 0:
        raise ValidationError(f"alpha must be positive, got {alpha}")
    return alpha


@dataclass(frozen=True)
class ChainSpec:
    """Configuration of one chain: family, size, internal dimension, sign.

    Parameters
    ----------
    family : str
        One of "HS", "PF", "FI".
    n_spins : int
        Number of spins N >= 2.
    m : int
        Internal su(m) dimension.  m >= 2 for a physical chain; m = 1 is
        admitted as the degenerate single-configuration case used by
        consistency checks.
    epsilon : int
        +1 for the ferromagnetic chain, -1 for the antiferromagnetic one.
    alpha : Fraction, optional
        FI site parameter, required iff family is "FI".
    """

    family: str
    n_spins: int
    m: int
    epsilon: int = FERRO
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if not isinstance(self.n_spins, int) or self.n_spins < 2:
            raise ValidationError(f"n_spins must be an integer >= 2, got {self.n_spins!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValidationError(f"m must be a positive integer, got {self.m!r}")
        if self.epsilon not in (FERRO, ANTIFERRO):
            raise ValidationError(f"epsilon must be +1 or -1, got {self.epsilon!r}")
        if self.family == "FI":
            if self.alpha is None:
                raise ValidationError("FI chains need alpha > 0")
            object.__setattr__(self, "alpha", _as_alpha(self.alpha))
        elif self.alpha is not None:
            raise ValidationError(f"alpha only applies to FI chains, not {self.family}")

    @property
    def n_states(self) -> int:
        """Total number of spin configurations, m**N."""
        return self.m ** self.n_spins

    def with_epsilon(self, epsilon: int) -> "ChainSpec":
        return ChainSpec(self.family, self.n_spins, self.m, epsilon, self.alpha)

    # -- JSON round trip; this is the CLI's canonical input format -------

    def to_json_dict(self) -> dict:
        out = {"family": self.family, "N": self.n_spins, "m": self.m, "epsilon": self.epsilon}
        if self.alpha is not None:
            out["alpha"] = [self.alpha.numerator, self.alpha.denominator]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "ChainSpec":
        try:
            family = str(data["family"]).upper()
            n_spins = int(data["N"])
            m = int(data["m"])
            epsilon = int(data.get("epsilon", FERRO))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed chain spec {data!r}") from exc
        alpha = data.get("alpha")
        if alpha is not None:
            alpha = _as_alpha(alpha)
        return cls(family, n_spins, m, epsilon, alpha)

    @classmethod
    def from_json(cls, text: str) -> "ChainSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON chain spec: {exc}") from exc
        return cls.from_json_dict(data)


@dataclass(frozen=True)
class DispersionTable:
    """Bond weights F(1..N-1) of a chain, as exact rationals.

    ``energy_scale`` is the common denominator D for which D*F(i) is an
    integer for every bond; ``scaled`` holds those integers.  HS and PF
    dispersions are integral (D = 1); the FI dispersion has
    D = denominator(alpha).
    """

    values: tuple
    energy_scale: int
    scaled: tuple

    def __len__(self):
        return len(self.values)

    @property
    def total(self) -> Fraction:
        """Sum of all bond weights, the width of the energy support."""
        return sum(self.values, Fraction(0))

    @property
    def scaled_total(self) -> int:
        return sum(self.scaled)

    def as_floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])


def dispersion(spec: ChainSpec) -> DispersionTable:
    """Dispersion relation of a chain.

    Returns the table of bond weights F(i) for i = 1..N-1:
    i*(N-i) for HS, i for PF and i*(alpha+i-1) for FI.
    """
    n = spec.n_spins
    if spec.family == "HS":
        values = tuple(Fraction(i * (n - i)) for i in range(1, n))
    elif spec.family == "PF":
        values = tuple(Fraction(i) for i in range(1, n))
    else:
        values = tuple(i * (spec.alpha + i - 1) for i in range(1, n))
    scale = 1
    for v in values:
        scale = scale * v.denominator // gcd(scale, v.denominator)
    scaled = tuple(int(v * scale) for v in values)
    if any(s <= 0 for s in scaled):
        raise ValidationError("dispersion values must be strictly positive")
    return DispersionTable(values=values, energy_scale=scale, scaled=scaled)


def normalized_dispersion(spec: ChainSpec, sigma: float) -> np.ndarray:
    """Bond weights divided by m*sigma, as floats.

    These are the phase increments per bond that enter the transfer
    matrices of the characteristic function; for all three families their
    size decays like N**-0.5 when sigma is the spectral width.
    """
    if not sigma > 0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    disp = dispersion(spec)
    return disp.as_floats() / (spec.m * float(sigma))


def exact_normalized_dispersion(spec: ChainSpec, sigma2: Fraction) -> list:
    """Squares of the normalized bond weights as exact rationals.

    Avoids the float square root: gamma_j**2 = F(j)**2 / (m**2 * sigma2).
    Used by the exact variance-identity check.
    """
    if not sigma2 > 0:
        raise ValidationError(f"sigma2 must be positive, got {sigma2}")
    disp = dispersion(spec)
    denom = spec.m * spec.m * sigma2
    return [v * v / denom for v in disp.values]
