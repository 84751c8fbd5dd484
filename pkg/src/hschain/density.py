"""Exact level densities for large chains.

Two independent routes to the same density:

* :func:`density_dp` runs a transfer-style dynamic program over the bonds,
  carrying one coefficient vector per spin value.  Cost is
  O(N * m**2 * support), so it reaches chain sizes far beyond enumeration.
* :func:`composition_density` expands the closed partition-function sum
  over the 2**(N-1) ordered compositions of N.  It never touches motifs or
  pairing rules, which makes it a genuinely independent cross-check of the
  dynamic program (and of brute-force enumeration).

Degeneracies are exact integers everywhere.  The DP packs its coefficient
vectors into single big integers, one fixed-width slot per energy cell, so
big-number adds and shifts do the per-bond work in C; silent overflow is
impossible because slots are sized from m**N.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .chains import ChainSpec, dispersion
from .errors import CapacityError, ValidationError
from .motifs import DeltaRule, delta, rule_for
from .table import DensityTable

DEFAULT_MEMORY_BUDGET = 1 << 30
DEFAULT_COMPOSITION_CAP = 24


def density_dp(
    spec: ChainSpec,
    rule: DeltaRule | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> DensityTable:
    """Exact level density via a per-bond dynamic program.

    The state after bond j is, for each spin value v, the polynomial whose
    E-th coefficient counts the prefixes (n_1..n_{j+1}) ending in v with
    accumulated scaled energy E.  Each bond update shifts and adds these
    polynomials according to the pairing rule.

    Polynomials are stored as one big integer per spin value with a
    fixed-width slot per energy cell (wide enough for m**N), so a shift by
    F(j) energy units is a single left shift.

    Raises
    ------
    CapacityError
        If the dense energy grid would exceed `memory_budget` bytes.
    """
    if rule is None:
        rule = rule_for(spec)
    m = spec.m
    disp = dispersion(spec)
    weights = disp.scaled
    top = disp.scaled_total
    slot = max(8, (spec.n_states.bit_length() + 7) // 8 + 1)
    predicted = (top + 1) * slot * m
    if predicted > memory_budget:
        raise CapacityError(
            f"density grid needs {top + 1} cells x {slot} bytes x {m} spin values "
            f"= {predicted} bytes, over the budget of {memory_budget}"
        )
    slot_bits = 8 * slot
    # Which sources feed each destination with a shift, fixed for all bonds.
    shifted_sources = [
        [src for src in range(1, m + 1) if delta(rule, src, dest, m)]
        for dest in range(1, m + 1)
    ]
    plain_sources = [
        [src for src in range(1, m + 1) if not delta(rule, src, dest, m)]
        for dest in range(1, m + 1)
    ]
    state = [1] * m  # coefficient 1 at energy zero for every starting value
    for w in weights:
        shift = w * slot_bits
        new = []
        for dest in range(m):
            plain = sum(state[src - 1] for src in plain_sources[dest])
            moved = sum(state[src - 1] for src in shifted_sources[dest])
            new.append(plain + (moved << shift))
        state = new
    packed = sum(state)
    buf = packed.to_bytes((top + 1) * slot, "little")
    blank = bytes(slot)
    entries = {}
    for e in range(top + 1):
        chunk = buf[e * slot : (e + 1) * slot]
        if chunk != blank:
            entries[e] = int.from_bytes(chunk, "little")
    return DensityTable(entries=entries, energy_scale=disp.energy_scale, total=spec.n_states)


def spin_degeneracy(k: int, m: int, epsilon: int) -> int:
    """Number of spin states a block of k aligned sites can carry.

    binom(m+k-1, k) for epsilon=+1 (symmetric), binom(m, k) for epsilon=-1
    (antisymmetric; vanishes for k > m).
    """
    if epsilon == 1:
        return comb(m + k - 1, k)
    return comb(m, k)


def _coefficient_bound(n: int, dfac: list, longest_part: int) -> int:
    """Rigorous bound on any intermediate coefficient of the composition
    expansion, via l1 norms: shifts preserve the l1 norm, each (1 - q**F)
    factor at most doubles it, each cut multiplies it by d(part)."""
    bound = [0] * n
    bound[0] = 1
    total = 0
    for p in range(1, n + 1):
        acc = 0
        for prev in range(max(0, p - longest_part), p):
            acc += bound[prev] * dfac[p - prev] << (p - prev - 1)
        if p < n:
            bound[p] = acc
        else:
            total = acc
    return max(total, max(bound))


def composition_density(
    spec: ChainSpec,
    epsilon: int | None = None,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> DensityTable:
    """Exact level density from the partition-function sum over compositions.

    Every ordered composition (k_1, ..., k_r) of N contributes

        prod_i d(k_i) * q**(sum of F at its cut points)
                      * prod over non-cut bonds of (1 - q**F(bond))

    with d the spin degeneracy factor.  The 2**(N-1) terms are expanded by
    walking the cut positions left to right; composition prefixes whose
    last cut sits at the same bond share their entire remaining expansion,
    so they are merged into one polynomial per cut position.  The term
    multiset is exactly the composition sum (the spec of which ordered
    composition contributed what never changes, only the association of
    the additions), and parts with vanishing degeneracy factor
    (epsilon=-1, parts longer than m) are skipped outright.

    Raises
    ------
    CapacityError
        If N exceeds `cap`.
    """
    if epsilon is None:
        epsilon = spec.epsilon
    if epsilon not in (1, -1):
        raise ValidationError(f"epsilon must be +1 or -1, got {epsilon!r}")
    n, m = spec.n_spins, spec.m
    if n > cap:
        raise CapacityError(
            f"composition sum over 2**{n - 1} terms exceeds the cap N <= {cap}"
        )
    disp = dispersion(spec)
    weights = disp.scaled
    top = disp.scaled_total
    dfac = [0] + [spin_degeneracy(k, m, epsilon) for k in range(1, n + 1)]
    longest_part = max((k for k in range(1, n + 1) if dfac[k]), default=0)
    if longest_part == 0:
        raise ValidationError("all spin degeneracy factors vanish")
    # int64 unless a rigorous worst-case coefficient bound says otherwise.
    dtype = np.int64 if _coefficient_bound(n, dfac, longest_part) < 2 ** 62 else object
    size = top + 1
    merged = [None] * n  # merged[p]: expansion of all prefixes with last cut at bond p
    start = np.zeros(size, dtype=dtype)
    start[0] = 1
    merged[0] = start
    acc = np.zeros(size, dtype=dtype)
    for last_cut in range(n):
        poly = merged[last_cut]
        if poly is None:
            continue
        running = poly  # gains one (1 - q**F(bond)) factor per passed bond
        for p in range(last_cut + 1, n + 1):
            d = dfac[p - last_cut]
            if p == n:
                if d:
                    acc += d * running
                break
            w = weights[p - 1]
            if d:
                if merged[p] is None:
                    merged[p] = np.zeros(size, dtype=dtype)
                merged[p][w:] += d * running[: size - w]
            if p - last_cut >= longest_part:
                break  # longer parts all have d = 0
            extended = running.copy()
            extended[w:] -= running[: size - w]
            running = extended
    entries = {int(e): int(c) for e, c in enumerate(acc) if c}
    return DensityTable(entries=entries, energy_scale=disp.energy_scale, total=spec.n_states)


def partition_function_at(density: DensityTable, q: complex) -> complex:
    """Evaluate Z(q) = sum of degeneracy * q**energy in floating point.

    Horner evaluation over the dense scaled-integer grid; for tables with
    energy_scale D > 1 the principal branch of q**(1/D) is used.
    Degeneracies above 2**53 lose precision in the float conversion.
    """
    q = complex(q)
    if density.energy_scale != 1 and q != 0:
        w = q ** (1.0 / density.energy_scale)
    else:
        w = q
    top = max(density.entries) if density.entries else 0
    result = 0j
    for e in range(top, -1, -1):
        result = result * w + density.degeneracy(e)
    return result
