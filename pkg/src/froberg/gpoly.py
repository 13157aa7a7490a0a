"""The univariate polynomial controlling the dimension-count argument.

For d > d' >= 1 the polynomial is

    C(x + d + d', d) / C(d + d', d)  -  C(x + d', d'),

degree d with constant term 0.  Its coefficient of x^j equals the
difference of elementary symmetric functions

    e_j(1/(d'+1), ..., 1/(d+d'))  -  e_j(1/1, ..., 1/d'),

which gives a second, independent computation route and shows each
coefficient is increasing in d and decreasing in d'.  Only coefficients
j <= d' can be negative; everything above is a sum of positive products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from .errors import IndexOutOfRange, InvalidDegrees, DPRIME_RESTRICTION
from .exactpoly import (
    RatInterval,
    RatPoly,
    binom_shift_poly,
    certify_nonneg_on_interval,
    sign_changes,
)
from .ring import dim_graded, rs_params


def _require_degrees(d: int, dprime: int) -> None:
    if not (d > dprime >= 1):
        raise InvalidDegrees(f"(d={d}, d'={dprime}) {DPRIME_RESTRICTION}")


@dataclass(frozen=True)
class GPoly:
    """The degree-d polynomial attached to a (d, d') pair."""

    d: int
    dprime: int
    poly: RatPoly


def build_g(d: int, dprime: int) -> GPoly:
    """Exact coefficient vector via falling-factorial expansion."""
    _require_degrees(d, dprime)
    top = binom_shift_poly(d + dprime, d) * Fraction(1, math.comb(d + dprime, d))
    g = top - binom_shift_poly(dprime, dprime)
    assert g.degree == d and g[0] == 0 and g.coeffs[-1] > 0
    return GPoly(d, dprime, g)


def _esym_scaled(values: Iterable[int], jmax: int) -> tuple[list[int], int]:
    """Scaled elementary symmetric functions of reciprocals.

    Returns (N, P) with e_j(1/v for v in values) = N[j] / P and
    P = prod(values); integer-only recurrence, no gcd reductions.
    """
    n = [0] * (jmax + 1)
    n[0] = 1
    count = 0
    for m in values:
        count += 1
        for j in range(min(jmax, count), 0, -1):
            n[j] = n[j] * m + n[j - 1]
        n[0] *= m
    return n, n[0]


def _bside(dprime: int) -> tuple[list[int], int]:
    # e_j(1, 1/2, ..., 1/d') = M[j] / Q with Q = d'!
    return _esym_scaled(range(1, dprime + 1), dprime)


def _cmp_sign(a: int, b: int) -> int:
    return (a > b) - (a < b)


def coeff_via_symmetric(d: int, dprime: int, j: int) -> Fraction:
    """Coefficient of x^j recomputed from the symmetric-function route."""
    _require_degrees(d, dprime)
    if not 0 <= j <= d:
        raise IndexOutOfRange(f"coefficient index {j} outside 0..{d}")
    na, pa = _esym_scaled(range(dprime + 1, d + dprime + 1), j)
    mb, qb = _esym_scaled(range(1, dprime + 1), min(j, dprime))
    b = Fraction(mb[j], qb) if j <= dprime else Fraction(0)
    return Fraction(na[j], pa) - b


class SignProfile(NamedTuple):
    changes: int
    signs: tuple[int, ...]  # signs of coefficients x^1 .. x^d, in {-1, 0, 1}


def _count_changes(signs: Iterable[int]) -> int:
    prev = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def sign_change_profile(d: int, dprime: int) -> SignProfile:
    """Signs of coefficients 1..d and their Descartes change count."""
    _require_degrees(d, dprime)
    na, pa = _esym_scaled(range(dprime + 1, d + dprime + 1), d)
    mb, qb = _bside(dprime)
    signs = []
    for j in range(1, d + 1):
        if j <= dprime:
            signs.append(_cmp_sign(na[j] * qb, mb[j] * pa))
        else:
            signs.append(1)  # pure positive symmetric sum above d'
    return SignProfile(_count_changes(signs), tuple(signs))


@dataclass(frozen=True)
class BoundCertificate:
    """Outcome of certifying max-at-right-endpoint on [0, n-1]."""

    d: int
    dprime: int
    n: int
    holds: bool
    method: str  # one-sign-change | sturm-fallback | hypothesis-fails
    g_at_nminus1: Fraction
    sign_changes: int
    propagates_in_d: bool


def certify_bound(d: int, dprime: int, n: int) -> BoundCertificate:
    """Certify g(x) <= g(n-1) on [0, n-1] together with g(n-1) >= 0.

    The cheap route applies when the coefficients show at most one sign
    change: the single stationary point is then a minimum, so the max
    over any [0, b] sits at an endpoint and g(0) = 0 <= g(n-1) settles
    it.  Otherwise an exact Sturm certificate of g(n-1) - g(x) >= 0 is
    attempted.  A certified instance propagates to d+1 because each
    coefficient is increasing in d.
    """
    _require_degrees(d, dprime)
    if n < 1:
        raise ValueError("n must be >= 1")
    g = build_g(d, dprime)
    gn = g.poly.eval(n - 1)
    profile = sign_change_profile(d, dprime)
    if gn < 0:
        return BoundCertificate(
            d, dprime, n, False, "hypothesis-fails", gn, profile.changes, False
        )
    if profile.changes <= 1:
        return BoundCertificate(
            d, dprime, n, True, "one-sign-change", gn, profile.changes, True
        )
    diff = RatPoly([gn]) - g.poly
    res = certify_nonneg_on_interval(diff, RatInterval(Fraction(0), Fraction(n - 1)))
    return BoundCertificate(
        d, dprime, n, res.nonneg, "sturm-fallback", gn, profile.changes, res.nonneg
    )


def check_d_minus_1_signs(d: int) -> bool:
    """True iff x^d has a positive coefficient and x^1..x^{d-1} negative ones."""
    if d < 2:
        raise ValueError("need d >= 2")
    profile = sign_change_profile(d, d - 1)
    return profile.signs[-1] > 0 and all(s < 0 for s in profile.signs[:-1])


class EquivTriple(NamedTuple):
    g_nonneg: bool
    dim_sq: bool
    r_cond: bool


def equiv_triple(n: int, d: int, dprime: int) -> EquivTriple:
    """The three equivalent formulations of the critical-count condition."""
    _require_degrees(d, dprime)
    if n < 1:
        raise ValueError("n must be >= 1")
    g = build_g(d, dprime)
    g_nonneg = g.poly.eval(n - 1) >= 0
    ddp = dim_graded(n, d + dprime)
    dp = dim_graded(n, dprime)
    dim_sq = ddp >= dp * dp
    params = rs_params(n, d, dprime)
    if params.s == dp:
        r_cond = params.r >= dp
    else:
        r_cond = params.r > dp
    return EquivTriple(g_nonneg, dim_sq, r_cond)


# ---------------------------------------------------------------------------
# d'-scan: sign-change counts for every d until all coefficients turn >= 0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanResult:
    dprime: int
    mode: str
    max_d_checked: int
    all_at_most_one: bool
    failures: tuple[int, ...]
    terminated: bool  # reached the all-nonnegative d, after which no
    # further d can introduce a sign change


def scan_dprime(dprime: int, mode: str = "exact", d_max: Optional[int] = None) -> ScanResult:
    """Check the one-sign-change property for d = d'+1, d'+2, ...

    Stops at the first d whose coefficients are all >= 0: coefficients
    only grow with d, so no later d can reintroduce a negative one.
    With `d_max` the scan runs exactly through d_max instead (useful for
    range checks and for capping exploratory runs).

    Modes: "exact" keeps scaled integers throughout; "interval-fast"
    tracks outward-rounded float64 enclosures of the coefficient ratios
    and falls back to exact integers whenever a sign is not decided by
    the enclosure.
    """
    if dprime < 1:
        raise ValueError("dprime must be >= 1")
    if mode not in ("exact", "interval-fast"):
        raise ValueError(f"unknown scan mode {mode!r}")
    if d_max is not None and d_max <= dprime:
        raise ValueError("d_max must exceed dprime")
    if mode == "exact":
        return _scan_exact(dprime, d_max)
    return _scan_interval(dprime, d_max)


def _scan_exact(dprime: int, d_max: Optional[int]) -> ScanResult:
    mb, qb = _bside(dprime)
    na = [0] * (dprime + 1)
    na[0] = 1
    signs = [0] * (dprime + 1)
    # once a coefficient is strictly positive it stays positive (monotone
    # in d), so only the rest need rechecking
    undecided = list(range(1, dprime + 1))
    failures: list[int] = []
    d = 0
    terminated = False
    while True:
        d += 1
        m = dprime + d
        for j in range(min(dprime, d), 0, -1):
            na[j] = na[j] * m + na[j - 1]
        na[0] *= m
        if d <= dprime:
            continue
        pa = na[0]
        still = []
        any_negative = False
        for j in undecided:
            s = _cmp_sign(na[j] * qb, mb[j] * pa)
            signs[j] = s
            if s <= 0:
                still.append(j)
                if s < 0:
                    any_negative = True
        undecided = still
        if _count_changes(signs[1:] + [1]) > 1:
            failures.append(d)
        if not any_negative:
            terminated = True
            if d_max is None:
                break
        if d_max is not None and d >= d_max:
            break
    return ScanResult(dprime, "exact", d, not failures, tuple(failures), terminated)


def _float_down(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) <= x else math.nextafter(f, -math.inf)


def _float_up(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) >= x else math.nextafter(f, math.inf)


def _exact_coeff_sign(dprime: int, d: int, j: int, mb: list[int], qb: int) -> int:
    na, pa = _esym_scaled(range(dprime + 1, d + dprime + 1), j)
    return _cmp_sign(na[j] * qb, mb[j] * pa)


def _scan_interval(dprime: int, d_max: Optional[int]) -> ScanResult:
    import numpy as np

    mb, qb = _bside(dprime)
    # rho_j = e_j(front reciprocals) / e_j(1, ..., 1/d'); the coefficient
    # of x^j is >= 0 exactly when rho_j >= 1.  Update per new element m:
    # rho_j += (beta_j / m) * rho_{j-1} with beta_j = e_{j-1}/e_j of the
    # fixed denominator side.  All quantities are positive, so outward
    # rounding is a nextafter toward 0 / +inf after each operation.
    beta = [Fraction(mb[j - 1], mb[j]) for j in range(1, dprime + 1)]
    beta_lo = np.array([0.0] + [_float_down(b) for b in beta])
    beta_hi = np.array([0.0] + [_float_up(b) for b in beta])
    rho_lo = np.zeros(dprime + 1)
    rho_hi = np.zeros(dprime + 1)
    rho_lo[0] = rho_hi[0] = 1.0
    NEG = -math.inf
    POS = math.inf

    signs = [0] * (dprime + 1)
    undecided = list(range(1, dprime + 1))
    failures: list[int] = []
    d = 0
    terminated = False
    while True:
        d += 1
        m = dprime + d
        c_lo = np.nextafter(beta_lo / m, NEG)
        c_hi = np.nextafter(beta_hi / m, POS)
        t_lo = np.nextafter(c_lo[1:] * rho_lo[:-1], NEG)
        t_hi = np.nextafter(c_hi[1:] * rho_hi[:-1], POS)
        rho_lo[1:] = np.nextafter(rho_lo[1:] + t_lo, NEG)
        rho_hi[1:] = np.nextafter(rho_hi[1:] + t_hi, POS)
        np.maximum(rho_lo, 0.0, out=rho_lo)
        if d <= dprime:
            continue
        still = []
        any_negative = False
        for j in undecided:
            if rho_lo[j] > 1.0:
                s = 1
            elif rho_hi[j] < 1.0:
                s = -1
            else:
                # enclosure straddles 1: decide exactly
                s = _exact_coeff_sign(dprime, d, j, mb, qb)
            signs[j] = s
            if s <= 0:
                still.append(j)
                if s < 0:
                    any_negative = True
        undecided = still
        if _count_changes(signs[1:] + [1]) > 1:
            failures.append(d)
        if not any_negative:
            terminated = True
            if d_max is None:
                break
        if d_max is not None and d >= d_max:
            break
    return ScanResult(
        dprime, "interval-fast", d, not failures, tuple(failures), terminated
    )
