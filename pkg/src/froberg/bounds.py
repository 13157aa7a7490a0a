"""Macaulay-type growth bounds and the dimension-count audit.

The growth bound is stated with real-argument binomials: if
dim R_j = C(x, j) for the unique real x >= j-1, the next graded piece is
at most C(x+1, j+1).  Iterating it bounds the Hilbert function of any
standard graded algebra several degrees up, which is what the per-t
audit rows consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisViolation, InvalidDegrees, DPRIME_RESTRICTION
from .exactpoly import RatInterval, eval_generalized_binom, solve_binom_eq
from .ring import dim_graded, rs_params, RingParams

# Escalation ladder for interval refinement: start at 2^-64, square the
# width (double the exponent) on each retry, give up conservatively at
# the 2^-512 cap.
_WIDTH_EXPONENTS = (64, 128, 256, 512)


def macaulay_next_upper(
    dim_j: int, j: int, width: Fraction = Fraction(1, 2**64)
) -> RatInterval:
    """Enclosure of the one-step growth bound C(x+1, j+1), C(x, j) = dim_j."""
    if dim_j < 0:
        raise ValueError("dimension must be >= 0")
    x = solve_binom_eq(dim_j, j, width)
    return eval_generalized_binom(x.shift(1), j + 1)


def macaulay_iterated_upper(
    t: int, dprime: int, steps: int, width: Fraction = Fraction(1, 2**64)
) -> RatInterval:
    """Enclosure of C(x + steps, d' + steps) where C(x, d') = t."""
    if t < 0:
        raise ValueError("dimension must be >= 0")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    x = solve_binom_eq(t, dprime, width)
    return eval_generalized_binom(x.shift(steps), dprime + steps)


@dataclass(frozen=True)
class PartitionDims:
    """Dimensions of the rank strata of the constrained matrix space."""

    n: int
    d: int
    dprime: int
    t: int
    h_max: int
    dim_Yt: int
    dim_Xth_best: int
    dim_Pt: int


def _partition_formulas(r: int, s: int, dim_dp: int, t: int, h: int):
    if not (r > dim_dp or (r == dim_dp and s == dim_dp)):
        raise HypothesisViolation(
            f"rank-stratum formulas need r > dim R_d' (or r = s = dim R_d'); "
            f"got r={r}, s={s}, dim={dim_dp}"
        )
    if not 0 <= t <= dim_dp - 1:
        raise ValueError(f"t must lie in 0..{dim_dp - 1}")
    h_max = min(dim_dp - t - 1, dim_dp - s)
    if not 0 <= h <= h_max:
        raise ValueError(f"h must lie in 0..{h_max}")
    dim_yt = (r + t - 1) * (dim_dp - t) - 1
    # last-row-nonzero stratum, last dim-s columns of rank h; maximal at h_max
    x_best = (
        (r + s + t - dim_dp) * (dim_dp - t)
        - 1
        + (2 * dim_dp - s - t - 1) * h_max
        - h_max * h_max
    )
    dim_pt = max(dim_yt, x_best)
    return h_max, dim_yt, x_best, dim_pt


def dim_partition(
    n: int, d: int, dprime: int, r: int, s: int, t: int, h: int
) -> PartitionDims:
    """Exact stratum dimensions for the given parameters.

    The caller normally passes the r, s of `rs_params(n, d, dprime)`;
    they are taken as given so the formulas can also be exercised on
    synthetic configurations.
    """
    dim_dp = dim_graded(n, dprime)
    h_max, dim_yt, x_best, dim_pt = _partition_formulas(r, s, dim_dp, t, h)
    return PartitionDims(n, d, dprime, t, h_max, dim_yt, x_best, dim_pt)


@dataclass(frozen=True)
class AuditRow:
    """One value of t in the dimension-count chain.

    satisfied means the entire enclosure of
    t*(dim R_d' - t - r) + max(t - s, 0) + C(x + d, d + d')
    is <= 0, with C(x, d') = t defining x (x = d'-1 when t = 0).
    """

    t: int
    x: RatInterval
    macaulay_term: RatInterval
    lhs: RatInterval
    satisfied: bool


@dataclass(frozen=True)
class AuditResult:
    params: RingParams
    rows: tuple[AuditRow, ...]
    premise_ok: bool
    concludes: bool


def _audit_row(params: RingParams, t: int) -> AuditRow:
    d, dprime = params.d, params.dprime
    const = t * (params.dim_dprime - t - params.r) + max(t - params.s, 0)
    x = mac = lhs = None
    satisfied = False
    for exp in _WIDTH_EXPONENTS:
        x = solve_binom_eq(t, dprime, Fraction(1, 2**exp))
        mac = eval_generalized_binom(x.shift(d), d + dprime)
        lhs = RatInterval(const + mac.lo, const + mac.hi)
        if lhs.hi <= 0:
            satisfied = True
            break
        if lhs.lo > 0:
            satisfied = False
            break
    # falling through all exponents leaves the row unsatisfied: soundness
    # over completeness when the enclosure cannot be pushed below zero
    return AuditRow(t, x, mac, lhs, satisfied)


def audit_chain(n: int, d: int, dprime: int) -> AuditResult:
    """Audit the full chain proving the bad locus has small dimension.

    Every t in 0..dim R_{d'}-1 contributes one inequality; all of them
    together with the premise r > dim R_{d'} (or r = s = dim R_{d'},
    where the unconstrained matrix-space count applies) certify the
    conjectured Hilbert function in degree d+d' for every generator
    count.
    """
    if not (d > dprime >= 1):
        raise InvalidDegrees(f"(d={d}, d'={dprime}) {DPRIME_RESTRICTION}")
    params = rs_params(n, d, dprime)
    premise = params.r > params.dim_dprime or (
        params.r == params.dim_dprime == params.s
    )
    rows = tuple(_audit_row(params, t) for t in range(params.dim_dprime))
    concludes = premise and all(row.satisfied for row in rows)
    return AuditResult(params, rows, premise, concludes)
