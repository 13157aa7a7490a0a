"""Monomial combinatorics of the standard graded polynomial ring k[x_1..x_n].

Dimensions of graded pieces, canonical monomial bases, the (r, s)
parameters of the critical generator count, and the conjectured truncated
Hilbert series for ideals of generic forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

# A monomial is its exponent vector; entries sum to the ambient degree.
Monomial = tuple[int, ...]


def dim_graded(n: int, e: int) -> int:
    """Dimension of the degree-e piece of k[x_1..x_n]: C(n+e-1, e)."""
    if n < 1:
        raise ValueError("variable count must be >= 1")
    if e < 0:
        raise ValueError("degree must be >= 0")
    return math.comb(n + e - 1, e)


def _exponents(n: int, e: int) -> Iterator[Monomial]:
    # Graded-lex descending with x1 > x2 > ... > xn: higher leading
    # exponents first, recursively.
    if n == 1:
        yield (e,)
        return
    for lead in range(e, -1, -1):
        for rest in _exponents(n - 1, e - lead):
            yield (lead,) + rest


@dataclass(frozen=True)
class DegreeBasis:
    """All degree-e monomials in n variables, graded-lex ordered."""

    n: int
    degree: int
    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def index_of(self, mono: Monomial) -> int:
        return _basis_index(self.n, self.degree)[mono]


@lru_cache(maxsize=None)
def monomial_basis(n: int, e: int) -> DegreeBasis:
    """Canonical basis of the degree-e piece, deterministic across runs."""
    if n < 1:
        raise ValueError("variable count must be >= 1")
    if e < 0:
        raise ValueError("degree must be >= 0")
    return DegreeBasis(n, e, tuple(_exponents(n, e)))


@lru_cache(maxsize=None)
def _basis_index(n: int, e: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(n, e).monomials)}


@dataclass(frozen=True)
class RingParams:
    """The combinatorial frame of a (n, d, d') verification instance.

    r is minimal with r * dim R_{d'} >= dim R_{d+d'} and
    s = dim R_{d+d'} - (r-1) * dim R_{d'}, so 1 <= s <= dim R_{d'};
    r - 1 and s are essentially quotient and remainder of the division.
    """

    n: int
    d: int
    dprime: int
    dim_ddprime: int
    dim_dprime: int
    r: int
    s: int


def rs_params(n: int, d: int, dprime: int) -> RingParams:
    """Critical generator count r and remainder s for (n, d, d')."""
    if d < 1 or dprime < 1:
        raise ValueError("degrees must be >= 1")
    dim_top = dim_graded(n, d + dprime)
    dim_dp = dim_graded(n, dprime)
    r = -(-dim_top // dim_dp)
    s = dim_top - (r - 1) * dim_dp
    return RingParams(n, d, dprime, dim_top, dim_dp, r, s)


def conjectured_series(n: int, degrees: Sequence[int], max_deg: int) -> list[int]:
    """Coefficients 0..max_deg of the truncated series for generic forms.

    Expands prod(1 - t^{d_i}) / (1 - t)^n by integer polynomial
    multiplication followed by n prefix-sum passes, then zeroes every
    coefficient from the first non-positive one onward.
    """
    if n < 1:
        raise ValueError("variable count must be >= 1")
    if max_deg < 0:
        raise ValueError("max_deg must be >= 0")
    coeffs = [0] * (max_deg + 1)
    coeffs[0] = 1
    for d in degrees:
        if d < 1:
            raise ValueError("generator degrees must be >= 1")
        for i in range(max_deg, d - 1, -1):
            coeffs[i] -= coeffs[i - d]
    for _ in range(n):
        for i in range(1, max_deg + 1):
            coeffs[i] += coeffs[i - 1]
    out: list[int] = []
    for c in coeffs:
        if c <= 0:
            break
        out.append(c)
    out.extend([0] * (max_deg + 1 - len(out)))
    return out
