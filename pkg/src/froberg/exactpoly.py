"""Exact univariate polynomial arithmetic over Q with sign certificates.

Everything here is exact: coefficients are `fractions.Fraction`, Sturm
counts are integer-exact, and interval enclosures have rational endpoints.
No floating point enters any decision in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Union

from .errors import (
    DomainError,
    NegativeInput,
    PrecisionExhausted,
    ZeroPolynomial,
)

Rational = Fraction

_RationalLike = Union[int, Fraction]

# Hard cap on interval refinement; callers escalate from 2^-64 by doubling
# the exponent and must never cross this.
WIDTH_CAP = Fraction(1, 2**512)


class RatPoly:
    """Dense univariate polynomial; coeffs[i] is the coefficient of x^i.

    The coefficient list never has a trailing zero; the zero polynomial
    has an empty list.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[_RationalLike] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({list(self.coeffs)!r})"

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other: Union["RatPoly", _RationalLike]) -> "RatPoly":
        if not isinstance(other, RatPoly):
            k = Fraction(other)
            return RatPoly(c * k for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dv = other.coeffs
        dq = len(dv) - 1
        lead = dv[-1]
        if len(rem) < len(dv):
            return RatPoly(), RatPoly(rem)
        quo = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = c / lead
            quo[i - dq] = q
            for j in range(dq + 1):
                rem[i - dq + j] -= q * dv[j]
        return RatPoly(quo), RatPoly(rem)

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[1]

    def eval(self, x: _RationalLike) -> Fraction:
        """Horner evaluation; exact."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)


@dataclass(frozen=True)
class RatInterval:
    """Closed interval with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def shift(self, k: _RationalLike) -> "RatInterval":
        return RatInterval(self.lo + k, self.hi + k)

    def __contains__(self, v: _RationalLike) -> bool:
        return self.lo <= v <= self.hi


def point(v: _RationalLike) -> RatInterval:
    return RatInterval(Fraction(v), Fraction(v))


def binom_shift_poly(a: int, m: int) -> RatPoly:
    """C(x + a, m) as an exact polynomial in x, degree m.

    Expands (x+a)(x+a-1)...(x+a-m+1) with integer coefficients before
    the single division by m!.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    coeffs = [1]
    for i in range(m):
        c = a - i
        nxt = [0] * (len(coeffs) + 1)
        for j, v in enumerate(coeffs):
            nxt[j] += v * c
            nxt[j + 1] += v
        coeffs = nxt
    fact = math.factorial(m)
    return RatPoly(Fraction(v, fact) for v in coeffs)


def sign_changes(coeffs: Iterable[_RationalLike]) -> int:
    """Alternations in the sign sequence after deleting zeros."""
    count = 0
    prev = 0
    for c in coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd by the Euclidean algorithm (constant 1 when coprime)."""
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a * (1 / a.coeffs[-1])


def squarefree_part(p: RatPoly) -> RatPoly:
    """p divided by gcd(p, p'); same distinct roots, all simple."""
    if p.is_zero:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    q, r = divmod(p, g)
    assert r.is_zero
    return q


@dataclass(frozen=True)
class SturmChain:
    """p, p', then successive negated remainders (gcd-terminated)."""

    polys: tuple[RatPoly, ...]

    def variations(self, x: _RationalLike) -> int:
        return sign_changes(q.eval(x) for q in self.polys)


def sturm_chain(p: RatPoly) -> SturmChain:
    if p.is_zero:
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    chain = [p]
    dp = p.derivative()
    if not dp.is_zero:
        chain.append(dp)
        while chain[-1].degree >= 1:
            rem = chain[-2] % chain[-1]
            if rem.is_zero:
                break
            # positive rescaling keeps signs and tames coefficient growth
            rem = rem * (1 / abs(rem.coeffs[-1]))
            chain.append(-rem)
    return SturmChain(tuple(chain))


def count_real_roots(p: RatPoly, iv: RatInterval) -> int:
    """Distinct real roots of p in the half-open interval (lo, hi]."""
    if p.is_zero:
        raise ZeroPolynomial("root count of the zero polynomial")
    if p.degree == 0 or iv.lo == iv.hi:
        return 0
    chain = sturm_chain(squarefree_part(p))
    return chain.variations(iv.lo) - chain.variations(iv.hi)


def isolate_roots(p: RatPoly, iv: RatInterval) -> list[RatInterval]:
    """Disjoint half-open intervals (a, b], each holding one root of p.

    Covers exactly the roots in (iv.lo, iv.hi]; ordered left to right.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    sf = squarefree_part(p)
    if sf.degree == 0:
        return []
    chain = sturm_chain(sf)
    out: list[RatInterval] = []

    def rec(a: Fraction, b: Fraction, cnt: int) -> None:
        if cnt == 0:
            return
        if cnt == 1:
            out.append(RatInterval(a, b))
            return
        mid = (a + b) / 2
        left = chain.variations(a) - chain.variations(mid)
        rec(a, mid, left)
        rec(mid, b, cnt - left)

    total = chain.variations(iv.lo) - chain.variations(iv.hi)
    rec(iv.lo, iv.hi, total)
    return out


class CertifyOutcome(NamedTuple):
    nonneg: bool
    witness: Optional[Fraction]


def certify_nonneg_on_interval(p: RatPoly, iv: RatInterval) -> CertifyOutcome:
    """Decide p(x) >= 0 for all x in [lo, hi], exactly.

    Checks both endpoints, then determines the sign of p at every
    critical point by shrinking its isolating interval until either the
    critical point is a common root of p and p' (value exactly 0) or p
    has constant nonzero sign on the enclosure.  When the answer is
    False the witness is a rational point with p(witness) < 0.
    """
    if p.is_zero:
        return CertifyOutcome(True, None)
    lo, hi = iv.lo, iv.hi
    if p.eval(lo) < 0:
        return CertifyOutcome(False, lo)
    if p.eval(hi) < 0:
        return CertifyOutcome(False, hi)
    if lo == hi or p.degree <= 1:
        # linear/constant: minimum sits at an endpoint
        return CertifyOutcome(True, None)

    dp = p.derivative()
    common = poly_gcd(p, dp)
    psf = squarefree_part(p)
    dpsf = squarefree_part(dp)
    dchain = sturm_chain(dpsf)

    for iso in isolate_roots(dp, iv):
        a, b = iso.lo, iso.hi
        while True:
            if common.degree >= 1 and count_real_roots(common, RatInterval(a, b)) >= 1:
                # the critical point is a root of p itself: value 0
                break
            if p.eval(a) != 0 and count_real_roots(psf, RatInterval(a, b)) == 0:
                # no root of p in [a, b]: sign there is constant
                if p.eval(a) < 0:
                    return CertifyOutcome(False, a)
                break
            mid = (a + b) / 2
            if dchain.variations(a) - dchain.variations(mid) >= 1:
                b = mid
            else:
                a = mid
    return CertifyOutcome(True, None)


def solve_binom_eq(
    t: _RationalLike, j: int, width: _RationalLike = Fraction(1, 2**64)
) -> RatInterval:
    """Bracket the unique x >= j-1 with C(x, j) = t by monotone bisection.

    C(., j) is 0 at x = j-1 and strictly increasing beyond, so t = 0
    forces the degenerate answer [j-1, j-1].  Integer hits collapse to a
    point; otherwise the returned width is at most `width`.
    """
    t = Fraction(t)
    width = Fraction(width)
    if t < 0:
        raise NegativeInput("C(x, j) = t has no solution with t < 0")
    if j < 1:
        raise ValueError("j must be >= 1")
    if width < WIDTH_CAP:
        raise PrecisionExhausted(f"requested width below the 2^-512 cap")
    if t == 0:
        return point(j - 1)
    poly = binom_shift_poly(0, j)
    k_hi = j
    while poly.eval(k_hi) < t:
        k_hi *= 2
    k_lo = j - 1
    # largest integer k with C(k, j) <= t
    while k_hi - k_lo > 1:
        mid = (k_lo + k_hi) // 2
        if poly.eval(mid) <= t:
            k_lo = mid
        else:
            k_hi = mid
    v = poly.eval(k_lo)
    if v == t:
        return point(k_lo)
    if poly.eval(k_hi) == t:
        return point(k_hi)
    a, b = Fraction(k_lo), Fraction(k_hi)
    while b - a > width:
        mid = (a + b) / 2
        vm = poly.eval(mid)
        if vm == t:
            return point(mid)
        if vm < t:
            a = mid
        else:
            b = mid
    return RatInterval(a, b)


def eval_generalized_binom(x: RatInterval, m: int) -> RatInterval:
    """Exact enclosure of C(x, m) on an interval in the monotone regime.

    Requires x.lo >= m-1, where C(., m) is nondecreasing, so the image
    of [lo, hi] is [C(lo, m), C(hi, m)] with no rounding at all.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return point(1)
    if x.lo < m - 1:
        raise DomainError(f"need x >= {m - 1} for monotone C(x, {m})")
    poly = binom_shift_poly(0, m)
    return RatInterval(poly.eval(x.lo), poly.eval(x.hi))
