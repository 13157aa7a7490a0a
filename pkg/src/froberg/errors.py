"""Exception types shared across the package."""


class FrobergError(Exception):
    """Base class for all package-specific errors."""


class InvalidDegrees(FrobergError, ValueError):
    """Raised when a (d, d') pair violates d > d' >= 1."""


class IndexOutOfRange(FrobergError, IndexError):
    """Coefficient index outside 0..deg."""


class ZeroPolynomial(FrobergError, ValueError):
    """Operation undefined for the zero polynomial."""


class NegativeInput(FrobergError, ValueError):
    """A quantity that must be non-negative was negative."""


class DomainError(FrobergError, ValueError):
    """Argument outside the monotone domain of a generalized binomial."""


class PrecisionExhausted(FrobergError, ArithmeticError):
    """Interval refinement hit the hard width cap without a decision."""


class HypothesisViolation(FrobergError, ValueError):
    """Dimension formulas applied outside their hypothesis r > dim R_{d'}."""


class NotPrime(FrobergError, ValueError):
    """Composite modulus rejected: rank over Z/m needs m prime."""


class SelectionMismatch(FrobergError, ValueError):
    """Number of forms inconsistent with the requested row selection."""


class NotDivisible(FrobergError, ValueError):
    """Subring quotient dimension is not divisible by dim R'_{d'}."""


class UnknownRow(FrobergError, KeyError):
    """Requested tabulated case does not exist."""


# The degree restriction every verification entry point enforces.  Products
# of the generators acquire Koszul relations once d' >= d, so independence
# of the products cannot be certified this way.
DPRIME_RESTRICTION = (
    "requires d > d' >= 1: the product-matrix method cannot be used in the "
    "case when d' >= d (Koszul relations make the products dependent)"
)
