"""Exact scalar arithmetic for bounded chains and triangular norms.

All values are `fractions.Fraction` instances and every operation in this
module is exact.  The ambient structure is a bounded totally ordered set
[lo, hi] equipped with max as addition and a t-norm as multiplication.
The default t-norm is min, which works over arbitrary bounds; the product
and Lukasiewicz norms are only defined on [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]

MIN_TAG = "min"
PRODUCT_TAG = "product"
LUKASIEWICZ_TAG = "lukasiewicz"

TNORM_TAGS = (MIN_TAG, PRODUCT_TAG, LUKASIEWICZ_TAG)


class DomainError(ValueError):
    """A value fell outside the bounds it is required to live in."""


class PreconditionError(ValueError):
    """An operation was called on inputs that violate its contract."""


class ResolutionExhausted(RuntimeError):
    """A witness search ran out of grid resolution without an answer.

    Raised only for t-norms where grid search is a heuristic (product,
    Lukasiewicz).  For the min t-norm the search grids are exact, so this
    error doubles as a soundness alarm there.
    """


def as_value(x: RationalLike) -> Fraction:
    """Coerce ``x`` to an exact Fraction.

    Accepts Fractions, ints and strings ("3/10" or "0.3").  Floats are
    rejected on purpose: binary floats silently misrepresent decimal
    inputs and this library promises exact arithmetic.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(
            "refusing to coerce float %r; pass a string like '0.3' or a Fraction"
            % (x,)
        )
    raise TypeError("cannot interpret %r as a rational value" % (x,))


def as_values(xs: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(as_value(x) for x in xs)


@dataclass(frozen=True)
class SemiringBounds:
    """Closed interval [lo, hi] the semiring lives on."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_value(self.lo))
        object.__setattr__(self, "hi", as_value(self.hi))
        if not self.lo < self.hi:
            raise DomainError("bounds require lo < hi, got [%s, %s]" % (self.lo, self.hi))

    def contains(self, v: Fraction) -> bool:
        return self.lo <= v <= self.hi

    def check(self, v: RationalLike) -> Fraction:
        value = as_value(v)
        if not self.contains(value):
            raise DomainError("value %s outside bounds [%s, %s]" % (value, self.lo, self.hi))
        return value

    def interior(self, v: Fraction) -> bool:
        """True when v is strictly between lo and hi."""
        return self.lo < v < self.hi

    def extended(self) -> "SemiringBounds":
        """Bounds widened by one full width on each side.

        For the unit interval this gives [-1, 2].  Used when a construction
        needs every input coordinate to be strictly inside the bounds.
        """
        width = self.hi - self.lo
        return SemiringBounds(self.lo - width, self.hi + width)

    def __str__(self) -> str:
        return "[%s, %s]" % (self.lo, self.hi)


UNIT = SemiringBounds(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class TNorm:
    """A t-norm on [0,1], or min on arbitrary bounds.

    The three supported norms:

    * min:          T(a, b) = min(a, b)
    * product:      T(a, b) = a * b
    * lukasiewicz:  T(a, b) = max(0, a + b - 1)
    """

    tag: str
    bounds: SemiringBounds = UNIT

    def __post_init__(self) -> None:
        if self.tag not in TNORM_TAGS:
            raise ValueError("unknown t-norm tag %r" % (self.tag,))
        if self.tag != MIN_TAG and self.bounds != UNIT:
            raise DomainError(
                "t-norm %r is only defined on [0, 1]; got bounds %s"
                % (self.tag, self.bounds)
            )

    @property
    def is_min(self) -> bool:
        return self.tag == MIN_TAG

    def with_bounds(self, bounds: SemiringBounds) -> "TNorm":
        return TNorm(self.tag, bounds)

    def apply(self, a: RationalLike, b: RationalLike) -> Fraction:
        return tnorm_apply(self, a, b)

    def residual(self, a: RationalLike, c: RationalLike) -> Fraction:
        return residual(self, a, c)


MIN = TNorm(MIN_TAG)
PRODUCT = TNorm(PRODUCT_TAG)
LUKASIEWICZ = TNorm(LUKASIEWICZ_TAG)


def tnorm_from_tag(tag: str, bounds: SemiringBounds = UNIT) -> TNorm:
    return TNorm(tag, bounds)


def tnorm_apply(t: TNorm, a: RationalLike, b: RationalLike) -> Fraction:
    """Evaluate T(a, b) exactly."""
    av = t.bounds.check(a)
    bv = t.bounds.check(b)
    if t.tag == MIN_TAG:
        return min(av, bv)
    if t.tag == PRODUCT_TAG:
        return av * bv
    # lukasiewicz
    return max(Fraction(0), av + bv - 1)


def residual(t: TNorm, a: RationalLike, c: RationalLike) -> Fraction:
    """The residual sup { lam : T(lam, a) <= c }.

    This is the largest multiplier that keeps a below c, the workhorse of
    exact hull membership.  Galois connection: T(lam, a) <= c if and only
    if lam <= residual(a, c).
    """
    av = t.bounds.check(a)
    cv = t.bounds.check(c)
    if t.tag == MIN_TAG:
        return t.bounds.hi if av <= cv else cv
    if t.tag == PRODUCT_TAG:
        if av <= cv:
            return Fraction(1)
        return cv / av
    # lukasiewicz: max(0, lam + a - 1) <= c  iff  lam <= 1 - a + c
    return min(Fraction(1), 1 - av + cv)


def value_grid(
    values: Iterable[Fraction],
    bounds: SemiringBounds,
    step: Fraction | None = None,
) -> tuple[Fraction, ...]:
    """Sorted tuple of candidate coordinate values for witness searches.

    Always contains the bounds and every supplied value; with ``step`` also
    every multiple of ``step`` inside the bounds.  For the min t-norm the
    coordinate set of the inputs plus the bounds is already exact (max and
    min of grid values stay on the grid); uniform refinement is for the
    arithmetic t-norms.
    """
    grid = {bounds.lo, bounds.hi}
    for v in values:
        if not bounds.contains(v):
            raise DomainError("grid value %s outside bounds %s" % (v, bounds))
        grid.add(v)
    if step is not None:
        step = as_value(step)
        if step <= 0:
            raise ValueError("grid step must be positive")
        k = -(-bounds.lo // step)  # ceil division
        v = k * step
        while v <= bounds.hi:
            grid.add(v)
            v += step
    return tuple(sorted(grid))


def common_denominator(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators of ``values``."""
    from math import lcm

    result = 1
    for v in values:
        result = lcm(result, v.denominator)
    return result


def format_value(v: Fraction) -> str:
    """Serialize a Fraction as 'p/q' (or plain 'p' for integers)."""
    return str(v)


def parse_values(xs: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(as_value(x) for x in xs)
