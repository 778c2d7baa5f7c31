"""Shared helpers for the test suite: random rational instances.

Random coordinates are drawn from small fixed-denominator grids so
every value stays an exact Fraction and oracle grids stay small.
"""

from __future__ import annotations

import random
from fractions import Fraction

from maxminconv import Point, Polytope


def rational(rng: random.Random, den: int = 8) -> Fraction:
    return Fraction(rng.randrange(0, den + 1), den)


def interior_rational(rng: random.Random, den: int = 8) -> Fraction:
    """A value strictly between the unit bounds."""
    return Fraction(rng.randrange(1, den), den)


def random_point(rng: random.Random, d: int, den: int = 8) -> Point:
    return Point(tuple(rational(rng, den) for _ in range(d)))


def random_interior_point(rng: random.Random, d: int, den: int = 8) -> Point:
    return Point(tuple(interior_rational(rng, den) for _ in range(d)))


def random_polytope(rng: random.Random, d: int, n: int, den: int = 8) -> Polytope:
    return Polytope(tuple(random_point(rng, d, den) for _ in range(n)))


def comparable_pair(rng: random.Random, d: int, den: int = 8) -> tuple[Point, Point]:
    """A pair x <= y, componentwise."""
    a = random_point(rng, d, den)
    b = random_point(rng, d, den)
    return a.meet(b), a.join(b)


def planted_join_instance(rng: random.Random, d: int, den: int = 10) -> list[Point]:
    """d+2 points containing the join of the others at a random slot.

    Product witnesses can need denominators the default search grid does
    not reach, so random product/Lukasiewicz Radon instances are seeded
    with their own join: the split {join} vs rest always admits the join
    itself as a common point, and joins of grid coordinates stay on the
    grid.
    """
    base = [random_point(rng, d, den=den) for _ in range(d + 1)]
    joined = base[0]
    for q in base[1:]:
        joined = joined.join(q)
    pts = base + [joined]
    rng.shuffle(pts)
    return pts
