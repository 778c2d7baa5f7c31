"""Hulls under generalized t-norms and combinatorial witness searches.

Membership for a max-T hull is decided by residuation and is exact for
every built-in t-norm.  The Radon, Helly, centerpoint and Tverberg
procedures search a finite coordinate grid for witnesses.  With the min
t-norm the grid built from the input coordinates is exact: rounding any
witness down to the grid keeps it in every hull at once, so a grid miss
is a genuine miss.  The product and Lukasiewicz norms generate values
off that grid; their searches refine the grid by a uniform rational
step (default 1/100) and report a miss as ResolutionExhausted instead
of claiming emptiness.

Positive results never rely on the integer kernels alone: every witness
coming back from a scan is re-verified coordinate by coordinate with
exact rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .core import (
    MIN,
    PreconditionError,
    ResolutionExhausted,
    TNorm,
    common_denominator,
    residual,
    value_grid,
)
from .geometry import Point, _check_bounds, _check_same_dim
from .hull import Polytope

DEFAULT_STEP = Fraction(1, 100)
MAX_FRACTION_DENOM = 10**6


def _validate(pts: Sequence[Point], tnorm: TNorm) -> None:
    if not pts:
        raise PreconditionError("need at least one point")
    for p in pts[1:]:
        _check_same_dim(pts[0], p)
    for p in pts:
        _check_bounds(p, tnorm.bounds)

_TAGS = {"min": _kernels.TAG_MIN, "product": _kernels.TAG_PRODUCT, "lukasiewicz": _kernels.TAG_LUKASIEWICZ}


class NotFound(Exception):
    """Exhaustive search finished without a witness.

    Only raised where existence is an open question; where a theorem
    guarantees a witness, exhaustion trips an AssertionError instead.
    """


@dataclass(frozen=True)
class MaxTMembership:
    member: bool
    coefficients: tuple[Fraction, ...]
    combination: Point

    def __bool__(self) -> bool:
        return self.member


@dataclass(frozen=True)
class RadonPartition:
    part1: tuple[int, ...]
    part2: tuple[int, ...]
    witness: Point


@dataclass(frozen=True)
class TverbergPartition:
    parts: tuple[tuple[int, ...], ...]
    witness: Point


@dataclass(frozen=True)
class CommonWitness:
    point: Point


@dataclass(frozen=True)
class CounterexampleSubfamily:
    indices: tuple[int, ...]


def _principal(p: Point, generators: Sequence[Point], tnorm: TNorm):
    """Largest coefficient vector keeping the combination below p."""
    lams = tuple(
        min(residual(tnorm, g[j], p[j]) for j in range(p.dim)) for g in generators
    )
    combo = Point(
        tuple(
            max(tnorm.apply(lam, g[j]) for lam, g in zip(lams, generators))
            for j in range(p.dim)
        )
    )
    return lams, combo


def _member_exact(p: Point, generators: Sequence[Point], tnorm: TNorm) -> bool:
    lams, combo = _principal(p, generators, tnorm)
    return combo == p and max(lams) == tnorm.bounds.hi


def hull_member_maxt(p: Point, x: Polytope, tnorm: TNorm = MIN) -> MaxTMembership:
    """Exact hull membership under any built-in t-norm, by residuation.

    Computes the principal coefficients lam*_i = min_j residual(T,
    x_ij, p_j), the largest coefficients whose combination stays at or
    below p in every coordinate.  Any feasible certificate is dominated
    by them: raising a coefficient past lam*_i pushes some coordinate of
    the combination strictly above p.  So p lies in the hull exactly
    when the principal combination reproduces p and the coefficients
    include the unit (the normalization max_i lam_i = hi).
    """
    _validate([p] + list(x.generators), tnorm)
    lams, combo = _principal(p, x.generators, tnorm)
    member = combo == p and max(lams) == tnorm.bounds.hi
    return MaxTMembership(member=member, coefficients=lams, combination=combo)


def _search_grid(
    points: Sequence[Point], tnorm: TNorm, grid_step: Fraction | None
) -> tuple[Fraction, ...]:
    if grid_step is None and not tnorm.is_min:
        grid_step = DEFAULT_STEP
    coords = [c for p in points for c in p.coords]
    return value_grid(coords, tnorm.bounds, step=grid_step)


def _common_point_exact(
    groups: Sequence[Sequence[Point]], tnorm: TNorm, grid: Sequence[Fraction]
) -> Point | None:
    d = groups[0][0].dim
    for combo in itertools.product(grid, repeat=d):
        q = Point(combo)
        if all(_member_exact(q, g, tnorm) for g in groups):
            return q
    return None


def _common_point(
    groups: Sequence[Sequence[Point]], tnorm: TNorm, grid: Sequence[Fraction]
) -> Point | None:
    """Lex-first grid point lying in the hull of every group, or None.

    Runs on the integer kernels and re-verifies any hit with exact
    rational arithmetic before returning it.
    """
    d = groups[0][0].dim
    coords = {c for g in groups for pt in g for c in pt.coords}
    if tnorm.is_min:
        table = sorted(set(grid) | coords)
        rank = {v: i for i, v in enumerate(table)}
        denom = 1
        top = rank[tnorm.bounds.hi]

        def enc(v: Fraction) -> int:
            return rank[v]

    else:
        denom = common_denominator(sorted(set(grid) | coords))
        if denom > MAX_FRACTION_DENOM:
            return _common_point_exact(groups, tnorm, grid)
        top = denom

        def enc(v: Fraction) -> int:
            return int(v * denom)

    grid_enc = np.array([enc(v) for v in grid], dtype=np.int64)
    rows = []
    offs = [0]
    for g in groups:
        for pt in g:
            rows.append([enc(c) for c in pt.coords])
        offs.append(len(rows))
    flat = _kernels.scan_common(
        _TAGS[tnorm.tag],
        denom,
        grid_enc,
        d,
        np.array(rows, dtype=np.int64),
        np.array(offs, dtype=np.int64),
        top,
    )
    if flat < 0:
        return None
    k = len(grid)
    digits = []
    for _ in range(d):
        digits.append(flat % k)
        flat //= k
    q = Point(tuple(grid[i] for i in reversed(digits)))
    for g in groups:
        if not _member_exact(q, g, tnorm):
            raise AssertionError("scan witness failed exact re-verification")
    return q


def _miss(tnorm: TNorm, what: str) -> Exception:
    if tnorm.is_min:
        return AssertionError(
            "soundness alarm: no %s on the exact grid, "
            "contradicting the existence guarantee" % what
        )
    return ResolutionExhausted(
        "no %s at grid step; retry with a finer grid_step" % what
    )


def radon_partition(
    points: Sequence[Point],
    tnorm: TNorm = MIN,
    grid_step: Fraction | None = None,
) -> RadonPartition:
    """Split d+2 points into two parts whose hulls share a point.

    Partitions are tried in ascending bitmask order with index 0 pinned
    to the first part, and for each one the grid is scanned for a
    common witness.  Existence holds for every built-in t-norm, so with
    min arithmetic a full miss is an internal error; for the other
    norms it surfaces as ResolutionExhausted.
    """
    pts = list(points)
    _validate(pts, tnorm)
    d = pts[0].dim
    n = len(pts)
    if n != d + 2:
        raise PreconditionError("need %d points in dimension %d, got %d" % (d + 2, d, n))
    grid = _search_grid(pts, tnorm, grid_step)
    for mask in range(1, 1 << (n - 1)):
        part2 = tuple(i for i in range(1, n) if mask >> (i - 1) & 1)
        part1 = tuple(i for i in range(n) if i not in part2)
        witness = _common_point(
            [[pts[i] for i in part1], [pts[i] for i in part2]], tnorm, grid
        )
        if witness is not None:
            return RadonPartition(part1=part1, part2=part2, witness=witness)
    raise _miss(tnorm, "Radon witness")


def helly_check(
    family: Sequence[Polytope],
    tnorm: TNorm = MIN,
    grid_step: Fraction | None = None,
) -> CommonWitness | CounterexampleSubfamily:
    """Test the d+1 intersection hypothesis, then produce a common point.

    Scans every subfamily of size min(d+1, len(family)) for a common
    grid point; the first one without any is returned as a
    counterexample to the hypothesis.  When all of them intersect, the
    whole family is guaranteed to as well, and the witness found by the
    full scan is returned.
    """
    polys = list(family)
    if not polys:
        raise PreconditionError("empty family")
    all_points = [p for poly in polys for p in poly.generators]
    _validate(all_points, tnorm)
    d = all_points[0].dim
    grid = _search_grid(all_points, tnorm, grid_step)
    k = min(d + 1, len(polys))
    for subset in itertools.combinations(range(len(polys)), k):
        if _common_point([polys[i].generators for i in subset], tnorm, grid) is None:
            return CounterexampleSubfamily(indices=subset)
    witness = _common_point([poly.generators for poly in polys], tnorm, grid)
    if witness is None:
        raise _miss(tnorm, "family-wide witness")
    return CommonWitness(point=witness)


def centerpoint(
    points: Sequence[Point],
    tnorm: TNorm = MIN,
    grid_step: Fraction | None = None,
) -> Point:
    """Point lying in the hull of every subset larger than dn/(d+1).

    Equivalently, a common point of the hulls of all subsets of size
    m0 = floor(dn/(d+1)) + 1, which is how the search is run: one scan
    over the grid against every m0-subset at once.
    """
    pts = list(points)
    _validate(pts, tnorm)
    d = pts[0].dim
    n = len(pts)
    m0 = (d * n) // (d + 1) + 1
    groups = [
        [pts[i] for i in subset] for subset in itertools.combinations(range(n), m0)
    ]
    grid = _search_grid(pts, tnorm, grid_step)
    witness = _common_point(groups, tnorm, grid)
    if witness is None:
        raise _miss(tnorm, "centerpoint")
    return witness


def _is_prime_power(r: int) -> bool:
    p = 2
    while p * p <= r:
        if r % p == 0:
            while r % p == 0:
                r //= p
            return r == 1
        p += 1
    return r > 1


def _partitions_into(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Partitions of range(n) into exactly r blocks, as growth strings.

    A growth string assigns each index the number of its block, where a
    new block may only open once all earlier ones have; enumeration is
    lexicographic, so block 0 always contains index 0.
    """
    a = [0] * n

    def rec(i: int, m: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if m == r - 1:
                yield tuple(a)
            return
        if m + (n - i) < r - 1:
            return
        for v in range(min(m + 1, r - 1) + 1):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    yield from rec(1, 0)


def tverberg_search(
    points: Sequence[Point],
    r: int,
    tnorm: TNorm = MIN,
    grid_step: Fraction | None = None,
) -> TverbergPartition:
    """Search for r disjoint parts of (d+1)(r-1)+1 points with a common hull point.

    Exhausts partitions into exactly r blocks in lexicographic growth
    string order.  For prime-power r existence is guaranteed, so an
    exact-grid miss with the min t-norm is an internal error; for other
    r the question is open and the miss is reported as NotFound.
    """
    if r < 2:
        raise PreconditionError("need r >= 2")
    pts = list(points)
    _validate(pts, tnorm)
    d = pts[0].dim
    n = len(pts)
    if n != (d + 1) * (r - 1) + 1:
        raise PreconditionError(
            "need %d points for r=%d in dimension %d, got %d"
            % ((d + 1) * (r - 1) + 1, r, d, n)
        )
    if r == 2:
        rp = radon_partition(pts, tnorm, grid_step)
        return TverbergPartition(parts=(rp.part1, rp.part2), witness=rp.witness)
    grid = _search_grid(pts, tnorm, grid_step)
    for labels in _partitions_into(n, r):
        parts = tuple(
            tuple(i for i in range(n) if labels[i] == b) for b in range(r)
        )
        witness = _common_point(
            [[pts[i] for i in part] for part in parts], tnorm, grid
        )
        if witness is not None:
            return TverbergPartition(parts=parts, witness=witness)
    if tnorm.is_min and _is_prime_power(r):
        raise _miss(tnorm, "Tverberg witness")
    if not tnorm.is_min:
        raise ResolutionExhausted(
            "no Tverberg witness at grid step; retry with a finer grid_step"
        )
    raise NotFound(
        "no partition into %d parts shares a hull point on the exact grid; "
        "existence for this r is an open question" % r
    )
