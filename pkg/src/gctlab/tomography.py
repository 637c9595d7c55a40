"""3D relations, their marginals, and the counts t and p that bracket k.

A relation is a finite set of points of N^3. Marginals are indexed from 0:
``xm[i]`` is the number of points with first coordinate ``i``. For partitions
lam, mu, nu of d, ``t`` counts relations whose marginals are the conjugates
lam', mu', nu' and ``p`` counts the pyramids (downward-closed relations, i.e.
plane partitions) among them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .errors import ResourceCapError
from .parallel import ordered_map
from .partitions import Partition, as_partition, conjugate

Point = Tuple[int, int, int]
Relation = FrozenSet[Point]

#: Largest d for which t and p are counted exhaustively.
MAX_D = 10


@dataclass(frozen=True)
class MarginalTriple:
    xm: Tuple[int, ...]
    ym: Tuple[int, ...]
    zm: Tuple[int, ...]
    height_sum: int  # sum of x+y+z over the relation, i.e. |R| h_R


def relation(points: Iterable[Sequence[int]]) -> Relation:
    pts = [tuple(int(c) for c in p) for p in points]
    if any(len(p) != 3 or min(p) < 0 for p in pts):
        raise ValueError("points must be triples of nonnegative integers")
    out = frozenset(pts)
    if len(out) != len(pts):
        raise ValueError("duplicate points in relation")
    return out


def _counts(values: Iterable[int]) -> Tuple[int, ...]:
    values = list(values)
    if not values:
        return ()
    out = [0] * (max(values) + 1)
    for v in values:
        out[v] += 1
    return tuple(out)


def marginals(rel: Iterable[Point]) -> MarginalTriple:
    rel = list(rel)
    return MarginalTriple(
        _counts(p[0] for p in rel),
        _counts(p[1] for p in rel),
        _counts(p[2] for p in rel),
        sum(sum(p) for p in rel),
    )


def is_pyramid(rel: Iterable[Point]) -> bool:
    """Downward closed in the product order (enough to check unit steps)."""
    rel = set(rel)
    for x, y, z in rel:
        if x and (x - 1, y, z) not in rel:
            return False
        if y and (x, y - 1, z) not in rel:
            return False
        if z and (x, y, z - 1) not in rel:
            return False
    return True


def _check(lam, mu, nu) -> Tuple[Partition, Partition, Partition]:
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    d = sum(lam)
    if not d == sum(mu) == sum(nu):
        raise ValueError("partitions must have equal size")
    if d > MAX_D:
        raise ResourceCapError(f"d = {d} is above the exhaustive limit {MAX_D}")
    return conjugate(lam), conjugate(mu), conjugate(nu)


def _slices(size: int, y_left: Tuple[int, ...], z_left: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Subsets of the y-z grid of the given size that fit the remaining budgets."""
    cells = [(y, z) for y in range(len(y_left)) if y_left[y] for z in range(len(z_left)) if z_left[z]]
    for chosen in combinations(cells, size):
        ys, zs = list(y_left), list(z_left)
        ok = True
        for y, z in chosen:
            ys[y] -= 1
            zs[z] -= 1
            if ys[y] < 0 or zs[z] < 0:
                ok = False
                break
        if ok:
            yield chosen


def _spend(chosen, y_left, z_left) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    ys, zs = list(y_left), list(z_left)
    for y, z in chosen:
        ys[y] -= 1
        zs[z] -= 1
    return tuple(ys), tuple(zs)


@lru_cache(maxsize=None)
def _count_t(xs: Tuple[int, ...], y_left: Tuple[int, ...], z_left: Tuple[int, ...]) -> int:
    if not xs:
        return int(not any(y_left) and not any(z_left))
    total = 0
    for chosen in _slices(xs[0], y_left, z_left):
        total += _count_t(xs[1:], *_spend(chosen, y_left, z_left))
    return total


def _young_subdiagrams(outer: FrozenSet[Tuple[int, int]], size: int) -> Iterator[FrozenSet[Tuple[int, int]]]:
    """Downward-closed subsets of ``outer`` (itself downward closed) with ``size`` cells."""
    rows = {}
    for y, z in outer:
        rows[y] = max(rows.get(y, 0), z + 1)
    bounds = [rows[y] for y in range(len(rows))]

    def rec(y: int, cap: int, left: int) -> Iterator[Tuple[int, ...]]:
        if left == 0:
            yield ()
            return
        if y == len(bounds):
            return
        for length in range(min(cap, bounds[y], left), 0, -1):
            for rest in rec(y + 1, length, left - length):
                yield (length,) + rest

    for lengths in rec(0, max(bounds, default=0), size):
        yield frozenset((y, z) for y, length in enumerate(lengths) for z in range(length))


@lru_cache(maxsize=None)
def _count_p(xs: Tuple[int, ...], above: FrozenSet[Tuple[int, int]], y_left, z_left) -> int:
    if not xs:
        return int(not any(y_left) and not any(z_left))
    total = 0
    for diagram in _young_subdiagrams(above, xs[0]):
        ys, zs = list(y_left), list(z_left)
        ok = True
        for y, z in diagram:
            if y >= len(ys) or z >= len(zs):
                ok = False
                break
            ys[y] -= 1
            zs[z] -= 1
            if ys[y] < 0 or zs[z] < 0:
                ok = False
                break
        if ok:
            total += _count_p(xs[1:], diagram, tuple(ys), tuple(zs))
    return total


def _full_grid(ny: int, nz: int) -> FrozenSet[Tuple[int, int]]:
    return frozenset(product(range(ny), range(nz)))


def _t_branch(job) -> int:
    first, xs, y_left, z_left = job
    return _count_t(xs, *_spend(first, y_left, z_left))


def count_relations_t(lam, mu, nu, workers: int = 1) -> int:
    """Number of 3D relations with marginals (lam', mu', nu')."""
    xs, ys, zs = _check(lam, mu, nu)
    if not xs:
        return 1
    branches = [(c, xs[1:], ys, zs) for c in _slices(xs[0], ys, zs)]
    return sum(ordered_map(_t_branch, branches, workers))


def count_pyramids_p(lam, mu, nu) -> int:
    """Number of pyramids with marginals (lam', mu', nu')."""
    xs, ys, zs = _check(lam, mu, nu)
    if not xs:
        return 1
    return _count_p(xs, _full_grid(len(ys), len(zs)), ys, zs)


def iter_relations(lam, mu, nu) -> Iterator[Relation]:
    """Every relation counted by :func:`count_relations_t`, one at a time."""
    xs, ys, zs = _check(lam, mu, nu)

    def rec(i: int, y_left, z_left, acc: List[Point]) -> Iterator[Relation]:
        if i == len(xs):
            if not any(y_left) and not any(z_left):
                yield frozenset(acc)
            return
        for chosen in _slices(xs[i], y_left, z_left):
            yield from rec(i + 1, *_spend(chosen, y_left, z_left), acc + [(i, y, z) for y, z in chosen])

    yield from rec(0, ys, zs, [])


def simplex(s: int) -> Relation:
    """P(s) = points with x + y + z <= s - 1."""
    return frozenset(p for p in product(range(s), repeat=3) if sum(p) <= s - 1)


def simplex_size(s: int) -> int:
    return s * (s + 1) * (s + 2) // 6


@dataclass(frozen=True)
class SimplexData:
    s: int
    size: int
    h: Fraction


def simplex_data(d: int) -> SimplexData:
    """s(d) = max s with |P(s)| <= d, and the barycenter height h(d)."""
    if d < 1:
        raise ValueError("d must be positive")
    s = 1
    while simplex_size(s + 1) <= d:
        s += 1
    size = simplex_size(s)
    # sum of x+y+z over P(s): each level k has (k+1)(k+2)/2 points
    h_simplex = Fraction(sum(k * (k + 1) * (k + 2) // 2 for k in range(s)), size)
    frac = Fraction(size, d)
    return SimplexData(s, size, frac * h_simplex + (1 - frac) * s)


def is_simplex_like(lam, mu, nu) -> bool:
    """sum_i i (lam'_i + mu'_i + nu'_i) == d h(d), with conjugates indexed from 0."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    d = sum(lam)
    if not d == sum(mu) == sum(nu):
        raise ValueError("partitions must have equal size")
    if d == 0:
        return True
    lhs = sum(i * c for part in (lam, mu, nu) for i, c in enumerate(conjugate(part)))
    return lhs == d * simplex_data(d).h
