"""Latin squares, column signs and the Alon-Tarsi count.

Squares are tuples of rows with entries 1..n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import ResourceCapError
from .parallel import ordered_map

Square = Tuple[Tuple[int, ...], ...]

#: Orders above this are refused; order 6 takes hours in pure Python.
MAX_ORDER = 5


def perm_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of 1..n by cycle decomposition."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def validate(square: Sequence[Sequence[int]]) -> Square:
    sq = tuple(tuple(int(v) for v in row) for row in square)
    n = len(sq)
    target = set(range(1, n + 1))
    if any(len(row) != n or set(row) != target for row in sq):
        raise ValueError("every row must be a permutation of 1..n")
    if any({row[j] for row in sq} != target for j in range(n)):
        raise ValueError("every column must be a permutation of 1..n")
    return sq


def column_sign(square: Sequence[Sequence[int]]) -> int:
    """Product over columns of the sign of the column read top to bottom."""
    sq = validate(square)
    sign = 1
    for j in range(len(sq)):
        sign *= perm_sign([row[j] for row in sq])
    return sign


def _check_order(n: int, cap: Optional[int]) -> None:
    cap = MAX_ORDER if cap is None else cap
    if n < 1:
        raise ValueError("order must be positive")
    if n > cap:
        raise ResourceCapError(f"order {n} is above the cap {cap}")


def _complete(rows: List[Tuple[int, ...]], n: int) -> Iterator[Square]:
    """All Latin squares of order n extending the given first rows."""
    used_cols = [set(row[j] for row in rows) for j in range(n)]

    def rec(r: int) -> Iterator[Square]:
        if r == n:
            yield tuple(rows)
            return
        row: List[int] = []

        def fill(j: int, free: set) -> Iterator[Square]:
            if j == n:
                rows.append(tuple(row))
                yield from rec(r + 1)
                rows.pop()
                return
            for v in sorted(free - used_cols[j]):
                row.append(v)
                used_cols[j].add(v)
                free.discard(v)
                yield from fill(j + 1, free)
                free.add(v)
                used_cols[j].discard(v)
                row.pop()

        yield from fill(0, set(range(1, n + 1)))

    yield from rec(len(rows))


def iter_latin(n: int, cap: Optional[int] = None) -> Iterator[Square]:
    """Every Latin square of order n, in lexicographic order of rows."""
    _check_order(n, cap)
    yield from _complete([], n)


def enumerate_latin(n: int, cap: Optional[int] = None) -> int:
    return sum(1 for _ in iter_latin(n, cap))


@dataclass(frozen=True)
class AlonTarsiReport:
    order: int
    even: int
    odd: int

    @property
    def difference(self) -> int:
        return self.even - self.odd

    def to_json(self) -> dict:
        return {"order": self.order, "even": self.even, "odd": self.odd, "difference": self.difference}


def _count_from_first_row(job: Tuple[Tuple[int, ...], int]) -> Tuple[int, int]:
    first, n = job
    even = odd = 0
    for sq in _complete([first], n):
        sign = 1
        for j in range(n):
            sign *= perm_sign([row[j] for row in sq])
        if sign > 0:
            even += 1
        else:
            odd += 1
    return even, odd


def alon_tarsi(n: int, cap: Optional[int] = None, workers: int = 1) -> AlonTarsiReport:
    """Counts of column-even and column-odd Latin squares of order n."""
    _check_order(n, cap)
    jobs = [(first, n) for first in permutations(range(1, n + 1))]
    parts = ordered_map(_count_from_first_row, jobs, workers)
    return AlonTarsiReport(n, sum(e for e, _ in parts), sum(o for _, o in parts))


def alon_tarsi_statistic(n: int, cap: Optional[int] = None, workers: int = 1) -> int:
    """Number of column-even minus column-odd Latin squares of order n."""
    return alon_tarsi(n, cap, workers).difference


REFERENCE_SQUARE: Square = ((1, 2, 3, 4), (4, 1, 2, 3), (3, 4, 1, 2), (2, 3, 4, 1))
