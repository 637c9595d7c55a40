"""Integer partitions, symmetric-group class data and irreducible characters.

Partitions are plain tuples of positive integers in weakly decreasing order,
with no trailing zeros. Characters use the Murnaghan-Nakayama rule on the
beta-set (abacus) encoding of a shape, memoized on the pair
``(shape, remaining cycle type)``.
"""

from __future__ import annotations

import os
from collections import Counter
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Optional, Sequence, Tuple

Partition = Tuple[int, ...]


def as_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return it as a partition tuple.

    Trailing zeros are dropped; anything else out of order raises ValueError.
    """
    seq = [int(p) for p in parts]
    while seq and seq[-1] == 0:
        seq.pop()
    for i, p in enumerate(seq):
        if p < 1:
            raise ValueError(f"partition parts must be positive: {seq}")
        if i and seq[i - 1] < p:
            raise ValueError(f"partition must be weakly decreasing: {seq}")
    return tuple(seq)


def parse_partition(text: str) -> Partition:
    """Parse ``"13,13,2"`` (or ``""`` for the empty partition)."""
    text = text.strip().strip("[]()")
    if not text:
        return ()
    return as_partition(int(tok) for tok in text.split(","))


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def enumerate_partitions(
    n: int, max_parts: Optional[int] = None, max_first_part: Optional[int] = None
) -> list[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order.

    >>> enumerate_partitions(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(iter_partitions(n, max_parts, max_first_part))


def iter_partitions(
    n: int, max_parts: Optional[int] = None, max_first_part: Optional[int] = None
) -> Iterator[Partition]:
    parts_cap = n if max_parts is None else max_parts
    first_cap = n if max_first_part is None else max_first_part

    def rec(rem: int, cap: int, slots: int) -> Iterator[Partition]:
        if rem == 0:
            yield ()
            return
        if slots == 0 or cap * slots < rem:
            return
        for k in range(min(rem, cap), 0, -1):
            for tail in rec(rem - k, k, slots - 1):
                yield (k,) + tail

    yield from rec(n, first_cap, parts_cap)


def conjugate(lam: Sequence[int]) -> Partition:
    """Column lengths of the Young diagram of ``lam``."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def centralizer_size(rho: Sequence[int]) -> int:
    """z_rho = prod_j j^{m_j} m_j!, the order of the centralizer of a permutation of cycle type rho."""
    out = 1
    for part, mult in Counter(rho).items():
        out *= part**mult * factorial(mult)
    return out


def class_size(rho: Sequence[int]) -> int:
    return factorial(sum(rho)) // centralizer_size(rho)


def cycle_type_sign(rho: Sequence[int]) -> int:
    return -1 if (sum(rho) - len(rho)) % 2 else 1


def hook_lengths(lam: Sequence[int]) -> list[int]:
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def dimension(lam: Sequence[int]) -> int:
    """Dimension of the Specht module via the hook-length formula."""
    prod = 1
    for h in hook_lengths(lam):
        prod *= h
    return factorial(sum(lam)) // prod


def _beta(lam: Sequence[int]) -> Tuple[int, ...]:
    n = len(lam)
    return tuple(p + n - 1 - i for i, p in enumerate(lam))


def _normalize(beta: Tuple[int, ...]) -> Tuple[int, ...]:
    # A bead at 0 encodes an empty row; dropping it shifts the rest down by one.
    while beta and beta[-1] == 0:
        beta = tuple(b - 1 for b in beta[:-1])
    return beta


def _strip_moves(beta: Tuple[int, ...], r: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Shapes reachable by removing one r-rim hook, with the hook's sign."""
    occupied = set(beta)
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        # leg length of the rim hook = beads jumped over
        height = sum(1 for c in beta if target < c < b)
        moved = sorted([c for c in beta if c != b] + [target], reverse=True)
        yield _normalize(tuple(moved)), (-1 if height & 1 else 1)


# Bounded so that long searches over partitions of ~36 stay within a few GB.
CHARACTER_CACHE_SIZE = int(os.environ.get("GCTLAB_CHARACTER_CACHE", 1 << 21))


@lru_cache(maxsize=CHARACTER_CACHE_SIZE)
def _mn(beta: Tuple[int, ...], rest: Tuple[int, ...]) -> int:
    if not rest:
        return 1
    return sum(sign * _mn(nb, rest[1:]) for nb, sign in _strip_moves(beta, rest[0]))


def _mn_uncached(beta: Tuple[int, ...], rest: Tuple[int, ...]) -> int:
    if not rest:
        return 1
    return sum(sign * _mn_uncached(nb, rest[1:]) for nb, sign in _strip_moves(beta, rest[0]))


def _class_key(lam: Sequence[int], rho: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    lam = as_partition(lam)
    rho = tuple(sorted((int(r) for r in rho if r), reverse=True))
    if sum(lam) != sum(rho):
        raise ValueError(f"size mismatch: |{lam}| != |{rho}|")
    return _normalize(_beta(lam)), rho


def character(lam: Sequence[int], rho: Sequence[int], cached: bool = True) -> int:
    """Irreducible character chi_lam evaluated on the class of cycle type ``rho``.

    >>> character((2, 1), (1, 1, 1)), character((1, 1), (2,))
    (2, -1)
    """
    key = _class_key(lam, rho)
    return _mn(*key) if cached else _mn_uncached(*key)


def character_values(lam: Sequence[int], classes: Iterable[Partition]) -> Iterator[int]:
    """chi_lam on each class, for classes already given as partitions of |lam|."""
    beta = _normalize(_beta(as_partition(lam)))
    for rho in classes:
        yield _mn(beta, rho)


def character_cache_clear() -> None:
    _mn.cache_clear()


def character_cache_info():
    return _mn.cache_info()
