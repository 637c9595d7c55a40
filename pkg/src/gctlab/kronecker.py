"""Kronecker coefficients, rectangular specializations and obstruction search."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import ResourceCapError
from .parallel import ordered_map
from .partitions import (
    Partition,
    as_partition,
    centralizer_size,
    character,
    character_values,
    conjugate,
    iter_partitions,
)
from .symfun import pleth

log = logging.getLogger(__name__)

#: Classes of S_N beyond this count are refused (p(36) = 17977, p(45) = 89134).
MAX_CLASSES = 60000
#: Default cap on candidates scanned by :func:`obstruction_search`.
MAX_CANDIDATES = 5000


def _partition_count(n: int) -> int:
    # Euler's pentagonal recurrence
    p = [1] + [0] * n
    for k in range(1, n + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p[n]


def _check_triple(lam, mu, nu) -> Tuple[Partition, Partition, Partition]:
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if not sum(lam) == sum(mu) == sum(nu):
        raise ValueError(f"sizes differ: {sum(lam)}, {sum(mu)}, {sum(nu)}")
    return lam, mu, nu


def _natural(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"{what} evaluated to {value}, not a natural number")
    return int(value)


def kron(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int], max_classes: Optional[int] = None) -> int:
    """k(lam, mu, nu) = sum over classes rho of chi_lam chi_mu chi_nu / z_rho."""
    lam, mu, nu = _check_triple(lam, mu, nu)
    n = sum(lam)
    max_classes = MAX_CLASSES if max_classes is None else max_classes
    if _partition_count(n) > max_classes:
        raise ResourceCapError(f"S_{n} has {_partition_count(n)} classes (cap {max_classes})")
    # cheapest factor first: rectangles and short shapes vanish on many classes
    first, second, third = sorted((lam, mu, nu), key=lambda p: (len(p) * (p[0] if p else 0), p))
    total = Fraction(0)
    for rho in iter_partitions(n):
        c = character(first, rho)
        if c:
            c *= character(second, rho)
            if c:
                c *= character(third, rho)
                if c:
                    total += Fraction(c, centralizer_size(rho))
    return _natural(total, f"k{(lam, mu, nu)}")


def rectangle(n: int, d: int) -> Partition:
    return (d,) * n if d else ()


@lru_cache(maxsize=8)
def _rect_weights(n: int, d: int) -> Tuple[Tuple[Tuple[Partition, int], ...], int]:
    """Classes where chi of the n x d rectangle is nonzero, with integer weights
    chi^2 * N!/z and the common denominator N!."""
    rect = rectangle(n, d)
    total = factorial(n * d)
    out = []
    for rho in iter_partitions(n * d):
        c = character(rect, rho)
        if c:
            out.append((rho, c * c * (total // centralizer_size(rho))))
    return tuple(out), total


def kron_rect(n: int, lam: Sequence[int], max_classes: Optional[int] = None) -> int:
    """k_n(lam) = k(lam, n x d, n x d) with d = |lam| / n."""
    lam = as_partition(lam)
    if n < 1 or sum(lam) % n:
        raise ValueError(f"n={n} does not divide |lambda|={sum(lam)}")
    size = sum(lam)
    max_classes = MAX_CLASSES if max_classes is None else max_classes
    if _partition_count(size) > max_classes:
        raise ResourceCapError(f"S_{size} has {_partition_count(size)} classes (cap {max_classes})")
    weights, denom = _rect_weights(n, size // n)
    values = character_values(lam, (rho for rho, _ in weights))
    total = sum(w * c for (_, w), c in zip(weights, values))
    return _natural(Fraction(total, denom), f"k_{n}({lam})")


# -- independent check: invariants of an explicit Specht-module triple tensor --

def _standard_tableaux(shape: Partition) -> List[Tuple[Tuple[int, ...], ...]]:
    n = sum(shape)
    out = []

    def fill(rows: List[List[int]], k: int) -> None:
        if k == n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, length in enumerate(shape):
            j = len(rows[i])
            if j < length and (i == 0 or len(rows[i - 1]) > j):
                rows[i].append(k)
                fill(rows, k + 1)
                rows[i].pop()

    fill([[] for _ in shape], 0)
    return out


def _polytabloid(tableau) -> Dict[Tuple[frozenset, ...], int]:
    columns = [[row[j] for row in tableau if len(row) > j] for j in range(len(tableau[0]))]
    vec: Dict[Tuple[frozenset, ...], int] = {}
    for perms in product(*(list(permutations(range(len(c)))) for c in columns)):
        sign = 1
        mapping = {}
        for col, perm in zip(columns, perms):
            sign *= _perm_sign(perm)
            for a, b in enumerate(perm):
                mapping[col[a]] = col[b]
        tabloid = tuple(frozenset(mapping[e] for e in row) for row in tableau)
        vec[tabloid] = vec.get(tabloid, 0) + sign
    return {k: v for k, v in vec.items() if v}


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _solve_coordinates(basis: List[Dict], targets: List[Dict]) -> List[List[Fraction]]:
    """Coordinates of each target vector in the (independent) basis, exactly."""
    keys = sorted({k for v in basis + targets for k in v}, key=repr)
    nb = len(basis)
    rows = [
        [Fraction(b.get(k, 0)) for b in basis] + [Fraction(t.get(k, 0)) for t in targets]
        for k in keys
    ]
    pivot_row = 0
    for col in range(nb):
        pr = next(r for r in range(pivot_row, len(rows)) if rows[r][col] != 0)
        rows[pivot_row], rows[pr] = rows[pr], rows[pivot_row]
        piv = rows[pivot_row][col]
        rows[pivot_row] = [x / piv for x in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
    return [[rows[i][nb + t] for i in range(nb)] for t in range(len(targets))]


@lru_cache(maxsize=None)
def _specht_traces(shape: Partition) -> Dict[Tuple[int, ...], Fraction]:
    n = sum(shape)
    tableaux = _standard_tableaux(shape)
    basis = [_polytabloid(t) for t in tableaux]
    traces = {}
    for sigma in permutations(range(n)):
        moved = [_polytabloid(tuple(tuple(sigma[e] for e in row) for row in t)) for t in tableaux]
        coords = _solve_coordinates(basis, moved)
        traces[sigma] = sum(coords[i][i] for i in range(len(tableaux)))
    return traces


def kron_oracle(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Invariant dimension of [lam] (x) [mu] (x) [nu], from explicit representation matrices.

    Builds Young's natural representation on standard polytabloids for every
    permutation of S_N and averages the product of traces. Only for N <= 5.
    """
    lam, mu, nu = _check_triple(lam, mu, nu)
    n = sum(lam)
    if n > 5:
        raise ResourceCapError("kron_oracle is limited to N <= 5")
    if n == 0:
        return 1
    tl, tm, tn = _specht_traces(lam), _specht_traces(mu), _specht_traces(nu)
    total = sum((tl[s] * tm[s] * tn[s] for s in tl), Fraction(0)) / factorial(n)
    return _natural(total, "oracle invariant dimension")


# -- stretching --

@dataclass
class StretchResult:
    witness: Optional[int]
    checked: List[int]
    values: List[int]
    stopped_by_cap: Optional[int] = None

    def to_json(self) -> dict:
        return asdict(self)


def stretch_probe(n: int, lam: Sequence[int], s_max: int = 4, max_classes: Optional[int] = None) -> StretchResult:
    """Least s <= s_max with k_n(s*lam) > 0.

    A missing witness says nothing about membership in the saturation. When
    s*lam outgrows ``max_classes`` the probe stops there and records it.
    """
    lam = as_partition(lam)
    if n < 1 or sum(lam) % n:
        raise ValueError(f"n={n} does not divide |lambda|={sum(lam)}")
    max_classes = MAX_CLASSES if max_classes is None else max_classes
    checked, values = [], []
    for s in range(1, s_max + 1):
        stretched = tuple(s * p for p in lam)
        if _partition_count(sum(stretched)) > max_classes:
            return StretchResult(None, checked, values, stopped_by_cap=s)
        value = kron_rect(n, stretched, max_classes=max_classes)
        checked.append(s)
        values.append(value)
        if value > 0:
            return StretchResult(s, checked, values)
    return StretchResult(None, checked, values)


# -- obstructions --

@dataclass
class ObstructionReport:
    lam: Partition
    n: int
    d: int
    m: int
    pleth_value: int
    kron_value: int
    shape_ok: Dict[str, bool] = field(default_factory=dict)

    @property
    def is_obstruction(self) -> bool:
        return self.kron_value == 0 and self.pleth_value > 0

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "pleth": self.pleth_value,
            "kron": self.kron_value,
            "shape_ok": dict(self.shape_ok),
        }


def shape_flags(lam: Partition, n: int, m: int) -> Dict[str, bool]:
    """Necessary shape conditions for an obstruction against the padded permanent."""
    return {
        "length": len(lam) <= m * m + 1,
        # lambda_1 >= |lambda| (1 - m/n), cleared of denominators
        "first_row": n * (lam[0] if lam else 0) >= sum(lam) * (n - m),
    }


def search_candidates(
    n: int,
    d: int,
    m: int,
    enforce_shape: bool = True,
    max_length: Optional[int] = None,
    first_part: Tuple[Optional[int], Optional[int]] = (None, None),
) -> Iterator[Partition]:
    length_cap = n * n
    if enforce_shape:
        length_cap = min(length_cap, m * m + 1)
    if max_length is not None:
        length_cap = min(length_cap, max_length)
    lo, hi = first_part
    for lam in iter_partitions(d * n, length_cap, hi):
        if lo is not None and lam[0] < lo:
            break
        if enforce_shape and not shape_flags(lam, n, m)["first_row"]:
            # lex-decreasing order: first parts only shrink from here
            break
        yield lam


def _evaluate(job: Tuple[Partition, int, int, int]) -> Optional[ObstructionReport]:
    lam, n, d, m = job
    p = pleth(n, d, lam, n * n)
    if p == 0:
        return None
    k = kron_rect(n, lam)
    if k != 0:
        return None
    return ObstructionReport(lam, n, d, m, p, k, shape_flags(lam, n, m))


def obstruction_search(
    n: int,
    d: int,
    m: int,
    enforce_shape: bool = True,
    max_length: Optional[int] = None,
    first_part: Tuple[Optional[int], Optional[int]] = (None, None),
    cap: Optional[int] = None,
    workers: int = 1,
) -> List[ObstructionReport]:
    """Partitions lam |- dn with k_n(lam) = 0 < pleth_n(lam), in lex-decreasing order.

    ``max_length`` and ``first_part`` narrow the scan further; they are
    search-window controls, not part of the obstruction definition.
    """
    if d < 1 or n < 1 or m < 1:
        raise ValueError("n, d, m must be positive")
    if m >= n:
        raise ValueError(f"need m < n (got m={m}, n={n})")
    if _partition_count(d * n) > MAX_CLASSES:
        raise ResourceCapError(f"|lambda| = {d * n} is beyond the class cap")
    cap = MAX_CANDIDATES if cap is None else cap
    candidates = []
    for lam in search_candidates(n, d, m, enforce_shape, max_length, first_part):
        candidates.append(lam)
        if len(candidates) > cap:
            raise ResourceCapError(
                f"more than {cap} candidates for n={n}, d={d}, m={m}; narrow the window or raise the cap"
            )
    log.info("obstruction search n=%d d=%d m=%d: %d candidates", n, d, m, len(candidates))
    results = ordered_map(_evaluate, [(lam, n, d, m) for lam in candidates], workers)
    return [r for r in results if r is not None]

