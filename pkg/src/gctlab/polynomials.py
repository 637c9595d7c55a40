"""Sparse integer polynomials, determinantal representations and Hessian ranks.

Variable ``x_ij`` of an n x n matrix (0-based i, j) has index ``i*n + j``.
A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import ceil
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ResourceCapError
from .matrices import PRIME_62, det_int, det_mod, matmul, permanent_ryser, rank, transpose

Monomial = Tuple[Tuple[int, int], ...]
Number = Union[int, Fraction]

#: Largest number of permutation terms expanded symbolically (8! = 40320).
MAX_TERMS = 40320


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class SparsePoly:
    """Multivariate polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self.terms: Dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted((int(v), int(e)) for v, e in mono if e))
            if c:
                self.terms[mono] = self.terms.get(mono, 0) + int(c)
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int]) -> "SparsePoly":
        out = cls.__new__(cls)
        out.terms = {m: c for m, c in terms.items() if c}
        return out

    @classmethod
    def constant(cls, c: int) -> "SparsePoly":
        return cls._raw({(): int(c)})

    @classmethod
    def var(cls, index: int) -> "SparsePoly":
        return cls._raw({((index, 1),): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = SparsePoly.constant(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            other = SparsePoly.constant(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return SparsePoly._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            other = SparsePoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            return SparsePoly._raw({m: c * other for m, c in self.terms.items()})
        acc: Dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                acc[m] = acc.get(m, 0) + ca * cb
        return SparsePoly._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        out = SparsePoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = "*".join(f"x{v}" + (f"^{e}" if e > 1 else "") for v, e in mono)
            parts.append(f"{c}*{factors}" if factors else str(c))
        return " + ".join(parts)

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        """Terms in canonical order: by total degree, then by monomial."""
        return sorted(self.terms.items(), key=lambda t: (sum(e for _, e in t[0]), t[0]))

    def variables(self) -> List[int]:
        return sorted({v for mono in self.terms for v, _ in mono})

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e for _, e in m) for m in self.terms}) <= 1

    def diff(self, index: int) -> "SparsePoly":
        acc: Dict[Monomial, int] = {}
        for mono, c in self.terms.items():
            exps = dict(mono)
            e = exps.get(index, 0)
            if not e:
                continue
            if e == 1:
                del exps[index]
            else:
                exps[index] = e - 1
            key = tuple(sorted(exps.items()))
            acc[key] = acc.get(key, 0) + c * e
        return SparsePoly._raw(acc)

    def evaluate(self, point: Union[Mapping[int, Number], Sequence[Number]], modulus: Optional[int] = None):
        """Value at ``point`` (indexed by variable); reduced mod ``modulus`` if given."""
        total = 0
        for mono, c in self.terms.items():
            term = c
            for v, e in mono:
                x = point[v]
                term = term * (pow(x, e, modulus) if modulus else x**e)
                if modulus:
                    term %= modulus
            total += term
        return total % modulus if modulus else total

    def substitute(self, images: Mapping[int, "SparsePoly"]) -> "SparsePoly":
        """Replace each variable ``v`` by ``images[v]`` (variables not listed stay)."""
        out = SparsePoly()
        powers: Dict[Tuple[int, int], SparsePoly] = {}
        for mono, c in self.terms.items():
            term = SparsePoly.constant(c)
            for v, e in mono:
                if v not in images:
                    term = term * SparsePoly._raw({((v, e),): 1})
                    continue
                if (v, e) not in powers:
                    powers[(v, e)] = images[v] ** e
                term = term * powers[(v, e)]
            out = out + term
        return out

    def to_json(self) -> list:
        return [[{str(v): e for v, e in mono}, str(c)] for mono, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list) -> "SparsePoly":
        return cls({tuple((int(v), int(e)) for v, e in exps.items()): int(c) for exps, c in data})


def var_index(i: int, j: int, n: int) -> int:
    return i * n + j


def _perm_parity(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def _matrix_form(n: int, signed: bool, cap: Optional[int]) -> SparsePoly:
    cap = MAX_TERMS if cap is None else cap
    if n < 1:
        raise ValueError("matrix size must be positive")
    count = 1
    for k in range(2, n + 1):
        count *= k
    if count > cap:
        raise ResourceCapError(f"{n}! = {count} terms exceeds the cap of {cap}; evaluate numerically instead")
    terms = {}
    for perm in permutations(range(n)):
        mono = tuple((var_index(i, perm[i], n), 1) for i in range(n))
        terms[mono] = _perm_parity(perm) if signed else 1
    return SparsePoly._raw(terms)


def permanent_sym(m: int, cap: Optional[int] = None) -> SparsePoly:
    """per_m in the variables x_ij, fully expanded."""
    return _matrix_form(m, False, cap)


def determinant_sym(n: int, cap: Optional[int] = None) -> SparsePoly:
    """det_n in the variables x_ij, fully expanded."""
    return _matrix_form(n, True, cap)


class AffineMatrix:
    """Square matrix whose entries are polynomials of degree at most one."""

    def __init__(self, entries: Sequence[Sequence[Union[SparsePoly, int]]]):
        rows = [[e if isinstance(e, SparsePoly) else SparsePoly.constant(e) for e in row] for row in entries]
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("affine matrix must be square")
        for row in rows:
            for e in row:
                if e.degree() > 1:
                    raise ValueError(f"entry {e!r} is not affine linear")
        self.entries: List[List[SparsePoly]] = rows

    @property
    def size(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AffineMatrix) and self.entries == other.entries

    def variables(self) -> List[int]:
        return sorted({v for row in self.entries for e in row for v in e.variables()})

    def evaluate(self, point, modulus: Optional[int] = None) -> List[list]:
        return [[e.evaluate(point, modulus) for e in row] for row in self.entries]

    def scale_row(self, i: int, c: int) -> "AffineMatrix":
        rows = [list(r) for r in self.entries]
        rows[i] = [e * c for e in rows[i]]
        return AffineMatrix(rows)

    def to_json(self) -> dict:
        return {"size": self.size, "entries": [[e.to_json() for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "AffineMatrix":
        a = cls([[SparsePoly.from_json(e) for e in row] for row in data["entries"]])
        if a.size != data["size"]:
            raise ValueError("size field disagrees with entries")
        return a


def matrix_det_sym(a: AffineMatrix, cap: int = 10**6) -> SparsePoly:
    """det(A) expanded as a sum over permutations, skipping structural zeros.

    ``cap`` bounds the number of nonvanishing permutations visited.
    """
    n = a.size
    if n == 0:
        return SparsePoly.constant(1)
    support = [[j for j in range(n) if a.entries[i][j]] for i in range(n)]
    result: Dict[Monomial, int] = {}
    visited = 0
    perm = [0] * n
    used = [False] * n

    def walk(i: int, acc: SparsePoly) -> None:
        nonlocal visited
        if i == n:
            visited += 1
            if visited > cap:
                raise ResourceCapError(f"more than {cap} nonzero permutations; use modular evaluation")
            sign = _perm_parity(perm)
            for m, c in acc.terms.items():
                result[m] = result.get(m, 0) + sign * c
            return
        for j in support[i]:
            if not used[j]:
                used[j] = True
                perm[i] = j
                walk(i + 1, acc * a.entries[i][j])
                used[j] = False

    walk(0, SparsePoly.constant(1))
    return SparsePoly._raw(result)


def matrix_eval_mod_p(a: AffineMatrix, point, prime: int = PRIME_62) -> int:
    """det(A(point)) mod ``prime``."""
    return det_mod(a.evaluate(point, prime), prime)


def grenet_matrix(m: int, normalize: bool = False) -> AffineMatrix:
    """Weighted adjacency matrix of the subset-lattice digraph with det = (-1)^(m-1) per_m.

    Nodes are the subsets of {0..m-1}, the full set identified with the empty
    set; ordered by size, then lexicographically. Entry [T][S] carries the
    weight of the edge S -> T, so row 0 collects the edges into the full set.
    Every node other than the empty set has a unit loop. With ``normalize``
    row 0 is multiplied by (-1)^(m-1) and det = per_m exactly.
    """
    if m < 1:
        raise ValueError("m must be positive")
    nodes = [frozenset(c) for k in range(m) for c in combinations(range(m), k)]
    index = {s: i for i, s in enumerate(nodes)}
    full = frozenset(range(m))
    size = len(nodes)
    rows = [[SparsePoly() for _ in range(size)] for _ in range(size)]
    for s in nodes:
        i = len(s)  # edges out of an i-subset use row i of X
        for j in range(m):
            if j in s:
                continue
            t = s | {j}
            target = index[frozenset()] if t == full else index[t]
            rows[target][index[s]] = SparsePoly.var(var_index(i, j, m))
        if s:
            rows[index[s]][index[s]] = SparsePoly.constant(1)
    a = AffineMatrix(rows)
    if normalize and m % 2 == 0:
        a = a.scale_row(0, -1)
    return a


def literal_per3_matrix() -> AffineMatrix:
    """The explicit 7 x 7 matrix with determinant per_3."""
    def x(i: int, j: int) -> SparsePoly:
        return SparsePoly.var(var_index(i - 1, j - 1, 3))

    return AffineMatrix([
        [0, 0, 0, 0, x(3, 3), x(3, 2), x(3, 1)],
        [x(1, 1), 1, 0, 0, 0, 0, 0],
        [x(1, 2), 0, 1, 0, 0, 0, 0],
        [x(1, 3), 0, 0, 1, 0, 0, 0],
        [0, x(2, 2), x(2, 1), 0, 1, 0, 0],
        [0, x(2, 3), 0, x(2, 1), 0, 1, 0],
        [0, 0, x(2, 3), x(2, 2), 0, 0, 1],
    ])


def schwartz_zippel_bound(degree: int, prime: int, trials: int) -> Fraction:
    """Probability that a nonzero polynomial of ``degree`` vanishes at ``trials`` random points."""
    return Fraction(degree, prime) ** trials


def verify_representation(
    a: AffineMatrix,
    f: SparsePoly,
    mode: str = "symbolic",
    trials: int = 10,
    seed: int = 0,
    prime: int = PRIME_62,
) -> bool:
    """Does det(A) equal f?

    In ``"modular"`` mode a false ``True`` has probability at most
    ``schwartz_zippel_bound(max(size, deg f), prime, trials)``.
    """
    if mode == "symbolic":
        return matrix_det_sym(a) == f
    if mode != "modular":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    universe = sorted(set(a.variables()) | set(f.variables()))
    for _ in range(trials):
        point = {v: rng.randrange(prime) for v in universe}
        if matrix_eval_mod_p(a, point, prime) != f.evaluate(point, prime):
            return False
    return True


def pad_polynomial(f: SparsePoly, n: int, t_index: Optional[int] = None) -> SparsePoly:
    """t^(n-m) f for homogeneous f of degree m <= n.

    ``t_index`` defaults to the first index above f's variables.
    """
    if not f.is_homogeneous():
        raise ValueError("padding needs a homogeneous polynomial")
    m = f.degree()
    if n < m:
        raise ValueError(f"target degree {n} is below deg f = {m}")
    if t_index is None:
        t_index = max(f.variables(), default=-1) + 1
    if t_index in f.variables():
        raise ValueError(f"padding variable {t_index} already occurs in f")
    return f * SparsePoly.var(t_index) ** (n - m)


@dataclass
class PolyMatrix:
    """Matrix of polynomials with the variable order used to evaluate it."""

    entries: List[List[SparsePoly]]
    vars: List[int]

    def at(self, point: Sequence[Number]) -> List[List[Number]]:
        """Evaluate with ``point[k]`` assigned to ``vars[k]``."""
        if len(point) != len(self.vars):
            raise ValueError(f"point has {len(point)} coordinates, expected {len(self.vars)}")
        values = dict(zip(self.vars, point))
        return [[e.evaluate(values) for e in row] for row in self.entries]


def hessian(f: SparsePoly, vars: Optional[Sequence[int]] = None) -> PolyMatrix:
    """Matrix of second partial derivatives in the given variable order."""
    vars = list(f.variables() if vars is None else vars)
    first = [f.diff(v) for v in vars]
    entries = [[None] * len(vars) for _ in vars]
    for a in range(len(vars)):
        for b in range(a, len(vars)):
            entries[a][b] = entries[b][a] = first[a].diff(vars[b])
    return PolyMatrix(entries, vars)


def rank_at(h: PolyMatrix, point: Sequence[Number]) -> int:
    """Exact rank of a polynomial matrix at a rational point."""
    return rank(h.at(point))


def matrix_point(matrix: Sequence[Sequence[Number]]) -> List[Number]:
    """Flatten a square matrix into the x_ij variable order."""
    return [x for row in matrix for x in row]


@dataclass
class MignonRessayreCertificate:
    m: int
    matrix: List[List[int]]
    permanent: int
    hessian_rank: int
    implied_bound: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "M": self.matrix,
            "per_M": self.permanent,
            "rank_H_per": self.hessian_rank,
            "implied_bound": self.implied_bound,
        }


def mignon_ressayre_certificate(m: int) -> MignonRessayreCertificate:
    """Certify dc(m) >= ceil(rank H_per(M) / 2) at a zero M of the permanent.

    M is all ones except the corner entry 1 - m. The determinant's Hessian has
    rank at most 2n at singular n x n matrices, so any representation of size n
    needs 2n >= rank H_per(M).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    mat = [[1] * m for _ in range(m)]
    mat[0][0] = 1 - m
    per = permanent_sym(m)
    value = per.evaluate(matrix_point(mat))
    if value != 0 or permanent_ryser(mat) != 0:
        raise AssertionError(f"per(M) = {value} for m = {m}")
    r = rank_at(hessian(per, range(m * m)), matrix_point(mat))
    if r != m * m:
        raise AssertionError(f"rank H_per(M) = {r}, expected {m * m}")
    return MignonRessayreCertificate(m, mat, value, r, ceil(r / 2))


def normal_form(n: int, diagonal: Iterable[int]) -> List[List[int]]:
    """n x n matrix with ones at the given diagonal positions."""
    ones = set(diagonal)
    return [[1 if i == j and i in ones else 0 for j in range(n)] for i in range(n)]


def det_hessian_ranks(n: int) -> Dict[int, List[int]]:
    """rank H_det_n at every rank-s normal form, for each s < n.

    Keys are s; values list the rank for each choice of s diagonal positions.
    """
    h = hessian(determinant_sym(n), range(n * n))
    return {
        s: [rank_at(h, matrix_point(normal_form(n, pos))) for pos in combinations(range(n), s)]
        for s in range(n)
    }


def _affine_images(lin: Sequence[Sequence[Number]], shift: Sequence[Number]) -> Dict[int, SparsePoly]:
    # integer-coefficient images only; rational L is cleared by the caller
    images = {}
    for i, row in enumerate(lin):
        poly = SparsePoly.constant(int(shift[i]))
        for j, c in enumerate(row):
            if c:
                poly = poly + SparsePoly.var(j) * int(c)
        images[i] = poly
    return images


def hessian_transform_check(
    f: SparsePoly,
    lin: Sequence[Sequence[int]],
    shift: Sequence[int],
    trials: int = 5,
    seed: int = 0,
) -> bool:
    """Check H_F(y) = L^T H_f(Ly + b) L for F(y) = f(Ly + b) at random rational y.

    ``lin`` is N x M (N = number of f's variables, indices 0..N-1) with integer
    entries; ``shift`` has length N.
    """
    n_out = len(lin)
    n_in = len(lin[0]) if lin else 0
    if len(shift) != n_out or any(v >= n_out for v in f.variables()):
        raise ValueError("dimensions of L, b and f disagree")
    composed = f.substitute(_affine_images(lin, shift))
    h_big = hessian(composed, range(n_in))
    h_small = hessian(f, range(n_out))
    lt = transpose(lin)
    rng = random.Random(seed)
    for _ in range(trials):
        y = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n_in)]
        x = [sum(Fraction(c) * yj for c, yj in zip(row, y)) + shift[i] for i, row in enumerate(lin)]
        lhs = h_big.at(y)
        rhs = matmul(matmul(lt, h_small.at(x)), lin)
        if lhs != rhs:
            return False
    return True


def random_sl(n: int, rng: random.Random, shears: int = 50) -> List[List[int]]:
    """Integer matrix of determinant one: a product of random elementary shears."""
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(shears):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
    return a


def stabilizer_check(n: int, trials: int = 20, seed: int = 0, det_scale: int = 1) -> bool:
    """det(AXB) = det(X) and det(X^T) = det(X) for random A, B in SL_n.

    ``det_scale`` multiplies the first row of A; anything but 1 is a negative
    control and should make the check fail.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    det = determinant_sym(n)
    rng = random.Random(seed)
    for _ in range(trials):
        a, b = random_sl(n, rng), random_sl(n, rng)
        a[0] = [det_scale * x for x in a[0]]
        x = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        dx = det.evaluate(matrix_point(x))
        if dx != det_int(x):
            raise AssertionError("symbolic and Bareiss determinants disagree")
        if det.evaluate(matrix_point(matmul(matmul(a, x), b))) != dx:
            return False
        if det.evaluate(matrix_point(transpose(x))) != dx:
            return False
    return True
