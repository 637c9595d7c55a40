"""Exact dense linear algebra on small matrices: ranks, determinants, permanents."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence

Matrix = List[List[int]]

#: A fixed 62-bit prime, 2**62 - 57, used for randomized identity tests.
PRIME_62 = (1 << 62) - 57


def _integer_rows(rows: Sequence[Sequence]) -> Matrix:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination with full pivoting.

    Rows are cleared of denominators first; scaling a row does not change rank.
    """
    a = _integer_rows(rows)
    if not a or not a[0]:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    prev = 1
    r = 0
    while r < min(n_rows, n_cols):
        # full pivoting: smallest nonzero magnitude keeps the entries short
        best = None
        for i in range(r, n_rows):
            for j in range(r, n_cols):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[r], a[i] = a[i], a[r]
        if j != r:
            for row in a:
                row[r], row[j] = row[j], row[r]
        piv = a[r][r]
        for i in range(r + 1, n_rows):
            ai = a[i]
            f = ai[r]
            ar = a[r]
            for j in range(r + 1, n_cols):
                # exact division is the Bareiss invariant
                ai[j] = (piv * ai[j] - f * ar[j]) // prev
            ai[r] = 0
        prev = piv
        r += 1
    return r


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss elimination."""
    a = [list(map(int, row)) for row in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant modulo the prime ``p`` by Gaussian elimination."""
    a = [[x % p for x in row] for row in rows]
    n = len(a)
    det = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k]), None)
        if pivot is None:
            return 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det = det * a[k][k] % p
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f:
                ak, ai = a[k], a[i]
                for j in range(k, n):
                    ai[j] = (ai[j] - f * ak[j]) % p
    return det % p


def permanent_ryser(rows: Sequence[Sequence], modulus: int | None = None):
    """Permanent by Ryser's inclusion-exclusion formula, O(2^n n^2)."""
    n = len(rows)
    if n == 0:
        return 1
    total = 0
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = 1
        for row in rows:
            prod *= sum(row[j] for j in cols)
            if modulus:
                prod %= modulus
        total += -prod if (n - len(cols)) % 2 else prod
    return total % modulus if modulus else total


def transpose(rows: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*rows)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
