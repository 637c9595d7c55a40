"""Brute-force reference computations, independent of the package code paths."""

from collections import Counter
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb


@lru_cache(maxsize=None)
def count_partitions(n, max_parts, max_part=None):
    """Partitions of n into at most max_parts parts, each at most max_part."""
    if max_part is None:
        max_part = n
    if n == 0:
        return 1
    if max_parts == 0 or max_part == 0:
        return 0
    # largest part is exactly j
    return sum(count_partitions(n - j, max_parts - 1, j) for j in range(1, min(n, max_part) + 1))


def monomials(degree, nvars):
    return [tuple(Counter(c).get(i, 0) for i in range(nvars))
            for c in combinations_with_replacement(range(nvars), degree)]


def sym_sym_character(d, n, nvars):
    """Character of Sym^d Sym^n C^nvars as {exponent vector: multiplicity}."""
    basis = monomials(n, nvars)
    char = Counter()
    for multiset in combinations_with_replacement(range(len(basis)), d):
        exp = tuple(sum(basis[b][i] for b in multiset) for i in range(nvars))
        char[exp] += 1
    return char


def ssyt_content(shape, nvars):
    """Schur polynomial s_shape(x_1..x_nvars) as {exponent vector: Kostka count}."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    out = Counter()

    def fill(k, tab):
        if k == len(cells):
            exp = [0] * nvars
            for v in tab.values():
                exp[v] += 1
            out[tuple(exp)] += 1
            return
        i, j = cells[k]
        lo = 0
        if j > 0:
            lo = max(lo, tab[(i, j - 1)])
        if i > 0:
            lo = max(lo, tab[(i - 1, j)] + 1)
        for v in range(lo, nvars):
            tab[(i, j)] = v
            fill(k + 1, tab)
        tab.pop((i, j), None)

    fill(0, {})
    return out


def schur_decompose(char, nvars):
    """Peel Schur polynomials off a symmetric polynomial, dominant weight first."""
    char = Counter({k: v for k, v in char.items() if v})
    result = {}
    while char:
        top = max(char)
        coeff = char[top]
        lam = tuple(p for p in top if p)
        result[lam] = coeff
        for exp, c in ssyt_content(lam, nvars).items():
            char[exp] -= coeff * c
            if not char[exp]:
                del char[exp]
    return result


def weyl_dimension(lam, k):
    lam = list(lam) + [0] * (k - len(lam))
    num = den = 1
    for i in range(k):
        for j in range(i + 1, k):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def sym_sym_dimension(d, n, k):
    return comb(comb(k + n - 1, n) + d - 1, d)


def permanent_brute(matrix):
    n = len(matrix)
    total = 0
    for perm in permutations(range(n)):
        prod = 1
        for i in range(n):
            prod *= matrix[i][perm[i]]
        total += prod
    return total


def subsets_of_cube(side, size):
    cells = list(product(range(side), repeat=3))
    return [frozenset(c) for c in combinations(cells, size)]
