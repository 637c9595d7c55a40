import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from gctlab.errors import ResourceCapError
from gctlab.matrices import PRIME_62, det_int, permanent_ryser, rank
from gctlab.polynomials import (
    AffineMatrix,
    SparsePoly,
    det_hessian_ranks,
    determinant_sym,
    grenet_matrix,
    hessian,
    hessian_transform_check,
    matrix_det_sym,
    matrix_eval_mod_p,
    matrix_point,
    mignon_ressayre_certificate,
    normal_form,
    pad_polynomial,
    literal_per3_matrix,
    permanent_sym,
    rank_at,
    schwartz_zippel_bound,
    stabilizer_check,
    var_index,
    verify_representation,
)
from oracles import permanent_brute


def x(i, j, n):
    return SparsePoly.var(var_index(i, j, n))


def test_per_det_two():
    assert permanent_sym(2) == x(0, 0, 2) * x(1, 1, 2) + x(0, 1, 2) * x(1, 0, 2)
    assert determinant_sym(2) == x(0, 0, 2) * x(1, 1, 2) - x(0, 1, 2) * x(1, 0, 2)


def test_per3_has_six_unit_terms():
    per = permanent_sym(3)
    assert len(per.terms) == 6 and set(per.terms.values()) == {1}


@pytest.mark.parametrize("n", range(1, 7))
def test_det_per_same_support_signed(n):
    per, det = permanent_sym(n), determinant_sym(n)
    assert per.terms.keys() == det.terms.keys()
    assert set(per.terms.values()) == {1}
    for perm in permutations(range(n)):
        mono = tuple((var_index(i, perm[i], n), 1) for i in range(n))
        inversions = sum(1 for a, b in combinations(perm, 2) if a > b)
        assert det.terms[mono] == (-1) ** inversions


def test_term_cap():
    with pytest.raises(ResourceCapError):
        permanent_sym(9)


def test_poly_arithmetic():
    a, b = SparsePoly.var(0), SparsePoly.var(1)
    assert (a + b) * (a - b) == a * a - b * b
    assert (a + 1) ** 2 == a * a + 2 * a + 1
    assert (a * b).diff(0) == b
    assert (a**3).diff(0) == 3 * a * a
    assert (a * a + b).evaluate({0: 3, 1: 4}) == 13
    assert (a * a + b).degree() == 2 and not (a * a + b).is_homogeneous()
    assert SparsePoly() == 0


def test_poly_json_round_trip():
    p = permanent_sym(3) * 3 - SparsePoly.var(9)
    data = p.to_json()
    assert SparsePoly.from_json(data) == p
    assert all(isinstance(c, str) for _, c in data)


def test_identity_and_diagonal():
    ident = AffineMatrix([[int(i == j) for j in range(4)] for i in range(4)])
    assert matrix_det_sym(ident) == 1
    diag = AffineMatrix([[x(0, 0, 2), 0], [0, x(1, 1, 2)]])
    assert matrix_det_sym(diag) == x(0, 0, 2) * x(1, 1, 2)


def test_affine_entries_enforced():
    with pytest.raises(ValueError):
        AffineMatrix([[x(0, 0, 1) * x(0, 0, 1)]])


def test_sign_flip_identity_for_per2():
    a, b, c, d = (x(i, j, 2) for i in range(2) for j in range(2))
    assert matrix_det_sym(AffineMatrix([[a, -b], [c, d]])) == permanent_sym(2)


def test_literal_matrix_is_grenet_three():
    assert grenet_matrix(3) == literal_per3_matrix()
    assert matrix_det_sym(literal_per3_matrix()) == permanent_sym(3)


def test_grenet_one():
    a = grenet_matrix(1)
    assert a.size == 1 and a.entries[0][0] == x(0, 0, 1)


@pytest.mark.parametrize("m", range(1, 5))
def test_grenet_symbolic(m):
    raw = grenet_matrix(m)
    assert raw.size == 2**m - 1
    assert matrix_det_sym(raw) == permanent_sym(m) * (-1) ** (m - 1)
    assert verify_representation(grenet_matrix(m, normalize=True), permanent_sym(m))


@pytest.mark.parametrize("m", [5, 6])
def test_grenet_modular_against_ryser(m):
    a = grenet_matrix(m)
    rng = random.Random(m)
    for _ in range(20):
        point = [rng.randrange(PRIME_62) for _ in range(m * m)]
        rows = [point[i * m:(i + 1) * m] for i in range(m)]
        expected = (-1) ** (m - 1) * permanent_ryser(rows, PRIME_62) % PRIME_62
        assert matrix_eval_mod_p(a, point, PRIME_62) == expected
    assert verify_representation(grenet_matrix(m, True), permanent_sym(m), "modular", trials=10)


def test_verify_negative():
    ident = AffineMatrix([[1, 0], [0, 1]])
    assert not verify_representation(ident, permanent_sym(2))
    assert not verify_representation(ident, permanent_sym(2), "modular")
    # Grenet for even m without the sign fix represents -per_m
    assert not verify_representation(grenet_matrix(4), permanent_sym(4), "modular")
    assert verify_representation(grenet_matrix(4, normalize=True), permanent_sym(4), "modular", trials=10)


def test_schwartz_zippel_bound():
    assert schwartz_zippel_bound(7, 101, 2) == Fraction(49, 10201)


def test_ryser_matches_brute_force():
    rng = random.Random(1)
    for n in range(1, 6):
        a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert permanent_ryser(a) == permanent_brute(a) == permanent_sym(n).evaluate(matrix_point(a))


def test_affine_matrix_json_round_trip():
    a = grenet_matrix(3, normalize=True)
    assert AffineMatrix.from_json(a.to_json()) == a


def test_pad_polynomial():
    per2 = permanent_sym(2)
    assert pad_polynomial(per2, 2) == per2
    padded = pad_polynomial(per2, 3)
    assert padded == per2 * SparsePoly.var(4)
    assert padded.is_homogeneous() and padded.degree() == 3
    p7 = pad_polynomial(permanent_sym(3), 7)
    assert p7 == permanent_sym(3) * SparsePoly.var(9) ** 4
    assert p7.is_homogeneous() and p7.degree() == 7
    with pytest.raises(ValueError):
        pad_polynomial(per2, 1)
    with pytest.raises(ValueError):
        pad_polynomial(per2 + 1, 3)


def test_hessian_per2():
    h = hessian(permanent_sym(2), range(4))
    expected = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    assert h.at([0, 0, 0, 0]) == expected
    assert rank_at(h, [3, 1, 4, 1]) == 4


def test_hessian_square():
    assert hessian(SparsePoly.var(0) ** 2).at([5]) == [[2]]


def test_hessian_det3_entries_are_signed_minors():
    n = 3
    h = hessian(determinant_sym(n), range(n * n))
    rng = random.Random(3)
    xm = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
    values = h.at(matrix_point(xm))
    for (i, j), (k, l) in [((a // n, a % n), (b // n, b % n)) for a in range(9) for b in range(9)]:
        got = values[i * n + j][k * n + l]
        if i == k or j == l:
            assert got == 0
            continue
        rows = [r for r in range(n) if r not in (i, k)]
        cols = [c for c in range(n) if c not in (j, l)]
        minor = xm[rows[0]][cols[0]]
        # sign of the permutation that sends i->j, k->l and the rest in order
        perm = [None] * n
        perm[i], perm[k], perm[rows[0]] = j, l, cols[0]
        inversions = sum(1 for a, b in combinations(perm, 2) if a > b)
        assert got == (-1) ** inversions * minor


def test_rank_basics():
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[Fraction(1, 2), 1], [1, 2], [0, 1]]) == 2


def test_det_hessian_rank_frozen():
    # rank of H_det_3 at diag(1,1,0); regression value, bounded by 2n
    h = hessian(determinant_sym(3), range(9))
    r = rank_at(h, matrix_point(normal_form(3, [0, 1])))
    assert r == 6 <= 2 * 3


@pytest.mark.parametrize("n", range(2, 6))
def test_det_hessian_rank_depends_only_on_s(n):
    ranks = det_hessian_ranks(n)
    for s, values in ranks.items():
        assert len(set(values)) == 1
        assert values[0] <= 2 * n
    # regression values: rank 2n at corank one, 4 at corank two, 0 below
    expected = {s: 0 for s in range(n)}
    expected[n - 1] = 2 * n
    if n >= 2:
        expected[n - 2] = 4
    assert {s: v[0] for s, v in ranks.items()} == expected


@pytest.mark.parametrize("m", range(2, 7))
def test_mignon_ressayre(m):
    cert = mignon_ressayre_certificate(m)
    assert cert.permanent == 0
    assert cert.hessian_rank == m * m
    assert cert.implied_bound == -(-m * m // 2)
    assert cert.matrix[0][0] == 1 - m


def test_mignon_ressayre_known_bounds():
    assert mignon_ressayre_certificate(2).implied_bound == 2
    assert mignon_ressayre_certificate(3).implied_bound == 5
    assert mignon_ressayre_certificate(5).implied_bound == 13


def test_hessian_transform_identity():
    f = permanent_sym(2) + SparsePoly.var(0) ** 3
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    assert hessian_transform_check(f, ident, [0] * 4)


def test_hessian_transform_random():
    rng = random.Random(7)
    lin = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(4)]
    shift = [rng.randint(-3, 3) for _ in range(4)]
    assert hessian_transform_check(permanent_sym(2), lin, shift)


def test_hessian_transform_with_zero_columns():
    rng = random.Random(8)
    lin = [[rng.randint(-2, 2) for _ in range(4)] + [0, 0] for _ in range(9)]
    shift = [rng.randint(-2, 2) for _ in range(9)]
    assert hessian_transform_check(determinant_sym(3), lin, shift, trials=3)


def test_stabilizer():
    assert stabilizer_check(2, trials=5)
    assert stabilizer_check(3, trials=20)
    assert not stabilizer_check(3, trials=20, det_scale=2)


def test_det_int_matches_symbolic():
    rng = random.Random(5)
    for n in range(1, 6):
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det_int(a) == determinant_sym(n).evaluate(matrix_point(a))


def test_modulus_is_prime():
    # deterministic Miller-Rabin: these bases are exact below 3.3e24
    p = PRIME_62
    assert p == 2**62 - 57
    d, r = p - 1, 0
    while d % 2 == 0:
        d, r = d // 2, r + 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        y = pow(a, d, p)
        if y in (1, p - 1):
            continue
        for _ in range(r - 1):
            y = y * y % p
            if y == p - 1:
                break
        else:
            pytest.fail(f"{a} witnesses that {p} is composite")
