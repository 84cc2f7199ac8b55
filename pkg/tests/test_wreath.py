import random

import pytest
from hypothesis import given, settings, strategies as st

from cartaninv.arith import theta
from cartaninv.laws import law_reports, random_unimodular
from cartaninv.linalg import ExactMatrix, diagonal_invariant_factors, snf
from cartaninv.partitions import count_tuples, enumerate_partitions
from cartaninv.wreath import (
    cartan_A_matrix,
    compositions,
    pmaps,
    sym_power,
    theta_diagonal_for,
    verify_prime_power_x,
    verify_scalar_x,
    wreath_pp,
    wreath_ss,
    wreath_ss_direct,
    x_matrix,
    x_matrix_conjugated,
    x_matrix_direct,
)

from oracles import sym_power_by_expansion

small = st.integers(-3, 3)


def matrices(max_dim=3):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def test_compositions_order():
    assert compositions(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert compositions(0, 3) == ((0, 0, 0),)
    assert compositions(1, 0) == ()


def test_pmap_counts():
    for k in range(1, 4):
        for w in range(6):
            assert len(pmaps(k, w)) == count_tuples(k, w)


def test_sym_power_examples():
    a = ExactMatrix([[1, 2], [3, 4]])
    assert sym_power(a, 1).tolist() == a.tolist()
    assert sym_power(a, 0).tolist() == [[1]]
    assert sym_power([[1, 1], [0, 1]], 2).tolist() == [[1, 2, 1], [0, 1, 1], [0, 0, 1]]


@settings(max_examples=40)
@given(matrices(3), st.integers(0, 4))
def test_sym_power_against_polynomial_expansion(rows, n):
    assert sym_power(rows, n).tolist() == sym_power_by_expansion(rows, n)


def composable_pair(max_dim=3):
    def grid(m, n):
        return st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
    dims = st.tuples(*(st.integers(1, max_dim) for _ in range(3)))
    return dims.flatmap(lambda d: st.tuples(grid(d[0], d[1]), grid(d[1], d[2])))


@settings(max_examples=30)
@given(composable_pair(), st.integers(0, 3))
def test_sym_power_is_functorial(pair, n):
    a, b = ExactMatrix(pair[0]), ExactMatrix(pair[1])
    assert sym_power(a @ b, n).tolist() == (sym_power(a, n) @ sym_power(b, n)).tolist()


def test_scalar_power_sum_form():
    for ell in range(4):
        for w in range(5):
            parts = enumerate_partitions(w)
            assert wreath_pp([[ell]], w).tolist() == ExactMatrix.diagonal(
                [ell ** len(l) for l in parts]).tolist()


def test_identity_and_degree_zero():
    for k in range(1, 4):
        for w in range(5):
            out = wreath_pp(ExactMatrix.identity(k), w)
            assert out.tolist() == ExactMatrix.identity(out.nrows).tolist()
    assert wreath_ss([[5, 7]], 0).tolist() == [[1]]


def test_schur_form_examples():
    assert snf(wreath_ss([[2]], 2)).factors == (1, 8)
    for k in range(1, 4):
        for w in range(4):
            out = wreath_ss(ExactMatrix.identity(k), w)
            assert out.tolist() == ExactMatrix.identity(out.nrows).tolist()


@settings(max_examples=25, deadline=None)
@given(matrices(2), st.integers(0, 3))
def test_conjugation_matches_direct_sum(rows, w):
    assert wreath_ss(rows, w) == wreath_ss_direct(rows, w)


def test_conjugation_matches_direct_sum_three_by_three():
    rng = random.Random(5)
    for w in range(4):
        a = ExactMatrix([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        assert wreath_ss(a, w) == wreath_ss_direct(a, w)
    a = ExactMatrix([[1, -1], [2, 1]])
    assert wreath_ss(a, 4) == wreath_ss_direct(a, 4)


@settings(max_examples=30, deadline=None)
@given(matrices(3), st.integers(0, 4))
def test_integrality(rows, w):
    assert wreath_ss(rows, w).is_integral()


def test_multiplicativity_on_fixed_examples():
    a = ExactMatrix([[1, 2, 0], [-1, 1, 3]])
    b = ExactMatrix([[2, 1], [0, 1], [1, -2]])
    for w in range(5):
        assert wreath_ss(a @ b, w) == wreath_ss(a, w) @ wreath_ss(b, w)


def test_equivalence_transport():
    rng = random.Random(2)
    for _ in range(10):
        a = ExactMatrix([[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
        b = random_unimodular(rng, 2) @ a @ random_unimodular(rng, 2)
        for w in range(4):
            assert snf(wreath_ss(a, w)).factors == snf(wreath_ss(b, w)).factors


def test_x_matrix_examples():
    for ell in range(5):
        assert x_matrix(ell, 0).matrix.tolist() == [[1]]
    for w in range(7):
        m = x_matrix(1, w).matrix
        assert m == ExactMatrix.identity(m.row_labels)
    assert snf(x_matrix(2, 2).matrix).factors == (1, 8)
    with pytest.raises(ValueError):
        x_matrix(-1, 2)


def test_x_matrix_two_routes_agree():
    for ell in (0, 1, 2, 3, 6):
        for w in range(9):
            assert x_matrix_direct(ell, w) == x_matrix_conjugated(ell, w)


def test_cartan_a_matrix():
    assert cartan_A_matrix(2).tolist() == [[2]]
    assert cartan_A_matrix(3).tolist() == [[2, 1], [1, 2]]
    for ell in range(2, 9):
        assert snf(cartan_A_matrix(ell)).factors == (1,) * (ell - 2) + (ell,)
    with pytest.raises(ValueError):
        cartan_A_matrix(1)


def test_scalar_invariant_factors():
    for ell in (0, 1, 2, 3, 4, 6):
        for w in range(6):
            assert verify_scalar_x(ell, w).passed
    for p, r in ((2, 1), (3, 1), (2, 2)):
        for w in range(6):
            assert verify_prime_power_x(p, r, w).passed


def test_sorted_theta_is_not_always_a_divisor_chain():
    # at ell = 6 the multiset {theta} has entries divisible by 2 and 3 independently,
    # so the invariant factors regroup them
    values = sorted(theta(lam, 6) for lam in enumerate_partitions(4))
    assert diagonal_invariant_factors(values) != values
    assert sorted(snf(x_matrix(6, 4).matrix).factors) == diagonal_invariant_factors(values)


def test_diagonal_input_invariants():
    a = ExactMatrix.diagonal([2, 3])
    for w in range(4):
        assert sorted(snf(wreath_ss(a, w)).factors) == diagonal_invariant_factors(
            theta_diagonal_for([2, 3], w))


def test_law_reports_pass():
    reports = law_reports(trials=10, seed=1)
    assert [r.check for r in reports] == ["wreath-multiplicative", "wreath-identity", "wreath-integral",
                                          "wreath-equivalence", "wreath-diagonal-blocks"]
    assert all(r.passed for r in reports), [r.line() for r in reports]
