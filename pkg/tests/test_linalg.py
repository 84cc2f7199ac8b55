import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cartaninv.linalg import (
    ExactMatrix,
    MatrixParseError,
    SingularMatrixError,
    determinant,
    diagonal_invariant_factors,
    exact,
    format_matrix,
    hnf_row,
    integer_kernel,
    invert,
    p_local_unimodular,
    p_part_of_snf,
    p_row_equivalent,
    parse_matrix,
    rank,
    snf,
    valuation,
)

small_ints = st.integers(-6, 6)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)))


def random_unimodular(rng, n, steps=20):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n > 1:
            i, j = rng.sample(range(n), 2)
            c = rng.randint(-3, 3)
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        if rng.random() < 0.2:
            k = rng.randrange(n)
            m[k] = [-a for a in m[k]]
    return ExactMatrix(m)


def test_entries_are_exact():
    assert exact(Fraction(4, 2)) == 2 and isinstance(exact(Fraction(4, 2)), int)
    assert exact("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        exact(0.5)
    with pytest.raises(TypeError):
        exact(True)


def test_shape_and_labels():
    m = ExactMatrix([[1, 2], [3, 4]], ["a", "b"], ["x", "y"])
    assert m.shape == (2, 2)
    assert m.entry("b", "x") == 3
    assert m.T.entry("x", "b") == 3
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        ExactMatrix([[1]], ["a", "b"])


def test_snf_examples():
    assert snf(ExactMatrix.identity(4)).factors == (1, 1, 1, 1)
    assert snf([[2, 1], [0, 4]]).factors == (1, 8)
    assert snf([[2, 0], [0, 2]]).factors == (2, 2)
    res = snf([[2, 4], [1, 2]])
    assert res.rank == 1 and res.factors == (1, 0)


@settings(max_examples=80)
@given(int_matrices(6, 6))
def test_snf_divisibility_chain(rows):
    res = snf(rows)
    nz = res.nonzero()
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(d == 0 for d in res.factors[res.rank:])
    assert res.rank == rank(ExactMatrix(rows))


@settings(max_examples=80)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_snf_product_is_abs_det(rows):
    d = determinant(ExactMatrix(rows))
    res = snf(rows)
    prod = 1
    for f in res.factors:
        prod *= f
    assert prod == abs(d)


def test_snf_invariant_under_unimodular_changes():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 12)
        m = rng.randint(1, 12)
        a = ExactMatrix([[rng.randint(-5, 5) for _ in range(m)] for _ in range(n)])
        b = random_unimodular(rng, n) @ a @ random_unimodular(rng, m)
        assert snf(a).factors == snf(b).factors


def test_hnf_examples():
    assert hnf_row([[2], [3]]).tolist() == [[1]]
    assert hnf_row(ExactMatrix.identity(3)) == ExactMatrix.identity(3).relabel(row_labels=range(3))
    assert hnf_row([[0, 0]]).shape == (0, 2)


def test_hnf_detects_equal_row_spaces():
    rng = random.Random(3)
    for _ in range(30):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = ExactMatrix([[rng.randint(-4, 4) for _ in range(m)] for _ in range(n)])
        b = random_unimodular(rng, n) @ a
        assert hnf_row(a) == hnf_row(b)


def test_kernel_examples():
    assert integer_kernel([[1], [1]]).tolist() in ([[1, -1]], [[-1, 1]])
    assert integer_kernel(ExactMatrix.identity(3)).nrows == 0
    assert integer_kernel([[2], [4]]).tolist() in ([[2, -1]], [[-2, 1]])


@settings(max_examples=60)
@given(int_matrices(6, 4))
def test_kernel_is_saturated_and_complete(rows):
    a = ExactMatrix(rows)
    k = integer_kernel(a)
    assert k.nrows == a.nrows - rank(a)
    if k.nrows:
        assert all(x == 0 for r in (k @ a).rows for x in r)
        assert set(snf(k).factors) == {1}


def test_invert_examples():
    assert invert(ExactMatrix.identity(3)) == ExactMatrix.identity(3)
    assert invert([[1, 1], [0, 2]]).tolist() == [[1, Fraction(-1, 2)], [0, Fraction(1, 2)]]
    assert invert(ExactMatrix.diagonal([2, 3])).tolist() == [[Fraction(1, 2), 0], [0, Fraction(1, 3)]]
    with pytest.raises(SingularMatrixError):
        invert([[1, 2], [2, 4]])


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_round_trip(rows):
    a = ExactMatrix(rows)
    if determinant(a) != 0:
        assert a @ invert(a) == ExactMatrix.identity(len(rows))


def test_local_predicates():
    assert p_local_unimodular(ExactMatrix.identity(2), 2)
    assert p_local_unimodular([[Fraction(1, 3)]], 2)
    assert not p_local_unimodular([[2]], 2)
    assert not p_local_unimodular([[0]], 2)
    a = ExactMatrix([[1, 1], [0, 2]])
    assert p_row_equivalent(a, a, 2)
    assert p_row_equivalent(a, [[1, 1], [0, Fraction(2, 3)]], 2)
    assert not p_row_equivalent([[1]], [[2]], 2)
    with pytest.raises(ValueError):
        p_row_equivalent([[1]], ExactMatrix.identity(2), 2)


def test_row_equivalence_is_an_equivalence():
    rng = random.Random(11)
    mats = []
    while len(mats) < 12:
        a = ExactMatrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        if determinant(a):
            mats.append(a)
    for a in mats:
        assert p_row_equivalent(a, a, 2)
        for b in mats:
            assert p_row_equivalent(a, b, 2) == p_row_equivalent(b, a, 2)
            for c in mats:
                if p_row_equivalent(a, b, 2) and p_row_equivalent(b, c, 2):
                    assert p_row_equivalent(a, c, 2)


def test_p_parts():
    assert p_part_of_snf(ExactMatrix.identity(3), 2) == [0, 0, 0]
    assert p_part_of_snf([[2, 1], [0, 4]], 2) == [0, 3]
    assert p_part_of_snf([[6]], 3) == [1]
    # denominators prime to p are harmless
    assert p_part_of_snf([[Fraction(4, 3)]], 2) == [2]
    with pytest.raises(ValueError):
        p_part_of_snf([[Fraction(1, 2)]], 2)
    with pytest.raises(SingularMatrixError):
        p_part_of_snf([[1, 1], [1, 1]], 2)


def test_valuation():
    assert valuation(Fraction(12, 5), 2) == 2
    assert valuation(Fraction(3, 8), 2) == -3
    assert valuation(0, 2) == float("inf")


def test_diagonal_invariant_factors():
    assert diagonal_invariant_factors([2, 3]) == [1, 6]
    assert diagonal_invariant_factors([4, 2, 0]) == [0, 2, 4]
    assert diagonal_invariant_factors([]) == []


def test_parse_matrix():
    m = parse_matrix("1 2\n\n3/4, -5\n")
    assert m.tolist() == [[1, 2], [Fraction(3, 4), -5]]
    assert parse_matrix(format_matrix(m)) == m
    with pytest.raises(MatrixParseError) as err:
        parse_matrix("1 2\n3 x\n")
    assert err.value.line == 2
    with pytest.raises(MatrixParseError):
        parse_matrix("1 2\n3\n")
    with pytest.raises(MatrixParseError):
        parse_matrix("1/0\n")
