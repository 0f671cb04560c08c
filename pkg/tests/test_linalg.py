import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverhom.errors import FieldUnsupported
from quiverhom.linalg import RATIONALS, FieldSpec, Matrix, kernel_basis, rank


def M(rows):
    return Matrix.from_int_rows(RATIONALS, rows)


def test_rank_identity():
    assert rank(Matrix.identity(RATIONALS, 2)) == 2


def test_rank_zero_matrix():
    assert rank(Matrix.zeros(RATIONALS, 3, 4)) == 0


def test_rank_dependent_rows():
    # hand elimination: row2 = 2*row1
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_kernel_of_identity_is_empty():
    assert kernel_basis(Matrix.identity(RATIONALS, 2)) == []


def test_kernel_of_zero_map():
    assert kernel_basis(Matrix.zeros(RATIONALS, 2, 3)) == [
        (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


def test_kernel_canonical_form():
    # v.m = 0 solved by (-2, 1); pivot-normalized echelon form is (1, -1/2)
    assert kernel_basis(M([[1, 2], [2, 4]])) == [(Fraction(1), Fraction(-1, 2))]


def test_kernel_rows_annihilate():
    rng = random.Random(5)
    for _ in range(50):
        r, c = rng.randint(0, 5), rng.randint(0, 5)
        m = M([[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)])
        ker = m.kernel_basis()
        assert ker.rows == m.rows - m.rank()
        assert (ker * m).is_zero()


def test_rank_transpose_agrees():
    rng = random.Random(7)
    for _ in range(200):
        r, c = rng.randint(0, 5), rng.randint(0, 5)
        m = M([[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)])
        assert m.rank() == m.transpose().rank()


def test_rank_of_product_bounded():
    rng = random.Random(11)
    for _ in range(100):
        r, k, c = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
        a = M([[rng.randint(-3, 3) for _ in range(k)] for _ in range(r)])
        b = M([[rng.randint(-3, 3) for _ in range(c)] for _ in range(k)])
        assert (a * b).rank() <= min(a.rank(), b.rank())


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                min_size=1, max_size=5))
def test_rref_idempotent(rows):
    m = M(rows)
    r1, p1 = m.rref()
    r2, p2 = r1.rref()
    assert r1 == r2 and p1 == p2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4),
                min_size=2, max_size=4))
def test_solve_left_consistency(rows):
    m = M(rows)
    # rhs taken from the row space must be solvable and exact
    combo = [sum(Fraction(i + 1) * Fraction(x) for i, x in enumerate(col))
             for col in zip(*m.entries)]
    rhs = Matrix(RATIONALS, 1, m.cols, [combo])
    sol = m.solve_left(rhs)
    assert sol is not None
    assert sol * m == rhs


def test_solve_left_inconsistent():
    m = M([[1, 0], [2, 0]])
    rhs = Matrix(RATIONALS, 1, 2, [[Fraction(0), Fraction(1)]])
    assert m.solve_left(rhs) is None


def test_prime_field_arithmetic():
    f = FieldSpec("prime", 7)
    m = Matrix.from_int_rows(f, [[2, 3], [4, 6]])
    assert m.rank() == 1
    assert m.kernel_basis().entries == ((1, 3),)  # 2 + 3*4 = 14 = 0 mod 7


def test_prime_field_floor_rejected():
    with pytest.raises((FieldUnsupported, ValueError)):
        FieldSpec("prime", 4)
    with pytest.raises(FieldUnsupported):
        FieldSpec("prime", 2)


def test_scalar_serialization():
    assert RATIONALS.format_scalar(Fraction(-1, 2)) == "-1/2"
    assert RATIONALS.format_scalar(Fraction(3)) == "3"
    assert RATIONALS.parse_scalar("-1/2") == Fraction(-1, 2)
    f = FieldSpec("prime", 101)
    assert f.format_scalar(-1) == "100"
    assert f.parse_scalar("102") == 1
