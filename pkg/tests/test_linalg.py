from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from x0models.arith import genus
from x0models.divisors import rhs_vector
from x0models.errors import InvalidInput, NoSolution
from x0models.fiber import build_edixhoven
from x0models.linalg import (
    RationalMatrix,
    add,
    dot,
    kernel_basis,
    mat_vec,
    quadratic_form,
    rank,
    scale,
    solve_singular,
    vector,
)

small = st.integers(-6, 6)


def test_identity_has_trivial_kernel():
    assert kernel_basis(RationalMatrix.identity(3)) == []


def test_zero_matrix_kernel_is_everything():
    basis = kernel_basis(RationalMatrix.zeros(2))
    assert len(basis) == 2
    assert rank(RationalMatrix.zeros(2)) == 0


def test_fibre_23_kernel_is_all_ones():
    fiber = build_edixhoven(23, 1, 1)
    assert kernel_basis(fiber.matrix) == [vector([1] * 5)]


def test_solve_identity_and_zero():
    v = vector([3, Fraction(-1, 2), 7])
    assert solve_singular(RationalMatrix.identity(3), v) == v
    assert solve_singular(RationalMatrix.zeros(3), [0, 0, 0]) == vector([0, 0, 0])


def test_solve_fibre_23_has_zero_residual():
    fiber = build_edixhoven(23, 1, 1)
    rhs = rhs_vector(fiber, 2, "0")
    x = solve_singular(fiber.matrix, rhs)
    assert mat_vec(fiber.matrix, x) == rhs


@pytest.mark.parametrize("t", [Fraction(-1), Fraction(1), Fraction(7, 3)])
def test_kernel_shift_still_solves(t):
    fiber = build_edixhoven(13, 3, 1)
    rhs = rhs_vector(fiber, genus(13**3), "inf")
    x = solve_singular(fiber.matrix, rhs)
    (w,) = kernel_basis(fiber.matrix)
    assert mat_vec(fiber.matrix, add(x, scale(t, w))) == rhs


def test_inconsistent_system_raises():
    m = RationalMatrix([[1, 1], [1, 1]])
    with pytest.raises(NoSolution):
        solve_singular(m, [1, 2])


def test_vector_helpers():
    assert dot((1, 0), (0, 1)) == 0
    v = vector([1, 2, 3])
    assert mat_vec(RationalMatrix.identity(3), v) == v
    assert scale(Fraction(1, 2), (2, 4)) == (1, 2)


def test_dimension_mismatch():
    with pytest.raises(InvalidInput):
        mat_vec(RationalMatrix.identity(2), (1, 2, 3))
    with pytest.raises(InvalidInput):
        RationalMatrix([[1, 2]])


def test_elimination_is_deterministic():
    fiber = build_edixhoven(37, 4, 1)
    rhs = rhs_vector(fiber, genus(37**4), "0")
    runs = {(tuple(kernel_basis(fiber.matrix)), solve_singular(fiber.matrix, rhs)) for _ in range(3)}
    assert len(runs) == 1


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_kernel_and_rank_against_numpy(rows):
    m = RationalMatrix(rows)
    basis = kernel_basis(m)
    assert len(basis) + rank(m) == m.dim
    assert rank(m) == np.linalg.matrix_rank(np.array(rows, dtype=float))
    for v in basis:
        assert all(x == 0 for x in mat_vec(m, v))
        assert all(x.denominator == 1 for x in v)
        assert next(x for x in v if x != 0) > 0


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(small, min_size=n, max_size=n))))
def test_solve_consistent_systems(data):
    rows, x0 = data
    m = RationalMatrix(rows)
    rhs = mat_vec(m, x0)
    x = solve_singular(m, rhs)
    assert mat_vec(m, x) == rhs


def test_quadratic_form_symmetry():
    m = RationalMatrix([[-2, 1], [1, -2]])
    assert quadratic_form(m, (1, 2), (3, 4)) == quadratic_form(m, (3, 4), (1, 2))
