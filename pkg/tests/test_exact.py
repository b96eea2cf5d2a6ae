from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from postlie.exact import Matrix, Subspace, kernel_basis, rref, solve_affine

M = Matrix.from_rows


def test_rref_identity():
    r, rank = rref(Matrix.identity(2))
    assert r == Matrix.identity(2) and rank == 2


def test_rref_dependent_rows():
    assert rref(M([[1, 2], [2, 4]]))[1] == 1


def test_rref_permutation():
    r, rank = rref(M([[0, 1], [1, 0]]))
    assert r == Matrix.identity(2) and rank == 2


def test_kernel_one_relation():
    assert kernel_basis(M([[1, 1]])) == Subspace(2, [[1, -1]])


def test_kernel_identity_and_zero():
    assert kernel_basis(Matrix.identity(3)).dim == 0
    assert kernel_basis(Matrix.zeros(3, 3)).dim == 3


def test_solve_affine_examples():
    part, hom = solve_affine(Matrix.identity(2), [1, 2])
    assert list(part) == [1, 2] and hom.dim == 0
    part, hom = solve_affine(M([[1, 1]]), [0])
    assert list(part) == [0, 0] and hom == Subspace(2, [[1, -1]])
    assert solve_affine(M([[1], [0]]), [0, 1]) is None


def test_solve_affine_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_affine(Matrix.identity(2), [1, 2, 3])


def test_subspace_equality_is_structural():
    assert Subspace(2, [[2, 4]]) == Subspace(2, [[-1, -2]])
    assert Subspace(3, [[1, 0, 0], [0, 1, 0]]) == Subspace(3, [[1, 1, 0], [1, -1, 0]])


small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    return M([[draw(small) for _ in range(c)] for _ in range(r)])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rref(m)[1] + kernel_basis(m).dim == m.cols


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    once = rref(m)[0]
    assert rref(once)[0] == once


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in kernel_basis(m).basis:
        assert all(x == 0 for x in m @ v)


@given(st.fractions(), st.fractions())
def test_exact_arithmetic(a, b):
    assert (Fraction(a) + b) - b == a


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    sympy = pytest.importorskip("sympy")
    assert rref(m)[1] == sympy.Matrix(m.to_rows()).rank()
