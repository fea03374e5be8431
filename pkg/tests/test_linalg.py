from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quadpoisson.linalg import (RowSpace, SparseMatrix, cohomology_dims, dense_inverse,
                                dense_mul, dense_identity, image_basis, nullspace, rank, solve)
from strategies import small_ints


@st.composite
def sparse_matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = [[Fraction(draw(st.sampled_from([0, 0, 0] + list(range(-3, 4))))) for _ in range(c)]
            for _ in range(r)]
    return SparseMatrix.from_dense(rows)


@settings(max_examples=60)
@given(sparse_matrices())
def test_rank_matches_sympy_and_rank_nullity(M):
    ker = nullspace(M)
    assert rank(M) == sympy.Matrix(M.to_dense()).rank()
    assert rank(M) + len(ker) == M.ncols
    assert all(not M.apply(v) for v in ker)
    assert len(image_basis(M)) == rank(M)


@settings(max_examples=60)
@given(sparse_matrices(), st.lists(small_ints, min_size=6, max_size=6))
def test_solve_consistent_systems(M, xs):
    x = {j: Fraction(v) for j, v in enumerate(xs[:M.ncols]) if v}
    b = M.apply(x)
    sol = solve(M, b)
    assert sol is not None and M.apply(sol) == b


def test_solve_reports_inconsistency():
    M = SparseMatrix.from_dense([[1, 0], [0, 0]])
    assert solve(M, {1: Fraction(1)}) is None


def test_rowspace_priority_controls_pivots():
    rs = RowSpace(priority=lambda k: -k)
    rs.add({0: Fraction(1), 2: Fraction(1)})
    assert rs.pivots == {2}
    rs2 = RowSpace()
    rs2.add({0: Fraction(1), 2: Fraction(1)})
    assert rs2.pivots == {0}


def test_rowspace_coordinates_by_tag():
    rs = RowSpace(track=True)
    rs.add({0: Fraction(1), 1: Fraction(1)}, tag="a")
    rs.add({1: Fraction(1)}, tag="b")
    assert rs.coordinates({0: Fraction(2), 1: Fraction(5)}) == {"a": 2, "b": 3}


def test_cohomology_of_short_complex():
    # 0 -> Q -> Q^2 -> Q -> 0 with d0 = (1, 1)^T and d1 = (1, -1)
    d0 = SparseMatrix.from_dense([[1], [1]])
    d1 = SparseMatrix.from_dense([[1, -1]])
    assert cohomology_dims([1, 2, 1], [d0, d1, None]) == [0, 0, 0]


@given(st.lists(small_ints, min_size=4, max_size=4))
def test_dense_inverse(vals):
    A = [[Fraction(vals[0]), Fraction(vals[1])], [Fraction(vals[2]), Fraction(vals[3])]]
    if A[0][0] * A[1][1] - A[0][1] * A[1][0] == 0:
        return
    assert dense_mul(A, dense_inverse(A)) == dense_identity(2)
