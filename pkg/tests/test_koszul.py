from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadpoisson.dhc import dhc_catalog
from quadpoisson.koszul import (NonCommutingOps, NotTriangular, OperatorTuple,
                                complement_kernel_check, grassmann_homotopy_check,
                                homotopy_check, kernel_tower, koszul_cochain_matrix,
                                koszul_cohomology_dims, reduce_cocycle,
                                simultaneous_triangularize, tower_span_contains)
from quadpoisson.linalg import SparseMatrix, dense_inverse, dense_is_upper, dense_mul, nullspace, rank
from quadpoisson.scalars import I
from quadpoisson.verify import SpectrumAnalysis, random_commuting_pair


def test_grassmann_relations():
    for n in range(1, 6):
        assert grassmann_homotopy_check(n)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 6), st.integers(1, 3))
def test_koszul_homotopy_identity(seed, N, n):
    import random
    X, Y = random_commuting_pair(random.Random(seed), N, n)
    assert homotopy_check(X, Y)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 5))
def test_koszul_differential_squares_to_zero(seed, N):
    import random
    X, _ = random_commuting_pair(random.Random(seed), N, 3)
    for p in range(2):
        assert (koszul_cochain_matrix(X, p + 1) @ koszul_cochain_matrix(X, p)).is_zero()


def test_single_operator_cohomology_is_kernel_and_cokernel():
    A = SparseMatrix.from_dense([[0, 1, 0], [0, 0, 0], [0, 0, 2]])
    dims = koszul_cohomology_dims(OperatorTuple([A])).dims
    assert dims == [len(nullspace(A)), 3 - rank(A)]


def test_euler_characteristic_vanishes():
    import random
    X, _ = random_commuting_pair(random.Random(5), 4, 3)
    dims = koszul_cohomology_dims(X, with_reps=False).dims
    assert sum((-1) ** p * d for p, d in enumerate(dims)) == 0


def test_noncommuting_operators_rejected():
    A = SparseMatrix.from_dense([[0, 1], [0, 0]])
    B = SparseMatrix.from_dense([[0, 0], [1, 0]])
    with pytest.raises(NonCommutingOps):
        OperatorTuple([A, B])
    with pytest.raises(NonCommutingOps):
        simultaneous_triangularize([A.to_dense(), B.to_dense()])


def test_complement_kernel_for_semisimple_and_nilpotent():
    assert complement_kernel_check(OperatorTuple([SparseMatrix.from_dense([[1, 0], [0, 0]])]))
    assert not complement_kernel_check(OperatorTuple([SparseMatrix.from_dense([[0, 1], [0, 0]])]))


@st.composite
def commuting_rational_families(draw):
    # polynomials in a conjugated upper-triangular matrix: simultaneously triangularizable
    N = draw(st.integers(2, 4))
    T = [[F(draw(st.integers(-3, 3))) if j >= i else F(0) for j in range(N)] for i in range(N)]
    P = [[F(draw(st.integers(-2, 2))) for _ in range(N)] for _ in range(N)]
    for i in range(N):
        P[i][i] += 5
    Pi = dense_inverse(P)
    A = dense_mul(dense_mul(P, T), Pi)
    A2 = dense_mul(A, A)
    c = draw(st.integers(-2, 2))
    B = [[A2[i][j] + c * A[i][j] for j in range(N)] for i in range(N)]
    return [A, B]


@settings(max_examples=25, deadline=None)
@given(commuting_rational_families())
def test_triangularization_of_triangularizable_families(mats):
    rep = simultaneous_triangularize(mats)
    assert not rep.failed
    Ui = dense_inverse(rep.U)
    for a in mats:
        assert dense_is_upper(dense_mul(dense_mul(Ui, a), rep.U))


def test_rotation_needs_gaussian_rationals():
    rot = [[F(0), F(-1)], [F(1), F(0)]]
    rep = simultaneous_triangularize([rot])
    assert not rep.failed
    assert any(c == I or c == -I for row in rep.b[0] for c in row)


def test_kernel_tower_rejects_non_triangular():
    A = SparseMatrix.from_dense([[0, 0], [1, 0]])
    with pytest.raises(NotTriangular):
        kernel_tower(OperatorTuple([A]))


def test_rotation_class_kernel_at_degree_three():
    S = dhc_catalog(2, {"a": 1, "b": 0}).srmi_part
    an = SpectrumAnalysis(S, 3)
    assert (an.tower.mu, an.tower.s) == (1, 1)
    assert all(dense_is_upper(b) for b in an.report.b)
    assert all(b[i][j] == 0 for b in an.report.b for i in range(3) for j in range(3) if i != j)


def test_shear_class_tower_at_degree_three():
    S = dhc_catalog(3, {"a": 0}).srmi_part
    an = SpectrumAnalysis(S, 3)
    assert (an.tower.mu, an.tower.s) == (3, 3)
    assert an.tower.kernel_dims == [1, 1, 1]


@pytest.mark.parametrize("idx,params,r", [(3, {"a": 0}, 3), (3, {"a": 1}, 4), (9, {"a": 1}, 3),
                                          (2, {"a": 1, "b": 0}, 3)])
def test_cocycles_reduce_into_tower_span(idx, params, r):
    S = dhc_catalog(idx, params).srmi_part
    an = SpectrumAnalysis(S, r)
    ops = an.ops
    kc = koszul_cohomology_dims(ops)
    for p in range(1, S.n + 1):
        for C in kc.cocycles[p][:4]:
            C1, B = reduce_cocycle(ops, an.tower, C, p)
            assert tower_span_contains(an.tower, ops.N, S.n, p, C1)
            diff = dict(C)
            for k, v in koszul_cochain_matrix(ops, p - 1).apply(B).items():
                diff[k] = diff.get(k, 0) - v
            assert {k: v for k, v in diff.items() if v} == {k: v for k, v in C1.items() if v}


@pytest.mark.parametrize("idx,params", [(2, {"a": 1, "b": 0}), (3, {"a": 1}), (9, {"a": 1}),
                                        (7, {"a": 1, "b": 2, "c": 1})])
def test_spectrum_formula_and_crosscheck(idx, params):
    S = dhc_catalog(idx, params).srmi_part
    for r in range(5):
        an = SpectrumAnalysis(S, r)
        assert an.crosscheck()
        assert an.spectrum_matches()


def test_degree_zero_spectrum_is_minus_divergences():
    S = dhc_catalog(3, {"a": 1}).srmi_part
    an = SpectrumAnalysis(S, 0)
    assert set(an.spectrum) == {tuple(-d for d in S.delta)}
