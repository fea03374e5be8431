import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from quadpoisson.dhc import dhc_catalog
from quadpoisson.multivector import (MultiVec, curl, hamiltonian_bivector, is_k_exact,
                                     is_lp_exact, is_poisson, koszul_div, lp_coboundary,
                                     lp_exact_witness, schouten, slice_basis, slice_dim, wedge,
                                     NotPoisson)
from quadpoisson.polys import HomPoly
from strategies import hompolys, matrices, multivecs

XS = sympy.symbols("x0:3")


def to_sympy(f):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(v ** e for v, e in zip(XS, m))
               for m, c in f.terms.items())


def sign(p, q):
    return -1 if (p * q) % 2 else 1


@settings(max_examples=40)
@given(multivecs(), multivecs())
def test_wedge_graded_commutative(A, B):
    assert wedge(A, B) == wedge(B, A).scale(sign(A.p, B.p))


@settings(max_examples=40)
@given(multivecs(), multivecs())
def test_bracket_graded_antisymmetry(A, B):
    assume(A.p >= 1 or B.p >= 1)
    lhs = schouten(A, B)
    rhs = schouten(B, A).scale(-sign(A.p - 1, B.p - 1))
    assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(multivecs(max_d=1), multivecs(max_d=1), multivecs(max_d=1))
def test_graded_jacobi(A, B, C):
    a, b, c = A.p - 1, B.p - 1, C.p - 1
    total = schouten(A, schouten(B, C)).scale(sign(a, c)) \
        + schouten(B, schouten(C, A)).scale(sign(b, a)) \
        + schouten(C, schouten(A, B)).scale(sign(c, b))
    assert total.is_zero()


@settings(max_examples=25)
@given(matrices(3), matrices(3))
def test_linear_fields_bracket_is_matrix_commutator(a, b):
    from quadpoisson.srmi import lie_matrix
    Ya, Yb = MultiVec.linear_field(a), MultiVec.linear_field(b)
    assert schouten(Ya, Yb) == MultiVec.linear_field(lie_matrix(a, b))


@settings(max_examples=30)
@given(multivecs(p=1, d=2), hompolys(deg=2))
def test_vector_field_on_function_matches_sympy(X, f):
    got = schouten(X, MultiVec.function(f))
    want = sum(to_sympy(X.coeff((i,))) * sympy.diff(to_sympy(f), XS[i]) for i in range(3))
    got_expr = to_sympy(got.coeff(())) if got.coeffs else 0
    assert sympy.expand(got_expr - want) == 0


@settings(max_examples=40)
@given(multivecs(max_d=3))
def test_divergence_squares_to_zero(A):
    assume(A.p >= 2)
    assert koszul_div(koszul_div(A)).is_zero()


def _general_identity(P, Q):
    q = Q.p
    first = koszul_div(wedge(P, Q)).scale(sign(q, 1))
    second = wedge(koszul_div(P), Q) if P.p >= 1 else MultiVec(P.n, P.p + Q.p - 1, P.d + Q.d - 1)
    third = wedge(P, koszul_div(Q)).scale(sign(q, 1)) if Q.p >= 1 else second.scale(0)
    return first - second - third


DEGREE_PAIRS = [(p, q) for p in (1, 2, 3) for q in (1, 2, 3) if p + q <= 4]


@st.composite
def bracket_pairs(draw, even_second=False):
    pairs = [pq for pq in DEGREE_PAIRS if not even_second or pq[1] % 2 == 0]
    p, q = draw(st.sampled_from(pairs))
    P = draw(multivecs(p=p, d=draw(st.integers(1, 2))))
    Q = draw(multivecs(p=q, d=draw(st.integers(0, 2))))
    return P, Q


@settings(max_examples=60)
@given(bracket_pairs())
def test_bracket_from_divergence_all_degrees(pair):
    P, Q = pair
    assert schouten(P, Q) == _general_identity(P, Q)


@settings(max_examples=60)
@given(bracket_pairs(even_second=True))
def test_unsigned_divergence_formula_for_even_second_degree(pair):
    P, Q = pair
    unsigned = koszul_div(wedge(P, Q)) - wedge(koszul_div(P), Q) - wedge(P, koszul_div(Q))
    assert schouten(P, Q) == unsigned


def test_unsigned_divergence_formula_fails_for_odd_second_degree():
    x, y = HomPoly.var(3, 0), HomPoly.var(3, 1)
    P = MultiVec(3, 1, 1, {(0,): y})
    Q = MultiVec(3, 1, 1, {(1,): x})
    unsigned = koszul_div(wedge(P, Q)) - wedge(koszul_div(P), Q) - wedge(P, koszul_div(Q))
    assert schouten(P, Q) != unsigned
    assert schouten(P, Q) == _general_identity(P, Q)


@given(hompolys(deg=3))
def test_hamiltonian_bivectors_are_poisson_and_divergence_free(f):
    Pi = hamiltonian_bivector(f)
    assert is_poisson(Pi)
    assert curl(Pi).is_zero()


def test_catalog_curls_and_exactness():
    L1 = dhc_catalog(1, {"a": 1, "b": 1, "c": 1}).Lambda
    assert is_k_exact(L1)
    L3 = dhc_catalog(3, {"a": 1}).Lambda
    assert not is_k_exact(L3)
    X = lp_exact_witness(L3)
    if X is not None:
        assert schouten(L3, X) == L3
    assert is_lp_exact(L3) == (X is not None)


def test_lp_coboundary_rejects_non_poisson():
    x, y, z = (HomPoly.var(3, i) for i in range(3))
    L = MultiVec(3, 2, 2, {(1, 2): y * y, (0, 2): -(z * z), (0, 1): x * x})
    assert not is_poisson(L)
    with pytest.raises(NotPoisson):
        lp_coboundary(L, MultiVec.function(x))


def test_slice_basis_size_and_records_roundtrip():
    basis = slice_basis(3, 2, 2)
    assert len(basis) == slice_dim(3, 2, 2) == 18
    for C in basis[:5]:
        assert MultiVec.from_records(3, C.to_records(), p=2, d=2) == C
        assert MultiVec.from_vector(3, 2, 2, C.to_vector()) == C


def test_bracket_of_bivectors_matches_curl_formula():
    # For bivectors A, B in R^3 (as vector fields via the volume), the top component
    # of [A, B] is ±(A·curl B + B·curl A).
    L = dhc_catalog(9, {"a": 1}).Lambda
    W = dhc_catalog(3, {"a": 2}).Lambda

    def as_vector(M):
        return [to_sympy(M.coeff((1, 2))), -to_sympy(M.coeff((0, 2))), to_sympy(M.coeff((0, 1)))]

    def sym_curl(V):
        x, y, z = XS
        return [sympy.diff(V[2], y) - sympy.diff(V[1], z), sympy.diff(V[0], z) - sympy.diff(V[2], x),
                sympy.diff(V[1], x) - sympy.diff(V[0], y)]

    A, B = as_vector(L), as_vector(W)
    expr = sympy.expand(sum(a * c for a, c in zip(A, sym_curl(B))) +
                        sum(b * c for b, c in zip(B, sym_curl(A))))
    got = to_sympy(schouten(L, W).coeff((0, 1, 2)))
    assert sympy.expand(got - expr) == 0 or sympy.expand(got + expr) == 0
