"""
Polyvector fields on R^n with homogeneous polynomial coefficients.

A p-vector is stored as ``{(k1<...<kp): HomPoly}`` in the canonical frame
∂_{k1}∧...∧∂_{kp} (indices zero-based internally, one-based on the wire).
Computations use the odd-variable picture: ∂_k plays the role of an odd
coordinate θ_k, and both the Schouten–Nijenhuis bracket and the Koszul
divergence are written with right θ-derivatives.

Sign conventions (fixed, and tested):

* [X, f] = X(f),  [X, Y] = Lie bracket, [X∧Y, f] = Y(f) X − X(f) Y;
* δ(f ∂_K) = Σ_s (−1)^{p−s} ∂_{k_s} f ∂_{K∖k_s}, so δ(X) = div X and in R^3
  δ of a bivector is the ordinary curl of its associated vector field.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .linalg import SparseMatrix, solve
from .polys import HomPoly, monomial_basis, monomial_index


class NotPoisson(ValueError):
    pass


@lru_cache(maxsize=None)
def wedge_tuples(n, p):
    """Strictly increasing p-tuples of range(n), in lexicographic order."""
    return tuple(itertools.combinations(range(n), p))


@lru_cache(maxsize=None)
def wedge_tuple_index(n, p):
    return {t: i for i, t in enumerate(wedge_tuples(n, p))}


@lru_cache(maxsize=4096)
def merge_sign(I, J):
    """(sign, sorted tuple) with θ_I θ_J = sign θ_{sorted}; sign 0 on overlap."""
    if set(I) & set(J):
        return 0, None
    seq = list(I) + list(J)
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def _right_theta_deriv(K, i):
    """Right derivative ∂/∂θ_i of θ_K: (sign, K without i), sign 0 if i ∉ K."""
    if i not in K:
        return 0, None
    s = K.index(i)
    sign = -1 if (len(K) - 1 - s) % 2 else 1
    return sign, K[:s] + K[s + 1:]


class MultiVec:
    """A p-vector field whose coefficients all have degree d."""

    __slots__ = ("n", "p", "d", "coeffs")

    def __init__(self, n, p, d, coeffs=None):
        if not 0 <= p <= n:
            raise ValueError("wedge degree %d out of range for n=%d" % (p, n))
        self.n = n
        self.p = p
        self.d = d
        c = {}
        if coeffs:
            for K, f in coeffs.items():
                K = tuple(K)
                if len(K) != p or any(K[a] >= K[a + 1] for a in range(p - 1)):
                    raise ValueError("bad index tuple %r" % (K,))
                if f.is_zero():
                    continue
                if f.deg != d or f.n != n:
                    raise ValueError("coefficient degree mismatch at %r" % (K,))
                c[K] = f
        self.coeffs = c

    @classmethod
    def function(cls, f):
        return cls(f.n, 0, f.deg, {(): f})

    @classmethod
    def basis_element(cls, n, K, f):
        return cls(n, len(K), f.deg, {tuple(K): f})

    @classmethod
    def linear_field(cls, a):
        """Σ a[m][p] x_p ∂_m for a constant matrix a."""
        n = len(a)
        coeffs = {}
        for m in range(n):
            f = HomPoly.linear_form(a[m])
            if f:
                coeffs[(m,)] = f
        return cls(n, 1, 1, coeffs)

    @classmethod
    def zero(cls, n, p, d=0):
        return cls(n, p, d)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, MultiVec):
            return NotImplemented
        if self.n != other.n:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.p, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if not isinstance(other, MultiVec):
            if other == 0:
                return self
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        if (self.n, self.p, self.d) != (other.n, other.p, other.d):
            raise ValueError("adding multivectors of different type")
        c = dict(self.coeffs)
        for K, f in other.coeffs.items():
            g = c.get(K)
            s = f if g is None else g + f
            if s.is_zero():
                c.pop(K, None)
            else:
                c[K] = s
        return MultiVec(self.n, self.p, self.d, c)

    __radd__ = __add__

    def __neg__(self):
        return MultiVec(self.n, self.p, self.d, {K: -f for K, f in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return MultiVec(self.n, self.p, self.d, {K: f.scale(c) for K, f in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def times_function(self, g):
        return MultiVec(self.n, self.p, self.d + g.deg,
                        {K: f * g for K, f in self.coeffs.items()})

    def coeff(self, K):
        return self.coeffs.get(tuple(K), HomPoly(self.n, self.d))

    def map_coeffs(self, fn, d=None):
        d = self.d if d is None else d
        return MultiVec(self.n, self.p, d, {K: fn(f) for K, f in self.coeffs.items()})

    # slice coordinates: index = tuple_index * N_d + monomial_index

    def to_vector(self):
        tidx = wedge_tuple_index(self.n, self.p)
        midx = monomial_index(self.n, self.d)
        N = len(midx)
        out = {}
        for K, f in self.coeffs.items():
            base = tidx[K] * N
            for m, c in f.terms.items():
                out[base + midx[m]] = c
        return out

    @classmethod
    def from_vector(cls, n, p, d, vec):
        tuples = wedge_tuples(n, p)
        basis = monomial_basis(n, d)
        N = len(basis)
        terms = {}
        for i, c in vec.items():
            if c:
                t, m = divmod(i, N)
                terms.setdefault(tuples[t], {})[basis[m]] = c
        return cls(n, p, d, {K: HomPoly(n, d, t, check=False) for K, t in terms.items()})

    # wire format

    def to_records(self):
        return [{"indices": [k + 1 for k in K], "poly": f.to_literal()}
                for K, f in sorted(self.coeffs.items())]

    @classmethod
    def from_records(cls, n, records, p=None, d=None):
        coeffs = {}
        for rec in records:
            K = tuple(k - 1 for k in rec["indices"])
            f = HomPoly.from_literal(rec["poly"], n=n, deg=d) if d is not None else \
                HomPoly.from_literal(rec["poly"], n=n)
            coeffs[K] = f
            if p is None:
                p = len(K)
            if d is None:
                d = f.deg
        if p is None:
            raise ValueError("cannot infer wedge degree of an empty record list")
        return cls(n, p, 0 if d is None else d, coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for K, f in sorted(self.coeffs.items()):
            frame = "d" + "".join(str(k + 1) for k in K) if K else ""
            poly = str(f)
            if frame:
                parts.append("(%s)*%s" % (poly, frame))
            else:
                parts.append(poly)
        return " + ".join(parts)

    __repr__ = lambda self: "MultiVec(%s)" % self


def slice_dim(n, p, d):
    from math import comb
    if d < 0:
        return 0
    return comb(n, p) * comb(d + n - 1, n - 1)


def slice_basis(n, p, d):
    """Monomial basis elements of the (p, d) slice in coordinate order."""
    out = []
    for K in wedge_tuples(n, p):
        for m in monomial_basis(n, d):
            out.append(MultiVec(n, p, d, {K: HomPoly(n, d, {m: 1}, check=False)}))
    return out


def wedge(A, B):
    if A.n != B.n:
        raise ValueError("dimension mismatch")
    n = A.n
    p = A.p + B.p
    d = A.d + B.d
    if p > n:
        return MultiVec(n, min(p, n), d)
    out = {}
    for I, f in A.coeffs.items():
        for J, g in B.coeffs.items():
            sign, K = merge_sign(I, J)
            if not sign:
                continue
            term = f * g
            if sign < 0:
                term = -term
            prev = out.get(K)
            out[K] = term if prev is None else prev + term
    return MultiVec(n, p, d, out)


def _theta_deriv(A, i):
    """A ←∂/∂θ_i, a (p−1)-vector."""
    out = {}
    for K, f in A.coeffs.items():
        sign, R = _right_theta_deriv(K, i)
        if not sign:
            continue
        term = f if sign > 0 else -f
        prev = out.get(R)
        out[R] = term if prev is None else prev + term
    return MultiVec(A.n, A.p - 1, A.d, out)


def _x_deriv(A, i):
    return MultiVec(A.n, A.p, max(A.d - 1, 0),
                    {K: f.deriv(i) for K, f in A.coeffs.items()})


def schouten(P, Q):
    """Schouten–Nijenhuis bracket [P, Q], a (p+q−1)-vector.

    [P,Q] = Σ_i (P←∂_{θ_i})∧(∂_{x_i}Q) − (−1)^{(p−1)(q−1)} (Q←∂_{θ_i})∧(∂_{x_i}P)
    """
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    n = P.n
    p, q = P.p, Q.p
    deg = p + q - 1
    dcoef = P.d + Q.d - 1
    if deg < 0 or deg > n:
        return MultiVec(n, max(0, min(deg, n)), max(dcoef, 0))
    total = MultiVec(n, deg, max(dcoef, 0))
    sign2 = -1 if ((p - 1) * (q - 1)) % 2 == 0 else 1
    for i in range(n):
        if p >= 1 and Q.d >= 1:
            a = _theta_deriv(P, i)
            if a:
                b = _x_deriv(Q, i)
                if b:
                    total = total + wedge(a, b)
        if q >= 1 and P.d >= 1:
            a = _theta_deriv(Q, i)
            if a:
                b = _x_deriv(P, i)
                if b:
                    w = wedge(a, b)
                    total = total + (w if sign2 > 0 else -w)
    return total


def koszul_div(A):
    """δ(A) = Σ_i ∂_{x_i}(A ←∂_{θ_i}); wedge degree p−1, coefficient degree d−1."""
    if A.p < 1:
        raise ValueError("divergence of a function is undefined")
    n = A.n
    out = MultiVec(n, A.p - 1, max(A.d - 1, 0))
    if A.d == 0:
        return out
    for i in range(n):
        a = _theta_deriv(A, i)
        if a:
            out = out + _x_deriv(a, i)
    return out


def curl(L):
    if L.p != 2:
        raise ValueError("curl is defined for bivectors")
    return koszul_div(L)


def is_poisson(L):
    return schouten(L, L).is_zero()


def lp_coboundary(L, C, check=True):
    """∂_Λ C = [Λ, C]."""
    if check and not is_poisson(L):
        raise NotPoisson("[Λ, Λ] ≠ 0")
    return schouten(L, C)


def is_k_exact(L):
    """K(Λ) = 0; equivalent to K-exactness for n ≥ 3."""
    if L.n < 3:
        raise ValueError("K-exactness criterion needs n >= 3")
    return curl(L).is_zero()


def elementary_matrix(n, m, p, c=1):
    a = [[0] * n for _ in range(n)]
    a[m][p] = c
    return a


def lp_exact_witness(L):
    """A linear vector field X with [Λ, X] = Λ, or None."""
    n = L.n
    fields = []
    for m in range(n):
        for p in range(n):
            fields.append(MultiVec.linear_field(elementary_matrix(n, m, p)))
    cols = [schouten(L, X).to_vector() for X in fields]
    dim = slice_dim(n, L.p, L.d)
    M = SparseMatrix(dim, len(cols), cols)
    sol = solve(M, L.to_vector())
    if sol is None:
        return None
    a = [[Fraction(0)] * n for _ in range(n)]
    for j, c in sol.items():
        m, p = divmod(j, n)
        a[m][p] = c
    return MultiVec.linear_field(a)


def is_lp_exact(L):
    return lp_exact_witness(L) is not None


def hamiltonian_bivector(f):
    """Π_f = ∂1f ∂23 + ∂2f ∂31 + ∂3f ∂12 on R^3 (the K-exact structures)."""
    if f.n != 3:
        raise ValueError("Π_f is defined on R^3")
    f1, f2, f3 = f.deriv(0), f.deriv(1), f.deriv(2)
    return MultiVec(3, 2, f.deg - 1, {(1, 2): f1, (0, 2): -f2, (0, 1): f3})


def boundary_matrix(L, p, d):
    """Matrix of ∂_Λ from the (p, d) slice to the (p+1, d + deg Λ − 1) slice."""
    n = L.n
    shift = L.d - 1
    src = slice_basis(n, p, d)
    cols = [schouten(L, C).to_vector() for C in src] if p < n else [{} for _ in src]
    tgt_dim = slice_dim(n, p + 1, d + shift) if p < n else 0
    return SparseMatrix(tgt_dim, len(src), cols)
