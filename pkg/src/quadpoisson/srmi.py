"""
Commuting linear frames and the Poisson tensors they induce.

A frame is n commuting linear vector fields Y_1..Y_n, each given by a
constant matrix a with Y = Σ a[m][p] x_p ∂_m. The coefficient matrix
ell has ell[i][r] = coefficient of ∂_r in Y_i, and D = det ell.

Given a skew matrix alpha, the bivector Σ_{i<j} alpha[i][j] Y_i∧Y_j is
Poisson; its Hamiltonian data are X_i = Σ_j alpha[i][j] Y_j and δ_i = div X_i.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linalg import (SparseMatrix, RowSpace, dense_add, dense_commute,
                     dense_identity, dense_scale, dense_trace, nullspace, solve)
from .multivector import (MultiVec, elementary_matrix, schouten, slice_basis,
                          slice_dim, wedge, curl)
from .polys import HomPoly, apply_linvf, linvf_matrix, monomial_basis, poly_det


class NonCommuting(ValueError):
    def __init__(self, i, j):
        super().__init__("frame fields %d and %d do not commute" % (i + 1, j + 1))
        self.pair = (i, j)


class DegenerateFrame(ValueError):
    pass


def _frac(x):
    return Fraction(x) if isinstance(x, int) else x


def linear_field(a):
    return MultiVec.linear_field(a)


def lie_matrix(A, B):
    """Matrix of the Lie bracket [Y_A, Y_B] of two linear fields: BA − AB."""
    return dense_add(_mm(B, A), _mm(A, B), -1)


def _mm(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), 0) for j in range(n)] for i in range(n)]


class LinFrame:
    """n commuting linear vector fields with nonvanishing determinant."""

    def __init__(self, mats):
        n = len(mats)
        if n < 1:
            raise ValueError("empty frame")
        for a in mats:
            if len(a) != n or any(len(row) != n for row in a):
                raise ValueError("frame matrices must be %dx%d" % (n, n))
        self.n = n
        self.mats = [[[_frac(x) for x in row] for row in a] for a in mats]
        for i in range(n):
            for j in range(i + 1, n):
                if not dense_commute(self.mats[i], self.mats[j]):
                    raise NonCommuting(i, j)
        self.ell = [[HomPoly.linear_form(a[r]) for r in range(n)] for a in self.mats]
        self.D = poly_det(self.ell, n)
        if self.D.is_zero():
            raise DegenerateFrame("Y_1∧...∧Y_n vanishes identically")
        self.divs = [dense_trace(a) for a in self.mats]
        self.fields = [linear_field(a) for a in self.mats]
        for a, div in zip(self.mats, self.divs):
            if apply_linvf(a, self.D) != self.D.scale(div):
                raise DegenerateFrame("det is not a joint eigenvector (frame inconsistent)")
        self._minors = None

    @property
    def minors(self):
        if self._minors is None:
            self._minors = MinorTables(self.ell, self.n)
        return self._minors

    def wedge_fields(self, K):
        """Y_K = Y_{k1}∧...∧Y_{kp} in the ∂-frame (K zero-based)."""
        out = MultiVec.function(HomPoly.const(self.n, Fraction(1)))
        for k in K:
            out = wedge(out, self.fields[k])
        return out

    def joint_eigenspace(self):
        """Basis of {P in E_n : Y_i P = div(Y_i) P for all i}."""
        n = self.n
        N = len(monomial_basis(n, n))
        blocks = []
        for a, div in zip(self.mats, self.divs):
            M = linvf_matrix(a, n, n)
            blocks.append(M - SparseMatrix.identity(N).scale(div))
        stacked = _vstack(blocks)
        return [HomPoly.from_vector(n, n, v) for v in nullspace(stacked)]

    def factor_eigenvalues(self, D1):
        """For a factor D1 of D coprime to D/D1, the eigenvalues of D1 and D/D1.

        Returns (lam, mu) with lam_i + mu_i = div Y_i, or None if D1 is not a
        joint eigenvector."""
        from .polys import divides
        D2 = divides(D1, self.D)
        lam, mu = [], []
        for a, div in zip(self.mats, self.divs):
            y1 = apply_linvf(a, D1)
            if y1.is_zero():
                l = Fraction(0)
            elif y1.is_proportional(D1):
                m0 = next(iter(D1.terms))
                l = y1.terms[m0] / D1.terms[m0]
            else:
                return None
            lam.append(l)
            mu.append(div - l)
            if apply_linvf(a, D2) != D2.scale(div - l):
                return None
        return lam, mu


def _vstack(blocks):
    ncols = blocks[0].ncols
    cols = [dict() for _ in range(ncols)]
    off = 0
    for B in blocks:
        for j, col in enumerate(B.cols):
            for i, x in col.items():
                cols[j][off + i] = x
        off += B.nrows
    return SparseMatrix(off, ncols, cols)


def build_frame(mats):
    return LinFrame(mats)


class MinorTables:
    """Minors of ell and of its matrix of maximal minors.

    ``lower(I, J)`` deletes rows I and columns J; ``upper(I, J)`` keeps them.
    The ``cal_`` variants apply the same to the matrix of maximal minors.
    ``L`` holds unsigned maximal minors, ``Lbold`` the signed cofactors."""

    def __init__(self, ell, n):
        self.n = n
        self.ell = ell
        self.D = poly_det(ell, n)
        full = tuple(range(n))
        self.L = [[self._det(ell, _drop(full, (i,)), _drop(full, (j,))) for j in range(n)]
                  for i in range(n)]
        self.Lbold = [[self.L[i][j] if (i + j) % 2 == 0 else -self.L[i][j] for j in range(n)]
                      for i in range(n)]
        self._cache = {}

    def _det(self, M, rows, cols):
        key = (id(M), rows, cols)
        c = getattr(self, "_cache", None)
        if c is not None and key in c:
            return c[key]
        sub = [[M[r][q] for q in cols] for r in rows]
        val = poly_det(sub, self.n)
        if c is not None:
            c[key] = val
        return val

    def upper(self, I, J):
        return self._det(self.ell, tuple(I), tuple(J))

    def lower(self, I, J):
        full = tuple(range(self.n))
        return self._det(self.ell, _drop(full, I), _drop(full, J))

    def cal_upper(self, I, J):
        return self._det(self.L, tuple(I), tuple(J))

    def cal_lower(self, I, J):
        full = tuple(range(self.n))
        return self._det(self.L, _drop(full, I), _drop(full, J))


def _drop(full, I):
    s = set(I)
    return tuple(k for k in full if k not in s)


def verify_minor_lemma(tables, m):
    """Check cal_lower(I,J) = D^{n-m-1} upper(I,J) (0 <= m <= n-1) and
    cal_upper(I,J) = D^{m-1} lower(I,J) (1 <= m <= n) for all m-tuples."""
    n = tables.n
    D = tables.D
    ok = True
    for I in itertools.combinations(range(n), m):
        for J in itertools.combinations(range(n), m):
            if m <= n - 1:
                if tables.cal_lower(I, J) != D ** (n - m - 1) * tables.upper(I, J):
                    ok = False
            if m >= 1:
                if tables.cal_upper(I, J) != D ** (m - 1) * tables.lower(I, J):
                    ok = False
    return ok


def is_skew(alpha):
    n = len(alpha)
    return all(alpha[i][j] == -alpha[j][i] for i in range(n) for j in range(n))


def expand_srmi(alpha, frame):
    """Σ_{i<j} alpha[i][j] Y_i∧Y_j in the ∂-frame."""
    if not is_skew(alpha):
        raise ValueError("alpha must be skew-symmetric")
    n = frame.n
    total = MultiVec(n, 2, 2)
    for i in range(n):
        for j in range(i + 1, n):
            c = alpha[i][j]
            if c:
                total = total + wedge(frame.fields[i], frame.fields[j]).scale(c)
    return total


class SrmiStructure:
    """Λ = Σ alpha[i][j] Y_ij over a commuting frame, with its X_i and δ_i."""

    def __init__(self, frame, alpha):
        if not is_skew(alpha):
            raise ValueError("alpha must be skew-symmetric")
        n = frame.n
        self.frame = frame
        self.n = n
        self.alpha = [[_frac(x) for x in row] for row in alpha]
        self.Lambda = expand_srmi(self.alpha, frame)
        self.X = []
        for i in range(n):
            Xi = [[Fraction(0)] * n for _ in range(n)]
            for j in range(n):
                if self.alpha[i][j]:
                    Xi = dense_add(Xi, frame.mats[j], self.alpha[i][j])
            self.X.append(Xi)
        self.delta = [dense_trace(Xi) for Xi in self.X]

    @property
    def D(self):
        return self.frame.D

    def shifted_ops(self, r):
        """Matrices of X_i − δ_i id on E_r (monomial basis)."""
        N = len(monomial_basis(self.n, r))
        ident = SparseMatrix.identity(N)
        return [linvf_matrix(Xi, self.n, r) - ident.scale(d) for Xi, d in zip(self.X, self.delta)]

    def hamiltonian_ops(self, r):
        return [linvf_matrix(Xi, self.n, r) for Xi in self.X]

    def curl_from_data(self):
        """Σ_i δ_i Y_i."""
        total = MultiVec(self.n, 1, 1)
        for d, Y in zip(self.delta, self.frame.fields):
            if d:
                total = total + Y.scale(d)
        return total

    def is_k_exact(self):
        return all(d == 0 for d in self.delta)


def curl_formula_check(S):
    return curl(S.Lambda) == S.curl_from_data()


def stabilizer(L):
    """Basis (as constant matrices, Y = Σ a[m][p] x_p ∂_m) of {a : [Λ, Y_a] = 0}."""
    n = L.n
    if L.is_zero():
        return [elementary_matrix(n, m, p) for m in range(n) for p in range(n)]
    cols = []
    for m in range(n):
        for p in range(n):
            cols.append(schouten(L, linear_field(elementary_matrix(n, m, p))).to_vector())
    M = SparseMatrix(slice_dim(n, 2, L.d), n * n, cols)
    out = []
    for v in nullspace(M):
        a = [[Fraction(0)] * n for _ in range(n)]
        for j, c in v.items():
            m, p = divmod(j, n)
            a[m][p] = c
        out.append(a)
    return out


def j2_image(stab_basis, n):
    """Spanning bivectors Y_a∧Y_b for pairs of stabilizer elements."""
    fields = [linear_field(a) for a in stab_basis]
    out = []
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            w = wedge(fields[i], fields[j])
            if not w.is_zero():
                out.append(w)
    return out


def span_basis(multivecs):
    """An independent subfamily with the same span."""
    rs = RowSpace()
    out = []
    for m in multivecs:
        v = m.to_vector()
        if v and rs.add(v):
            out.append(m)
    return out


def same_span(A, B):
    va = [m.to_vector() for m in A]
    vb = [m.to_vector() for m in B]
    ra = _rank(va)
    return ra == _rank(vb) == _rank(va + vb)


def _rank(vs):
    rs = RowSpace()
    for v in vs:
        if v:
            rs.add(v)
    return rs.rank


def in_span(target, multivecs):
    rs = RowSpace()
    for m in multivecs:
        v = m.to_vector()
        if v:
            rs.add(v)
    return rs.contains(target.to_vector())


def j2_image_membership(L, stab_basis):
    """(Λ ∈ J²(g∧g), independent spanning set of the image)."""
    img = span_basis(j2_image(stab_basis, L.n))
    return in_span(L, img), img


def rmatrix_certificate(frame, alpha, L):
    """True when the frame commutes (checked by construction) and
    Σ alpha Y_ij reproduces L while each Y_i stabilizes L."""
    S = SrmiStructure(frame, alpha)
    if S.Lambda != L:
        return False
    return all(schouten(L, Y).is_zero() for Y in frame.fields)
