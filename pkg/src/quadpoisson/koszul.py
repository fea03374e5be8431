"""
Koszul complexes of commuting operators on a finite-dimensional space.

The tensor space E ⊗ ∧^p is indexed tuple-major: coordinate
``tuple_index * N + basis_index``, the same layout as multivector slices,
so a Koszul cochain over E_r is literally the numerator vector of a
potential cochain.

Spectral tools (triangularization over Q(i), joint spectra, kernel towers)
live here too.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from .linalg import (RowSpace, SparseMatrix, dense_identity, dense_inverse,
                     dense_is_lower, dense_is_upper, dense_mul, dense_nullspace,
                     nullspace, rank, vec_clean, vec_iadd)
from .multivector import wedge_tuple_index, wedge_tuples
from .polys import HomPoly, apply_linvf, linvf_matrix, monomial_basis
from .scalars import GaussRat, normalize, to_gauss


class NotACocycle(ValueError):
    pass


class NotTriangular(ValueError):
    pass


class TriangularizationFailed(ArithmeticError):
    pass


class NonCommutingOps(ValueError):
    pass


# Grassmann algebra on n generators

def creation_sign(K, k):
    """η_k ∧ η_K = sign η_{K ∪ k}; returns (sign, tuple) or (0, None)."""
    if k in K:
        return 0, None
    below = sum(1 for j in K if j < k)
    return (-1 if below % 2 else 1), tuple(sorted(K + (k,)))


def annihilation_sign(K, k):
    """i_{h_k} η_K = sign η_{K ∖ k}; returns (sign, tuple) or (0, None)."""
    if k not in K:
        return 0, None
    s = K.index(k)
    return (-1 if s % 2 else 1), K[:s] + K[s + 1:]


def creation_matrix(n, k, p):
    """e_{η_k}: ∧^p → ∧^{p+1}."""
    src = wedge_tuples(n, p)
    tidx = wedge_tuple_index(n, p + 1) if p < n else {}
    cols = []
    for K in src:
        s, T = creation_sign(K, k)
        cols.append({tidx[T]: s} if s else {})
    return SparseMatrix(len(tidx), len(src), cols)


def annihilation_matrix(n, k, p):
    """i_{h_k}: ∧^p → ∧^{p−1}."""
    src = wedge_tuples(n, p)
    tidx = wedge_tuple_index(n, p - 1) if p > 0 else {}
    cols = []
    for K in src:
        s, T = annihilation_sign(K, k)
        cols.append({tidx[T]: s} if s else {})
    return SparseMatrix(len(tidx), len(src), cols)


def grassmann_homotopy_check(n):
    """e_l i_k + i_k e_l = δ_kl id on every ∧^p."""
    for p in range(n + 1):
        dim = len(wedge_tuples(n, p))
        for k in range(n):
            for l in range(n):
                total = SparseMatrix.zero(dim, dim)
                if p >= 1:
                    total = total + creation_matrix(n, l, p - 1) @ annihilation_matrix(n, k, p)
                if p < n:
                    total = total + annihilation_matrix(n, k, p + 1) @ creation_matrix(n, l, p)
                expect = SparseMatrix.identity(dim) if k == l else SparseMatrix.zero(dim, dim)
                if total != expect:
                    return False
    return True


class OperatorTuple:
    """n operators on an N-dimensional space, optionally shifted by λ."""

    def __init__(self, mats, shift=None, check=True):
        if not mats:
            raise ValueError("need at least one operator")
        N = mats[0].nrows
        for M in mats:
            if M.shape != (N, N):
                raise ValueError("operators must be square of equal size")
        if shift is not None:
            ident = SparseMatrix.identity(N)
            mats = [M - ident.scale(l) if l else M for M, l in zip(mats, shift)]
        self.mats = list(mats)
        self.n = len(mats)
        self.N = N
        if check and not self.commute():
            raise NonCommutingOps("operators do not commute")

    def commute(self):
        for A, B in itertools.combinations(self.mats, 2):
            if A @ B != B @ A:
                return False
        return True

    def map(self, f):
        return OperatorTuple([M.map_entries(f) for M in self.mats], check=False)


def _tensor(op, grass, N):
    """op ⊗ grass in tuple-major layout."""
    cols = []
    for t, gcol in enumerate(grass.cols):
        for j in range(N):
            col = {}
            opcol = op.cols[j]
            for s, g in gcol.items():
                base = s * N
                for i, x in opcol.items():
                    col[base + i] = g * x
            cols.append(col)
    return SparseMatrix(grass.nrows * N, grass.ncols * N, cols)


def koszul_cochain_matrix(ops, p):
    """𝒦 = Σ X_k ⊗ e_{η_k}: E⊗∧^p → E⊗∧^{p+1}."""
    n, N = ops.n, ops.N
    src = len(wedge_tuples(n, p)) * N
    if p >= n:
        return SparseMatrix(0, src)
    tgt = len(wedge_tuples(n, p + 1)) * N
    total = SparseMatrix.zero(tgt, src)
    for k, X in enumerate(ops.mats):
        total = total + _tensor(X, creation_matrix(n, k, p), N)
    return total


def koszul_chain_matrix(ops, p):
    """κ = Σ X_k ⊗ i_{h_k}: E⊗∧^p → E⊗∧^{p−1}."""
    n, N = ops.n, ops.N
    src = len(wedge_tuples(n, p)) * N
    if p <= 0:
        return SparseMatrix(0, src)
    tgt = len(wedge_tuples(n, p - 1)) * N
    total = SparseMatrix.zero(tgt, src)
    for k, X in enumerate(ops.mats):
        total = total + _tensor(X, annihilation_matrix(n, k, p), N)
    return total


class KoszulCohomology:
    def __init__(self, dims, reps, cocycles):
        self.dims = dims
        self.reps = reps
        self.cocycles = cocycles


def koszul_cohomology_dims(ops, with_reps=True):
    """dim KH^p for p = 0..n, with coset representatives."""
    n, N = ops.n, ops.N
    mats = [koszul_cochain_matrix(ops, p) for p in range(n + 1)]
    dims, reps, cocycles = [], [], []
    for p in range(n + 1):
        ker = nullspace(mats[p])
        img = [c for c in mats[p - 1].cols if c] if p >= 1 else []
        rs = RowSpace()
        for v in img:
            rs.add(v)
        chosen = []
        for v in ker:
            if rs.add(v):
                chosen.append(v)
        dims.append(len(chosen))
        reps.append(chosen if with_reps else None)
        cocycles.append(ker)
    return KoszulCohomology(dims, reps, cocycles)


def homotopy_check(ops_x, ops_y):
    """𝒦_X κ_Y + κ_Y 𝒦_X = (Σ Y_l X_l)⊗id + Σ [X_l, Y_k]⊗e_l i_k on every ∧^p."""
    n, N = ops_x.n, ops_x.N
    first = SparseMatrix.zero(N, N)
    for X, Y in zip(ops_x.mats, ops_y.mats):
        first = first + Y @ X
    for p in range(n + 1):
        dim = len(wedge_tuples(n, p))
        lhs = SparseMatrix.zero(dim * N, dim * N)
        if p >= 1:
            lhs = lhs + koszul_cochain_matrix(ops_x, p - 1) @ koszul_chain_matrix(ops_y, p)
        if p < n:
            lhs = lhs + koszul_chain_matrix(ops_y, p + 1) @ koszul_cochain_matrix(ops_x, p)
        rhs = _tensor(first, SparseMatrix.identity(dim), N)
        if 1 <= p:
            for l in range(n):
                for k in range(n):
                    X, Y = ops_x.mats[l], ops_y.mats[k]
                    comm = X @ Y - Y @ X
                    if comm.is_zero():
                        continue
                    g = creation_matrix(n, l, p - 1) @ annihilation_matrix(n, k, p)
                    rhs = rhs + _tensor(comm, g, N)
        if lhs != rhs:
            return False
    return True


def joint_kernel(mats):
    """Basis of ∩ ker M (sparse vectors)."""
    if not mats:
        return []
    ncols = mats[0].ncols
    cols = [dict() for _ in range(ncols)]
    off = 0
    for M in mats:
        for j, col in enumerate(M.cols):
            for i, x in col.items():
                cols[j][off + i] = x
        off += M.nrows
    return nullspace(SparseMatrix(off, ncols, cols))


def complement_kernel_check(ops):
    """True iff ker X_l ⊕ im X_l = E for every operator (rank X² = rank X)."""
    return all(rank(M @ M) == rank(M) for M in ops.mats)


# simultaneous triangularization over Q(i)

def _to_sympy(x):
    import sympy
    g = to_gauss(x)
    return sympy.Rational(g.re.numerator, g.re.denominator) + sympy.I * sympy.Rational(
        g.im.numerator, g.im.denominator)


def _from_sympy(v):
    import sympy
    re_, im_ = sympy.re(v), sympy.im(v)
    if not (re_.is_Rational and im_.is_Rational):
        return None
    return normalize(GaussRat(Fraction(int(re_.p), int(re_.q)), Fraction(int(im_.p), int(im_.q))))


def gaussian_eigenvalues(A):
    """Eigenvalues of a dense matrix lying in Q(i) (possibly empty)."""
    import sympy
    lam = sympy.Symbol("lam")
    M = sympy.Matrix([[_to_sympy(v) for v in row] for row in A])
    poly = M.charpoly(lam).as_expr()
    _, factors = sympy.factor_list(poly, lam, gaussian=True)
    out = []
    for f, _mult in factors:
        P = sympy.Poly(f, lam)
        if P.degree() == 1:
            c1, c0 = P.all_coeffs()
            v = _from_sympy(sympy.nsimplify(-c0 / c1))
            if v is not None:
                out.append(v)
    return out


def _restrict(A, basis):
    """Matrix of A on the invariant subspace spanned by ``basis`` (dense columns)."""
    rs = RowSpace(track=True)
    for t, b in enumerate(basis):
        rs.add({i: x for i, x in enumerate(b) if x}, tag=t)
    k = len(basis)
    out = [[0] * k for _ in range(k)]
    for t, b in enumerate(basis):
        img = [sum((A[i][j] * b[j] for j in range(len(b)) if b[j]), 0) for i in range(len(A))]
        coords = rs.coordinates({i: x for i, x in enumerate(img) if x})
        if coords is None:
            raise NonCommutingOps("subspace not invariant")
        for s, c in coords.items():
            out[s][t] = c
    return out


def common_eigenvector(mats):
    """A joint eigenvector of commuting dense matrices over Q(i), or None."""
    N = len(mats[0])
    basis = [[1 if i == j else 0 for i in range(N)] for j in range(N)]
    for A in mats:
        R = _restrict(A, basis)
        eig = gaussian_eigenvalues(R)
        if not eig:
            return None
        lam = eig[0]
        shifted = [[R[i][j] - (lam if i == j else 0) for j in range(len(R))] for i in range(len(R))]
        ker = dense_nullspace(shifted)
        basis = [[sum((basis[t][i] * v[t] for t in range(len(v)) if v[t]), 0)
                  for i in range(N)] for v in ker]
    return basis[0]


def _eig_key(v):
    g = to_gauss(v)
    return (g.re, -g.im)


def joint_eigenbasis(mats):
    """A basis of joint eigenvectors over Q(i) when the family is
    simultaneously diagonalizable there, else None."""
    N = len(mats[0])
    spaces = [[[1 if i == j else 0 for i in range(N)] for j in range(N)]]
    for A in mats:
        new = []
        for W in spaces:
            R = _restrict(A, W)
            found = 0
            for lam in sorted(set(gaussian_eigenvalues(R)), key=_eig_key):
                shifted = [[R[i][j] - (lam if i == j else 0) for j in range(len(R))]
                           for i in range(len(R))]
                ker = dense_nullspace(shifted)
                found += len(ker)
                new.append([[sum((W[t][i] * v[t] for t in range(len(v)) if v[t]), 0)
                             for i in range(N)] for v in ker])
            if found < len(W):
                return None
        spaces = new
    return [v for W in spaces for v in W]


class SpectrumReport:
    def __init__(self, U, b, failed=False):
        self.U = U
        self.b = b
        self.failed = failed

    @property
    def B(self):
        """B[j][k] = b_j^{kk}."""
        return [[bj[k][k] for k in range(len(bj))] for bj in self.b]


def simultaneous_triangularize(mats):
    """U with every U⁻¹ a U upper-triangular, over Q(i).

    Returns a SpectrumReport; ``failed`` is set when some characteristic
    polynomial met on the way has no root in Q(i)."""
    N = len(mats[0])
    for i, j in itertools.combinations(range(len(mats)), 2):
        if dense_mul(mats[i], mats[j]) != dense_mul(mats[j], mats[i]):
            raise NonCommutingOps("matrices %d and %d do not commute" % (i, j))
    U = _triangularize(mats)
    if U is None:
        return SpectrumReport(None, None, failed=True)
    Ui = dense_inverse(U)
    b = [dense_mul(dense_mul(Ui, a), U) for a in mats]
    assert all(dense_is_upper(m) for m in b)
    return SpectrumReport(U, b)


def _triangularize(mats):
    N = len(mats[0])
    if all(dense_is_upper(a) for a in mats):
        return dense_identity(N)
    if all(dense_is_lower(a) for a in mats):
        return [[1 if i + j == N - 1 else 0 for j in range(N)] for i in range(N)]
    eig = joint_eigenbasis(mats)
    if eig is not None:
        return [[eig[c][r] for c in range(N)] for r in range(N)]
    v = common_eigenvector(mats)
    if v is None:
        return None
    # complete v to a basis with standard vectors
    cols = [v]
    rs = RowSpace()
    rs.add({i: x for i, x in enumerate(v) if x})
    for j in range(N):
        e = {j: 1}
        if rs.add(e):
            cols.append([1 if i == j else 0 for i in range(N)])
    P = [[cols[c][r] for c in range(N)] for r in range(N)]
    Pi = dense_inverse(P)
    conj = [dense_mul(dense_mul(Pi, a), P) for a in mats]
    if N == 1:
        return P
    sub = [[row[1:] for row in m[1:]] for m in conj]
    Us = _triangularize(sub)
    if Us is None:
        return None
    block = [[1 if j == 0 else 0 for j in range(N)]]
    for i in range(N - 1):
        block.append([0] + Us[i])
    return dense_mul(P, block)


def induced_triangular_ops(S, report, r):
    """Matrices of (X_j − δ_j)^C in the basis 𝔷^β (|β| = r, lex-increasing),
    built from the diagonal/strictly-upper entries of the b_k."""
    if report.failed:
        raise TriangularizationFailed("no triangular form over Q(i)")
    n = S.n
    basis = monomial_basis(n, r)
    idx = {m: i for i, m in enumerate(basis)}
    b = report.b
    mats = []
    for j in range(n):
        cols = []
        for beta in basis:
            col = {}
            diag = 0
            for k in range(n):
                a = S.alpha[j][k]
                if not a:
                    continue
                for m in range(n):
                    if b[k][m][m]:
                        diag = diag + a * b[k][m][m] * (beta[m] - 1)
                for m in range(n):
                    if not beta[m]:
                        continue
                    for p in range(m + 1, n):
                        c = b[k][m][p]
                        if c:
                            nb = list(beta)
                            nb[m] -= 1
                            nb[p] += 1
                            t = idx[tuple(nb)]
                            col[t] = col.get(t, 0) + a * c * beta[m]
            if diag:
                col[idx[beta]] = col.get(idx[beta], 0) + diag
            cols.append(vec_clean({i: normalize(x) for i, x in col.items()}))
        mats.append(SparseMatrix(len(basis), len(basis), cols))
    return OperatorTuple(mats, check=False)


def zeta_change_of_basis(report, n, r):
    """Columns: the polynomials 𝔷^β expanded in the original coordinates."""
    Ui = dense_inverse(report.U)
    basis = monomial_basis(n, r)
    cols = []
    for beta in basis:
        poly = HomPoly.monomial(beta, 1).substitute_linear(Ui)
        cols.append(poly.to_vector())
    return SparseMatrix(len(basis), len(basis), cols)


def induced_ops_crosscheck(S, report, r):
    """C T_j = M_j C with M_j the direct matrix of X_j − δ_j on E_r."""
    T = induced_triangular_ops(S, report, r)
    C = zeta_change_of_basis(report, S.n, r)
    direct = S.shifted_ops(r)
    return all(C @ Tj == Mj @ C for Tj, Mj in zip(T.mats, direct))


def joint_spectrum(ops):
    """Multiset of diagonal n-tuples of upper-triangular operators."""
    for M in ops.mats:
        if not M.is_upper_triangular():
            raise NotTriangular("operators are not upper-triangular")
    N = ops.N
    return Counter(tuple(normalize(M[q, q]) for M in ops.mats) for q in range(N))


def spectrum_formula(S, report, r):
    """{αBI : I ∈ {−1,0,1,...}^n, |I| = r − n}."""
    n = S.n
    B = report.B
    aB = [[sum((S.alpha[j][l] * B[l][k] for l in range(n)), 0) for k in range(n)]
          for j in range(n)]
    out = set()
    for beta in monomial_basis(n, r):
        I = [b_ - 1 for b_ in beta]
        out.add(tuple(normalize(sum((aB[j][k] * I[k] for k in range(n)), 0)) for j in range(n)))
    return out


def kernel_index_set(S, report, r):
    """K_r = {I ∈ ker αB : I ≥ −1, |I| = r − n}."""
    n = S.n
    B = report.B
    out = []
    for beta in monomial_basis(n, r):
        I = [b_ - 1 for b_ in beta]
        if all(sum((S.alpha[j][l] * B[l][k] * I[k] for l in range(n) for k in range(n)), 0) == 0
               for j in range(n)):
            out.append(tuple(I))
    return out


class KernelTower:
    def __init__(self, kernels, reduced, mu, levels_pivots):
        self.kernels = kernels
        self.reduced = reduced
        self.mu = mu
        self.pivots = levels_pivots

    @property
    def s(self):
        return len(self.kernels)

    @property
    def kernel_dims(self):
        return [len(k) for k in self.kernels]

    def vectors(self):
        return [v for level in self.kernels for v in level]

    def to_record(self, r=None, spectrum=None):
        from .scalars import format_scalar
        rec = {"mu": self.mu, "s": self.s, "kernel_dims": self.kernel_dims}
        if r is not None:
            rec = {"r": r, **rec}
        if spectrum is not None:
            rec["spectrum"] = [[format_scalar(c) for c in t] for t in sorted(
                spectrum, key=lambda t: tuple(str(c) for c in t))]
        return rec


def _zero_lines(mats, N):
    return [q for q in range(N) if all(not M[q, q] for M in mats)]


def kernel_tower(ops):
    """Iterated joint kernels of upper-triangular commuting operators.

    Kernel vectors are returned in the original coordinates. Raises
    NotTriangular if the input is not upper-triangular; asserts
    μ = Σ dim ker^(a) and that every kernel pivot sits on a zero line."""
    mats = ops.mats
    N = ops.N
    for M in mats:
        if not M.is_upper_triangular():
            raise NotTriangular("operators are not upper-triangular")
    mu = len(_zero_lines(mats, N))
    kept = list(range(N))          # current basis = original e_j, j in kept
    cur = mats
    kernels, reduced, pivots_all = [], [], []
    while True:
        M = len(kept)
        if M == 0:
            break
        ker = joint_kernel(cur)
        if not ker:
            if _zero_lines(cur, M):
                raise AssertionError("zero diagonal line without joint kernel")
            break
        rs = RowSpace(priority=lambda k: -k)
        for v in ker:
            rs.add(v)
        zl = set(_zero_lines(cur, M))
        level, piv = [], []
        for q in sorted(rs.rows):
            row = rs.rows[q]
            if max(row) != q or q not in zl:
                raise AssertionError("kernel pivot is not a zero line")
            level.append({kept[i]: x for i, x in row.items()})
            piv.append(q)
        kernels.append(level)
        pivots_all.append([kept[q] for q in piv])
        # quotient operators on span of the non-pivot basis vectors
        pset = set(piv)
        rest = [i for i in range(M) if i not in pset]
        pos = {i: t for t, i in enumerate(rest)}
        new = []
        for T in cur:
            cols = []
            for j in rest:
                col = dict(T.cols[j])
                for q in piv:
                    x = col.get(q)
                    if x:
                        vec_iadd(col, rs.rows[q], -x)
                cols.append({pos[i]: x for i, x in col.items() if x})
            new.append(SparseMatrix(len(rest), len(rest), cols))
        for T in new:
            if not T.is_upper_triangular():
                raise AssertionError("reduced operator lost triangularity")
        reduced.append(new)
        kept = [kept[i] for i in rest]
        cur = new
    tower = KernelTower(kernels, reduced, mu, pivots_all)
    if sum(tower.kernel_dims) != mu:
        raise AssertionError("multiplicity %d differs from tower sum %d"
                             % (mu, sum(tower.kernel_dims)))
    return tower


def reduce_cocycle(ops, tower, C, p):
    """A cocycle C1 = C − 𝒦B cohomologous to C with every E-component in the
    span of the tower vectors. Returns (C1, B)."""
    n, N = ops.n, ops.N
    K_p = koszul_cochain_matrix(ops, p)
    if K_p.apply(C):
        raise NotACocycle("input is not a Koszul cocycle")
    if p == 0:
        return dict(C), {}
    piv = {q for level in tower.pivots for q in level}
    rs = RowSpace(priority=lambda k: (k not in piv, k))
    for v in tower.vectors():
        rs.add(v)
    if rs.pivots != piv:
        raise AssertionError("tower vectors do not project onto their pivots")
    T = len(wedge_tuples(n, p))

    def p2(vec):
        out = {}
        for t in range(T):
            comp = {i - t * N: x for i, x in vec.items() if t * N <= i < (t + 1) * N}
            if comp:
                res, _ = rs.reduce(comp)
                for i, x in res.items():
                    if x:
                        out[t * N + i] = x
        return out

    K_prev = koszul_cochain_matrix(ops, p - 1)
    proj = SparseMatrix(K_prev.nrows, K_prev.ncols, [p2(c) for c in K_prev.cols])
    from .linalg import solve
    Bsol = solve(proj, p2(C))
    if Bsol is None:
        raise AssertionError("complement block is not solvable")
    C1 = dict(C)
    vec_iadd(C1, K_prev.apply(Bsol), -1)
    C1 = vec_clean(C1)
    assert not p2(C1)
    return C1, Bsol


def tower_span_contains(tower, N, n, p, C):
    """True when every E-component of C lies in the span of the tower."""
    rs = RowSpace()
    for v in tower.vectors():
        rs.add(v)
    T = len(wedge_tuples(n, p))
    for t in range(T):
        comp = {i - t * N: x for i, x in C.items() if t * N <= i < (t + 1) * N}
        if comp and not rs.contains(comp):
            return False
    return True


def gaussian_ops(ops):
    return OperatorTuple([M.map_entries(to_gauss) for M in ops.mats], check=False)
