"""
Poisson cohomology of an SRMI tensor through potential cochains.

Real cochains (polyvectors in the ∂-frame) embed into potential cochains
D⁻¹ Σ P^K Y_K. On the potential side the Poisson differential is the Koszul
differential of the operators X_i − δ_i, degree r of the numerators being
preserved. A real cochain of wedge degree p and coefficient degree d sits
at numerator degree r = d + n − p.

The real cohomology is obtained in two independent ways:

* directly, by ranks of ∂_Λ between coefficient-degree slices;
* from the potential cohomology and the relative cohomology of a complement
  of the real cochains, glued by the long exact sequence.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

from .koszul import OperatorTuple, creation_sign, koszul_cochain_matrix
from .linalg import RowSpace, SparseMatrix, nullspace, rank, vec_clean
from .multivector import (MultiVec, boundary_matrix, slice_basis, slice_dim,
                          wedge_tuples, schouten, wedge)
from .polys import HomPoly, apply_linvf, divides, NotDivisible, basis_size
from .srmi import linear_field


class ExactnessViolation(AssertionError):
    pass


def _parity(K):
    return sum(K) % 2


class PCochain:
    """D⁻¹ Σ_K P^K Y_K with numerators of degree r (stored as a MultiVec
    whose index tuples refer to the Y-frame)."""

    def __init__(self, S, p, r, numerators=None):
        self.S = S
        self.p = p
        self.r = r
        self.num = numerators if numerators is not None else MultiVec(S.n, p, r)

    def to_vector(self):
        return self.num.to_vector()

    @classmethod
    def from_vector(cls, S, p, r, vec):
        return cls(S, p, r, MultiVec.from_vector(S.n, p, r, vec))

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        return (self.p, self.r) == (other.p, other.r) and self.num == other.num

    def __add__(self, other):
        return PCochain(self.S, self.p, self.r, self.num + other.num)

    def scale(self, c):
        return PCochain(self.S, self.p, self.r, self.num.scale(c))

    def to_multivec(self):
        """Σ_K P^K Y_K in the ∂-frame (the numerator, without the D⁻¹)."""
        frame = self.S.frame
        total = MultiVec(self.S.n, self.p, self.r + self.p)
        for K, P in self.num.coeffs.items():
            total = total + frame.wedge_fields(K).times_function(P)
        return total


def bidegree(n, p, d):
    return p, d + n - p


def inject(S, C):
    """Potential cochain of a real cochain C (a MultiVec)."""
    n, p = S.n, C.p
    r = C.d + n - p
    tables = S.frame.minors
    num = {}
    for I, f in C.coeffs.items():
        for K in wedge_tuples(n, p):
            m = tables.lower(K, I)
            if m.is_zero():
                continue
            term = m * f
            if (_parity(I) + _parity(K)) % 2:
                term = -term
            prev = num.get(K)
            num[K] = term if prev is None else prev + term
    return PCochain(S, p, r, MultiVec(n, p, r, num))


def is_real(P):
    """(True, witness MultiVec) when the potential cochain is real, else (False, None)."""
    S = P.S
    n, p, r = S.n, P.p, P.r
    d = r + p - n
    if P.is_zero():
        return True, MultiVec(n, p, max(d, 0))
    if d < 0:
        return False, None
    tables = S.frame.minors
    out = {}
    for I in wedge_tuples(n, p):
        Q = HomPoly(n, r + p)
        for K, f in P.num.coeffs.items():
            Q = Q + tables.upper(K, I) * f
        if Q.is_zero():
            continue
        try:
            out[I] = divides(S.D, Q)
        except NotDivisible:
            return False, None
    return True, MultiVec(n, p, d, out)


def p_coboundary(S, P):
    """D⁻¹ Σ (X_i − δ_i)(P^K) Y_i∧Y_K."""
    n = S.n
    if P.p >= n:
        return PCochain(S, n, P.r)
    out = {}
    for K, f in P.num.coeffs.items():
        for i in range(n):
            g = apply_linvf(S.X[i], f) - f.scale(S.delta[i])
            if g.is_zero():
                continue
            s, T = creation_sign(K, i)
            if not s:
                continue
            term = g if s > 0 else -g
            prev = out.get(T)
            out[T] = term if prev is None else prev + term
    return PCochain(S, P.p + 1, P.r, MultiVec(n, P.p + 1, P.r, out))


class Complement:
    """Splitting P^{pr} = i(R^{pr}) ⊕ S^{pr} by pivot coordinates."""

    def __init__(self, rowspace, dim_P, dim_R):
        self.rs = rowspace
        self.dim_P = dim_P
        self.dim_R = dim_R
        self.pivots = sorted(rowspace.pivots)
        piv = set(self.pivots)
        self.coords = [j for j in range(dim_P) if j not in piv]
        self.pos = {j: t for t, j in enumerate(self.coords)}

    @property
    def dim_S(self):
        return len(self.coords)

    def project_S(self, v):
        """S-coordinates of the S-component of v."""
        res, _ = self.rs.reduce(v)
        return {self.pos[j]: x for j, x in res.items() if x}

    def project_R(self, v):
        """R-coordinates (slice basis) of the real component of v."""
        _, combo = self.rs.reduce(v)
        return vec_clean(combo)

    def embed_S(self, s):
        return {self.coords[t]: x for t, x in s.items()}


class SrmiComplex:
    """All slice matrices of one SRMI structure, computed lazily and cached."""

    def __init__(self, S):
        self.S = S
        self.n = S.n
        self._ops = {}
        self._pmat = {}
        self._imat = {}
        self._comp = {}
        self._rmat = {}

    def ops(self, r):
        if r not in self._ops:
            self._ops[r] = OperatorTuple(self.S.shifted_ops(r), check=False)
        return self._ops[r]

    def dim_P(self, p, r):
        if p < 0 or p > self.n:
            return 0
        return len(wedge_tuples(self.n, p)) * basis_size(self.n, r)

    def dim_R(self, p, r):
        if p < 0 or p > self.n:
            return 0
        return slice_dim(self.n, p, r + p - self.n)

    def p_matrix(self, p, r):
        """∂ on potential cochains, (p, r) → (p+1, r)."""
        key = (p, r)
        if key not in self._pmat:
            self._pmat[key] = koszul_cochain_matrix(self.ops(r), p)
        return self._pmat[key]

    def inject_matrix(self, p, r):
        key = (p, r)
        if key not in self._imat:
            d = r + p - self.n
            cols = []
            if d >= 0:
                for C in slice_basis(self.n, p, d):
                    cols.append(inject(self.S, C).to_vector())
            self._imat[key] = SparseMatrix(self.dim_P(p, r), len(cols), cols)
        return self._imat[key]

    def complement(self, p, r, priority=None, tag=None):
        key = (p, r, tag)
        if key not in self._comp:
            rs = RowSpace(track=True, priority=priority)
            M = self.inject_matrix(p, r)
            for j, col in enumerate(M.cols):
                if not rs.add(col, tag=j):
                    raise AssertionError("injection is not injective")
            self._comp[key] = Complement(rs, self.dim_P(p, r), M.ncols)
        return self._comp[key]

    def r_matrix(self, p, r):
        """∂ restricted to real cochains, in R-coordinates, (p, r) → (p+1, r)."""
        key = (p, r)
        if key not in self._rmat:
            I = self.inject_matrix(p, r)
            P = self.p_matrix(p, r)
            if p >= self.n:
                self._rmat[key] = SparseMatrix(0, I.ncols)
            else:
                comp = self.complement(p + 1, r)
                cols = []
                for col in I.cols:
                    img = P.apply(col)
                    res, combo = comp.rs.reduce(img)
                    if res:
                        raise ExactnessViolation("real cochains are not a sub-complex")
                    cols.append(vec_clean(combo))
                self._rmat[key] = SparseMatrix(self.dim_R(p + 1, r), I.ncols, cols)
        return self._rmat[key]

    def s_matrix(self, p, r, priority=None, tag=None):
        """Induced differential on the complement, in S-coordinates."""
        src = self.complement(p, r, priority, tag)
        if p >= self.n:
            return SparseMatrix(0, src.dim_S)
        tgt = self.complement(p + 1, r, priority, tag)
        P = self.p_matrix(p, r)
        cols = [tgt.project_S(P.cols[j]) for j in src.coords]
        return SparseMatrix(tgt.dim_S, src.dim_S, cols)


def _span_rank(vectors):
    rs = RowSpace()
    for v in vectors:
        if v:
            rs.add(v)
    return rs.rank


def _class_rank(vectors, boundaries):
    """dim(span(vectors) + B) − dim B."""
    rb = _span_rank(boundaries)
    return _span_rank(list(boundaries) + list(vectors)) - rb


def _complex_dims(mats, dims):
    ranks = [rank(M) for M in mats]
    out = []
    for p, dim in enumerate(dims):
        out.append(dim - ranks[p] - (ranks[p - 1] if p >= 1 else 0))
    return out, ranks


def p_cohomology(cx, r):
    """dims of LH^{pr}(P), p = 0..n, and representatives as PCochains."""
    n = cx.n
    dims, reps = [], []
    for p in range(n + 1):
        ker = nullspace(cx.p_matrix(p, r))
        bnd = [c for c in cx.p_matrix(p - 1, r).cols if c] if p >= 1 else []
        rs = RowSpace()
        for v in bnd:
            rs.add(v)
        chosen = [v for v in ker if rs.add(v)]
        dims.append(len(chosen))
        reps.append([PCochain.from_vector(cx.S, p, r, v) for v in chosen])
    return dims, reps


def choose_complement(cx, p, r, priority=None, tag=None):
    return cx.complement(p, r, priority, tag)


def s_cohomology(cx, r, priority=None, tag=None):
    n = cx.n
    mats = [cx.s_matrix(p, r, priority, tag) for p in range(n + 1)]
    dims_S = [cx.complement(p, r, priority, tag).dim_S for p in range(n + 1)]
    dims, _ = _complex_dims(mats, dims_S)
    return dims


def connecting_map(cx, p, r):
    """Matrix of φ = p_R∘∂ on S-cocycles (columns in R-coordinates of p+1),
    and the rank of φ♯ on cohomology."""
    n = cx.n
    if p >= n:
        return SparseMatrix(0, 0), 0
    Sm = cx.s_matrix(p, r)
    src = cx.complement(p, r)
    tgt = cx.complement(p + 1, r)
    P = cx.p_matrix(p, r)
    zs = nullspace(Sm)
    cols = [tgt.project_R(P.apply(src.embed_S(z))) for z in zs]
    phi = SparseMatrix(tgt.dim_R, len(cols), cols)
    bR = [c for c in cx.r_matrix(p, r).cols if c]
    return phi, _class_rank(cols, bR)


def r_cohomology_direct(L, p, d, with_reps=True):
    """dim LH at (p, d) from ∂_Λ on coefficient slices; representatives as MultiVecs."""
    n = L.n
    if d < 0 or p < 0 or p > n:
        return 0, []
    out_m = boundary_matrix(L, p, d)
    ker = nullspace(out_m)
    if p >= 1 and d >= 1:
        bnd = [c for c in boundary_matrix(L, p - 1, d - 1).cols if c]
    else:
        bnd = []
    rs = RowSpace()
    for v in bnd:
        rs.add(v)
    chosen = [v for v in ker if rs.add(v)]
    reps = [MultiVec.from_vector(n, p, d, v) for v in chosen] if with_reps else []
    return len(chosen), reps


def direct_table(L, d_max):
    """{(p, d): dim} for all p and 0 ≤ d ≤ d_max."""
    return {(p, d): r_cohomology_direct(L, p, d, with_reps=False)[0]
            for p in range(L.n + 1) for d in range(d_max + 1)}


class SliceLES:
    """Dimensions and connecting ranks of the long exact sequence at fixed r."""

    def __init__(self, cx, r):
        n = cx.n
        self.r = r
        self.n = n
        ps = range(n + 1)
        P = [cx.p_matrix(p, r) for p in ps]
        R = [cx.r_matrix(p, r) for p in ps]
        Sm = [cx.s_matrix(p, r) for p in ps]
        comps = [cx.complement(p, r) for p in ps]
        self.dim_P, _ = _complex_dims(P, [cx.dim_P(p, r) for p in ps])
        self.dim_R, _ = _complex_dims(R, [cx.dim_R(p, r) for p in ps])
        self.dim_S, _ = _complex_dims(Sm, [c.dim_S for c in comps])
        ZP = [nullspace(M) for M in P]
        BP = [[c for c in P[p - 1].cols if c] if p else [] for p in ps]
        ZR = [nullspace(M) for M in R]
        BR = [[c for c in R[p - 1].cols if c] if p else [] for p in ps]
        ZS = [nullspace(M) for M in Sm]
        BS = [[c for c in Sm[p - 1].cols if c] if p else [] for p in ps]
        I = [cx.inject_matrix(p, r) for p in ps]
        self.rank_i = [_class_rank([I[p].apply(z) for z in ZR[p]], BP[p]) for p in ps]
        self.rank_pS = [_class_rank([comps[p].project_S(z) for z in ZP[p]], BS[p]) for p in ps]
        self.rank_phi = []
        self.composition_ok = True
        for p in ps:
            if p == n:
                self.rank_phi.append(0)
                continue
            phis = [comps[p + 1].project_R(P[p].apply(comps[p].embed_S(z))) for z in ZS[p]]
            self.rank_phi.append(_class_rank(phis, BR[p + 1]))
            # i∘φ lands in potential coboundaries
            if _class_rank([I[p + 1].apply(v) for v in phis], BP[p + 1]) != 0:
                self.composition_ok = False
            # φ∘p_S vanishes in cohomology
            cyc = [comps[p + 1].project_R(P[p].apply(comps[p].embed_S(comps[p].project_S(z))))
                   for z in ZP[p]]
            if _class_rank(cyc, BR[p + 1]) != 0:
                self.composition_ok = False
        for p in ps:
            if any(comps[p].project_S(I[p].apply(z)) for z in ZR[p]):
                self.composition_ok = False

    def assembled(self, p):
        """dim LH^{pr}(R) from potential and relative data only."""
        val = self.dim_P[p] - self.rank_pS[p]
        if p >= 1:
            val += self.dim_S[p - 1] - self.rank_pS[p - 1]
        return val

    def exactness_ok(self):
        n = self.n
        for p in range(n + 1):
            if self.dim_R[p] - self.rank_i[p] != (self.rank_phi[p - 1] if p else 0):
                return False
            if self.dim_P[p] - self.rank_pS[p] != self.rank_i[p]:
                return False
            if self.dim_S[p] - self.rank_phi[p] != self.rank_pS[p]:
                return False
        return self.composition_ok

    def alternating_sum(self):
        return sum((-1) ** p * (self.dim_R[p] - self.dim_P[p] + self.dim_S[p])
                   for p in range(self.n + 1))


def assemble(cx, p, r, les=None, direct=None):
    """Assembled dim LH^{pr}(R); raises ExactnessViolation on any mismatch with
    the direct computation (``direct`` may be passed in to avoid recomputation)."""
    les = les or SliceLES(cx, r)
    val = les.assembled(p)
    if direct is None:
        direct = r_cohomology_direct(cx.S.Lambda, p, r + p - cx.n, with_reps=False)[0]
    if val != direct or val != les.dim_R[p]:
        raise ExactnessViolation("assembled %d, restricted %d, direct %d at (p=%d, r=%d)"
                                 % (val, les.dim_R[p], direct, p, r))
    return val


def casimirs(L, d):
    """Basis of Casimir functions of degree d."""
    return r_cohomology_direct_kernel(L, 0, d)


def r_cohomology_direct_kernel(L, p, d):
    if d < 0:
        return []
    return [MultiVec.from_vector(L.n, p, d, v) for v in nullspace(boundary_matrix(L, p, d))]


def is_coboundary(L, C):
    """Whether the cocycle C is ∂_Λ of something."""
    if C.p == 0 or C.d == 0:
        return C.is_zero()
    bnd = [c for c in boundary_matrix(L, C.p - 1, C.d - 1).cols if c]
    rs = RowSpace()
    for v in bnd:
        rs.add(v)
    return rs.contains(C.to_vector())


def independent_classes(L, cocycles):
    """Number of independent classes among the given cocycles (same slice)."""
    if not cocycles:
        return 0
    p, d = cocycles[0].p, cocycles[0].d
    bnd = [c for c in boundary_matrix(L, p - 1, d - 1).cols if c] if p >= 1 and d >= 1 else []
    return _class_rank([c.to_vector() for c in cocycles], bnd)


def preferred_classes(L, stab, p, d):
    """Inventory of Cas ⊗ ∧^p g_Λ at coefficient degree d.

    Each candidate f·Y_{a1}∧...∧Y_{ap} (deg f = d − p) is checked to be a
    cocycle; ``nonbounding`` counts independent classes among them."""
    fields = [linear_field(a) for a in stab]
    cas = casimirs(L, d - p) if d - p >= 0 else []
    cands = []
    for f in cas:
        for combo in itertools.combinations(range(len(fields)), p):
            w = f
            for k in combo:
                w = wedge(w, fields[k])
            if not w.is_zero():
                cands.append(w)
    cocycle_flags = [schouten(L, c).is_zero() for c in cands]
    return {
        "p": p, "d": d,
        "candidates": len(cands),
        "all_cocycles": all(cocycle_flags),
        "nonbounding": independent_classes(L, cands) if cands else 0,
        "items": cands,
    }


def _srmi_slices(S, r):
    cx = SrmiComplex(S)
    les = SliceLES(cx, r)
    les_ok = les.exactness_ok() and les.alternating_sum() == 0
    out = []
    for p in range(S.n + 1):
        d = r + p - S.n
        dim, reps = r_cohomology_direct(S.Lambda, p, d)
        assembled_ok = les.assembled(p) == les.dim_R[p] == dim
        out.append({
            "p": p, "r": r, "d": d,
            "dim_R": dim, "dim_P": les.dim_P[p], "dim_S": les.dim_S[p],
            "reps_R": [c.to_records() for c in reps],
            "checks": {"les": "pass" if les_ok else "fail",
                       "assemble": "pass" if assembled_ok else "fail"},
        })
    return out


def _direct_slices(L, r):
    out = []
    for p in range(L.n + 1):
        d = r + p - L.n
        dim, reps = r_cohomology_direct(L, p, d)
        out.append({
            "p": p, "r": r, "d": d,
            "dim_R": dim, "dim_P": None, "dim_S": None,
            "reps_R": [c.to_records() for c in reps],
            "checks": {"les": "skipped", "assemble": "skipped"},
        })
    return out


def cohomology_report(Lambda, r_max, srmi=None, structure=None, params=None, jobs=1):
    """CohomologyReport for r = 0..r_max. The potential/relative pipeline runs
    when SRMI data are supplied; otherwise only the direct path."""
    if r_max < 0:
        raise ValueError("r_max must be nonnegative")
    if srmi is not None:
        fn, arg = _srmi_slices, srmi
    else:
        fn, arg = _direct_slices, Lambda
    rs = list(range(r_max + 1))
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(fn, [arg] * len(rs), rs))
    else:
        chunks = [fn(arg, r) for r in rs]
    slices = [s for chunk in chunks for s in chunk]
    slices.sort(key=lambda s: (s["r"], s["p"]))
    return {
        "structure": structure,
        "params": params or {},
        "r_max": r_max,
        "pipeline": "srmi" if srmi is not None else "direct",
        "slices": slices,
    }


def report_passes(report):
    return all(v != "fail" for s in report["slices"] for v in s["checks"].values())
