"""Property suites run by ``quadpoisson verify``.

Each suite returns a list of ``Check`` records; a suite passes when every
check does. Random inputs come from a seeded generator so runs repeat."""

from __future__ import annotations

import random
from fractions import Fraction

from .cohomology import SliceLES, SrmiComplex, direct_table, s_cohomology
from .dhc import PARAMS, dhc_catalog, ParameterViolation
from .koszul import (OperatorTuple, grassmann_homotopy_check, homotopy_check,
                     induced_ops_crosscheck, induced_triangular_ops, joint_spectrum,
                     kernel_tower, simultaneous_triangularize, spectrum_formula,
                     zeta_change_of_basis)
from .linalg import SparseMatrix
from .multivector import boundary_matrix
from .polys import HomPoly, monomial_basis, poly_det
from .scalars import format_scalar
from .srmi import MinorTables, verify_minor_lemma


class UnknownSuite(KeyError):
    pass


class Check:
    def __init__(self, name, ok, detail=""):
        self.name = name
        self.ok = bool(ok)
        self.detail = detail

    def to_record(self):
        return {"check": self.name, "pass": self.ok, "detail": self.detail}


class SpectrumAnalysis:
    """Triangularization, induced operators, spectrum and kernel tower at degree r."""

    def __init__(self, S, r):
        self.S = S
        self.r = r
        self.report = simultaneous_triangularize(S.frame.mats)
        self.ops = induced_triangular_ops(S, self.report, r)
        self.spectrum = joint_spectrum(self.ops)
        self.formula = spectrum_formula(S, self.report, r)
        self.tower = kernel_tower(self.ops)

    def crosscheck(self):
        return induced_ops_crosscheck(self.S, self.report, self.r)

    def spectrum_matches(self):
        return set(self.spectrum) == self.formula

    def kernel_lines(self):
        """Tower vectors as {exponent string: scalar} in the 𝔷-monomial basis."""
        basis = monomial_basis(self.S.n, self.r)
        return [[{",".join(map(str, basis[i])): format_scalar(c) for i, c in sorted(v.items())}
                 for v in level] for level in self.tower.kernels]

    def kernel_polys(self):
        """Tower vectors as polynomials in the original coordinates."""
        C = zeta_change_of_basis(self.report, self.S.n, self.r)
        return [[HomPoly.from_vector(self.S.n, self.r, C.apply(v)) for v in level]
                for level in self.tower.kernels]

    def to_record(self):
        rec = self.tower.to_record(self.r, set(self.spectrum))
        rec["kernel_lines"] = self.kernel_lines()
        rec["kernel_polys"] = [[str(f) for f in level] for level in self.kernel_polys()]
        return rec


def random_matrix(rng, n, lo=-3, hi=3):
    return [[Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3))) for _ in range(n)]
            for _ in range(n)]


def _ell_from_matrix(M):
    n = len(M)
    return [[HomPoly.const(n, M[i][j]) for j in range(n)] for i in range(n)]


def minors_suite(count=20, seed=7, sizes=(2, 3, 4)):
    rng = random.Random(seed)
    out = []
    for n in sizes:
        bad = 0
        for _ in range(count):
            ell = _ell_from_matrix(random_matrix(rng, n))
            T = MinorTables(ell, n)
            ok = all(verify_minor_lemma(T, m) for m in range(n + 1))
            ok = ok and poly_det(T.L, n) == T.D ** (n - 1)
            bad += not ok
        out.append(Check("minor identities n=%d" % n, bad == 0, "%d/%d failures" % (bad, count)))
    return out


def random_commuting_pair(rng, N, n):
    """Two operator tuples: X commuting (polynomials in one matrix), Y arbitrary."""
    base = SparseMatrix.from_dense(random_matrix(rng, N, -2, 2))
    xs = []
    for _ in range(n):
        c0, c1, c2 = (Fraction(rng.randint(-2, 2)) for _ in range(3))
        M = SparseMatrix.identity(N).scale(c0) + base.scale(c1) + (base @ base).scale(c2)
        xs.append(M)
    ys = [SparseMatrix.from_dense(random_matrix(rng, N, -2, 2)) for _ in range(n)]
    return OperatorTuple(xs), OperatorTuple(ys, check=False)


def homotopy_suite(count=10, seed=11):
    rng = random.Random(seed)
    out = []
    bad = 0
    for _ in range(count):
        N = rng.randint(2, 8)
        n = rng.randint(2, 3)
        X, Y = random_commuting_pair(rng, N, n)
        bad += not homotopy_check(X, Y)
    out.append(Check("Koszul homotopy identity", bad == 0, "%d/%d failures" % (bad, count)))
    for n in range(1, 6):
        out.append(Check("Grassmann homotopy n=%d" % n, grassmann_homotopy_check(n)))
    return out


def spectrum_suite(r_max=6):
    cases = [(2, {"a": 1, "b": 0}), (3, {"a": 1}), (3, {"a": 0}), (9, {"a": 1})]
    out = []
    for idx, params in cases:
        S = dhc_catalog(idx, params).srmi_part
        for r in range(r_max + 1):
            an = SpectrumAnalysis(S, r)
            ok = an.crosscheck() and an.spectrum_matches() \
                and an.tower.mu == sum(an.tower.kernel_dims)
            out.append(Check("spectrum class %d %s r=%d" % (idx, _fmt(params), r), ok,
                             "mu=%d s=%d" % (an.tower.mu, an.tower.s)))
    return out


def _fmt(params):
    return ",".join("%s=%s" % kv for kv in sorted(params.items()))


def classification_suite(choices=((Fraction(2), Fraction(-1), Fraction(3)),
                                  (Fraction(-1, 2), Fraction(5), Fraction(1, 3)))):
    """Every catalog entry at two parameter choices; d²=0 on small cochains."""
    out = []
    for idx in range(1, 14):
        for vals in choices:
            params = dict(zip(PARAMS[idx], vals))
            if "eps" in params:
                params["eps"] = Fraction(1)
            try:
                e = dhc_catalog(idx, params)
            except ParameterViolation as exc:
                out.append(Check("class %d %s" % (idx, _fmt(params)), True, "skipped: %s" % exc))
                continue
            out.append(Check("class %d %s" % (idx, _fmt(params)), True, "verified"))
            out.append(Check("class %d d^2=0" % idx, coboundary_squares_to_zero(e.Lambda, 3)))
    return out


def coboundary_squares_to_zero(L, d_max):
    n = L.n
    for p in range(n - 1):
        for d in range(d_max + 1):
            first = boundary_matrix(L, p, d)
            second = boundary_matrix(L, p + 1, d + L.d - 1)
            if not (second @ first).is_zero():
                return False
    return True


def les_suite(r_max=9, structures=((3, {"a": 1}), (9, {"a": 1}))):
    out = []
    for idx, params in structures:
        S = dhc_catalog(idx, params).srmi_part
        cx = SrmiComplex(S)
        direct = direct_table(S.Lambda, r_max + S.n)
        for r in range(r_max + 1):
            les = SliceLES(cx, r)
            agree = all(les.assembled(p) == les.dim_R[p] ==
                        direct.get((p, r + p - S.n), 0) for p in range(S.n + 1))
            out.append(Check("LES class %d r=%d" % (idx, r),
                             les.exactness_ok() and les.alternating_sum() == 0 and agree,
                             "R=%s P=%s S=%s" % (les.dim_R, les.dim_P, les.dim_S)))
    return out


def complement_suite(r_max=6):
    S = dhc_catalog(3, {"a": 1}).srmi_part
    cx = SrmiComplex(S)
    out = []
    for r in range(r_max + 1):
        first = s_cohomology(cx, r)
        second = s_cohomology(cx, r, priority=lambda k: -k, tag="reversed")
        out.append(Check("complement independence r=%d" % r, first == second, str(first)))
    return out


SUITES = {
    "spectrum": spectrum_suite,
    "minors": minors_suite,
    "homotopy": homotopy_suite,
    "classification": classification_suite,
    "les": lambda: les_suite() + complement_suite(),
}


def run_suite(name):
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite("unknown suite %r, choose from %s" % (name, ", ".join(SUITES)))
    return fn()
