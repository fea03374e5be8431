"""Acceptance gate: nine criteria, one PASS/FAIL line each.

Run under pytest (the lines appear in the terminal summary) or directly:

    python3 tests/test_acceptance.py
"""

import os
import random
import sys
from fractions import Fraction as F

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from golden_data import first_family, golden_l3, golden_l9, second_family  # noqa: E402
from quadpoisson.cohomology import (SliceLES, SrmiComplex, casimirs, direct_table,  # noqa: E402
                                    independent_classes, preferred_classes, s_cohomology)
from quadpoisson.dhc import dhc_catalog, twist_curl_10, x, y  # noqa: E402
from quadpoisson.koszul import (OperatorTuple, grassmann_homotopy_check,  # noqa: E402
                                homotopy_check, kernel_index_set, koszul_cohomology_dims)
from quadpoisson.multivector import MultiVec, schouten  # noqa: E402
from quadpoisson.polys import HomPoly  # noqa: E402
from quadpoisson.scalars import GaussRat  # noqa: E402
from quadpoisson.linalg import RowSpace  # noqa: E402
from quadpoisson.srmi import linear_field, stabilizer  # noqa: E402
from quadpoisson.verify import (SpectrumAnalysis, coboundary_squares_to_zero,  # noqa: E402
                                minors_suite, random_commuting_pair)

RESULTS = {}


class Outcome:
    def __init__(self):
        self.failures = []
        self.notes = []

    def check(self, ok, label):
        if not ok:
            self.failures.append(label)
        return ok

    @property
    def ok(self):
        return not self.failures


def _table_mismatches(got, expected, d_max):
    bad = []
    for (p, d), dim in sorted(got.items()):
        if d <= d_max and dim != expected.get((p, d), 0):
            bad.append("(%d,%d): got %d want %d" % (p, d, dim, expected.get((p, d), 0)))
    return bad


def criterion_1():
    out = Outcome()
    L = dhc_catalog(3, {"a": 1}).Lambda
    bad = _table_mismatches(direct_table(L, 9), golden_l3(), 9)
    out.check(not bad, "table " + "; ".join(bad))
    return out


def criterion_2():
    out = Outcome()
    L = dhc_catalog(9, {"a": 1}).Lambda
    bad = _table_mismatches(direct_table(L, 9), golden_l9(9), 9)
    out.check(not bad, "table " + "; ".join(bad))
    for r in (3, 4, 5):
        c1, c2 = first_family(r), second_family(r)
        z1 = schouten(L, c1).is_zero()
        z2 = schouten(L, c2).is_zero()
        out.check(z1, "C1 r=%d not a cocycle" % r)
        out.check(z2, "C2 r=%d not a cocycle" % r)
        if z1 and z2:
            out.check(independent_classes(L, [c1, c2]) == 2, "C1, C2 r=%d dependent" % r)
        elif z2:
            out.notes.append("C2 r=%d nonbounding: %s" % (r, independent_classes(L, [c2]) == 1))
    return out


def _lambda2():
    return dhc_catalog(2, {"a": 1, "b": 0}).srmi_part


def criterion_3():
    out = Outcome()
    S = _lambda2()
    x2y2 = x * x + y * y
    zpoly = HomPoly.var(3, 2)
    for t in (1, 2):
        r = 3 * t
        an = SpectrumAnalysis(S, r)
        rep = an.report
        out.check(not rep.failed, "triangularization failed")
        out.check(all(isinstance(c, (int, F, GaussRat)) for row in rep.U for c in row), "U not over Q(i)")
        out.check(kernel_index_set(S, rep, r) == [(t - 1,) * 3], "K_%d" % r)
        out.check(an.tower.mu == 1 and an.tower.s == 1, "mu/s at r=%d" % r)
        polys = [f for level in an.kernel_polys() for f in level]
        target = x2y2 ** t * zpoly ** t
        out.check(len(polys) == 1 and polys[0].is_proportional(target), "kernel at r=%d" % r)
    for r in range(0, 10):
        dims = koszul_cohomology_dims(OperatorTuple(S.shifted_ops(r)), with_reps=False).dims
        acyclic = not any(dims)
        out.check(acyclic == (r % 3 != 0), "acyclicity at r=%d: %s" % (r, dims))
    return out


def criterion_4():
    out = Outcome()
    S = dhc_catalog(3, {"a": 0}).srmi_part
    an = SpectrumAnalysis(S, 3)
    out.check(an.tower.mu == 3 and an.tower.s == 3, "mu=%d s=%d" % (an.tower.mu, an.tower.s))
    lines = [f for level in an.kernel_polys() for f in level]
    expected = [HomPoly.monomial(e) for e in ((2, 0, 1), (1, 1, 1), (0, 2, 1))]
    match = len(lines) == 3 and all(any(f.is_proportional(m) for f in lines) for m in expected)
    out.check(match, "kernel lines %s" % [str(f) for f in lines])
    return out


CLASSIFICATION_CHOICES = {
    1: [{"a": 2, "b": -1, "c": 3}, {"a": F(1, 2), "b": 5, "c": -2}],
    2: [{"a": 2, "b": -1}, {"a": F(1, 3), "b": 4}],
    3: [{"a": 2}, {"a": F(-1, 2)}],
    4: [{"a": 2, "b": -1}, {"a": F(1, 3), "b": 0}],
    5: [{"a": 2}, {"a": F(1, 3)}],
    6: [{"a": 2}, {"a": F(-2, 3)}],
    7: [{"a": 2, "b": -1, "c": 3}, {"a": F(1, 2), "b": 2, "c": -1}],
    8: [{"a": 2, "b": -1, "eps": 1}, {"a": F(1, 3), "b": 2, "eps": -1}],
    9: [{"a": 2}, {"a": F(-1, 5)}],
    10: [{"a": 2}, {"a": F(1, 4)}],
    11: [{"b": 2, "c": 3}, {"b": F(-1, 2), "c": F(1, 2)}],
    12: [{"b": 2, "c": 3}, {"b": F(1, 2), "c": -1}],
    13: [{"a": 2, "b": -1, "c": 3}, {"a": F(1, 2), "b": 1, "c": 2}],
}

STABILIZER_DIMS = {4: 2, 8: 2, 10: 2, 11: 3, 12: 3, 13: 3}


def criterion_5():
    out = Outcome()
    for idx, choices in sorted(CLASSIFICATION_CHOICES.items()):
        for params in choices:
            try:
                e = dhc_catalog(idx, params)
            except AssertionError as exc:
                out.check(False, "class %d %s: %s" % (idx, params, exc))
                continue
            if idx in STABILIZER_DIMS:
                stab, member, img, agree = e.stabilizer_check()
                out.check(len(stab) == STABILIZER_DIMS[idx],
                          "class %d stabilizer dim %d" % (idx, len(stab)))
                out.check(not member, "class %d lies in J² image" % idx)
                out.check(agree is True, "class %d %s reference generators/J² span" % (idx, params))
    curl = twist_curl_10()
    expected = MultiVec(3, 1, 1, {(1,): x.scale(-2), (2,): y.scale(-2)})
    out.check(curl == expected, "curl of class-10 twist: %s" % curl)
    return out


def criterion_6():
    out = Outcome()
    for c in minors_suite(count=20, seed=2024):
        out.check(c.ok, "%s (%s)" % (c.name, c.detail))
    return out


def criterion_7():
    out = Outcome()
    for idx in range(1, 14):
        L = dhc_catalog(idx).Lambda
        out.check(coboundary_squares_to_zero(L, 3), "d²≠0 for class %d" % idx)
    rng = random.Random(99)
    for k in range(10):
        N = rng.randint(2, 8)
        X, Y = random_commuting_pair(rng, N, 3)
        out.check(homotopy_check(X, Y), "Koszul homotopy pair %d" % k)
    for n in range(1, 6):
        out.check(grassmann_homotopy_check(n), "Grassmann homotopy n=%d" % n)
    for idx, params in ((2, {"a": 1, "b": 0}), (3, {"a": 0}), (3, {"a": 1}), (9, {"a": 1})):
        S = dhc_catalog(idx, params).srmi_part
        for r in range(0, 7):
            tw = SpectrumAnalysis(S, r).tower
            out.check(tw.mu == sum(tw.kernel_dims), "tower sum class %d r=%d" % (idx, r))
    for idx in (3, 9):
        S = dhc_catalog(idx, {"a": 1}).srmi_part
        cx = SrmiComplex(S)
        direct = direct_table(S.Lambda, 12)
        for r in range(10):
            les = SliceLES(cx, r)
            out.check(les.exactness_ok(), "exactness class %d r=%d" % (idx, r))
            out.check(les.alternating_sum() == 0, "alternating sum class %d r=%d" % (idx, r))
            for p in range(4):
                d = r + p - 3
                want = direct.get((p, d), 0)
                out.check(les.assembled(p) == want == les.dim_R[p],
                          "assemble vs direct class %d (p=%d, r=%d)" % (idx, p, r))
    S = dhc_catalog(3, {"a": 1}).srmi_part
    cx = SrmiComplex(S)
    distinct = False
    for r in range(7):
        first = s_cohomology(cx, r)
        second = s_cohomology(cx, r, priority=lambda k: -k, tag="reversed")
        out.check(first == second, "complement dependence r=%d" % r)
        for p in range(4):
            if cx.complement(p, r).coords != cx.complement(p, r, tag="reversed").coords:
                distinct = True
    out.check(distinct, "the two complements coincide everywhere")
    return out


def criterion_8():
    out = Outcome()
    for idx, params in ((2, {"a": 1, "b": 0}), (3, {"a": 1}), (9, {"a": 1})):
        S = dhc_catalog(idx, params).srmi_part
        for r in range(7):
            an = SpectrumAnalysis(S, r)
            out.check(an.crosscheck(), "induced operators class %d r=%d" % (idx, r))
            out.check(an.spectrum_matches(), "spectrum class %d r=%d" % (idx, r))
    return out


def criterion_9():
    out = Outcome()
    for idx in (3, 9):
        L = dhc_catalog(idx, {"a": 1}).Lambda
        stab = stabilizer(L)
        fields = [linear_field(a) for a in stab]
        out.check(all(schouten(L, f).is_zero() for f in fields), "class %d stabilizer cocycles" % idx)
        out.check(independent_classes(L, fields) == len(fields),
                  "class %d stabilizer bounds" % idx)
        for p in range(4):
            for d in range(p, p + 3):
                inv = preferred_classes(L, stab, p, d)
                out.check(inv["all_cocycles"], "class %d preferred (p=%d, d=%d)" % (idx, p, d))
                out.notes.append("class %d (p=%d,d=%d): %d candidates, %d classes" % (
                    idx, p, d, inv["candidates"], inv["nonbounding"]))
    S = dhc_catalog(1, {"a": 1, "b": 1, "c": 1}).srmi_part
    out.check(S.is_k_exact(), "class 1 with a=b=c is not K-exact")
    for p in range(4):
        Dp = S.D ** p
        C = MultiVec.function(Dp)
        out.check(schouten(S.Lambda, C).is_zero(), "D^%d not a Casimir" % p)
        basis = casimirs(S.Lambda, Dp.deg)
        rs = RowSpace()
        for c in basis:
            rs.add(c.to_vector())
        out.check(rs.contains(C.to_vector()), "D^%d outside the Casimir space" % p)
    return out


CRITERIA = [
    (1, "class 3 golden table", criterion_1),
    (2, "class 9 golden table and reference representatives", criterion_2),
    (3, "rotation class spectrum and acyclicity", criterion_3),
    (4, "shear class kernel tower", criterion_4),
    (5, "classification suite", criterion_5),
    (6, "minor identities", criterion_6),
    (7, "structural properties", criterion_7),
    (8, "joint spectrum formula", criterion_8),
    (9, "Casimirs, stabilizer classes, preferred classes", criterion_9),
]


def summary_lines():
    lines = []
    for num, title, _ in CRITERIA:
        res = RESULTS.get(num)
        if res is None:
            lines.append("criterion %d (%s): NOT RUN" % (num, title))
            continue
        status = "PASS" if res.ok else "FAIL"
        line = "criterion %d (%s): %s" % (num, title, status)
        if res.failures:
            line += " | " + "; ".join(res.failures)
        lines.append(line)
    return lines


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=["criterion_%d" % c[0] for c in CRITERIA])
def test_criterion(num, title, fn):
    res = fn()
    RESULTS[num] = res
    status = "PASS" if res.ok else "FAIL"
    print("criterion %d (%s): %s" % (num, title, status))
    for f in res.failures:
        print("    failed: %s" % f)
    assert res.ok, "; ".join(res.failures)


if __name__ == "__main__":
    for num, title, fn in CRITERIA:
        RESULTS[num] = fn()
    print("\n".join(summary_lines()))
    sys.exit(0 if all(r.ok for r in RESULTS.values()) else 1)
