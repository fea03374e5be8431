"""
The thirteen quadratic Poisson classes on R^3 (Dufour–Haraki list, class 14
excluded), each written as an SRMI part over a commuting frame plus a
compatible twist.

Every entry is rebuilt from its closed-form bivector and checked at
construction: the decomposition is exact, the twist is Poisson and
compatible, and the SRMI flag agrees with an explicit certificate.

Reference stabilizer generators use the gl(3) basis E_ij ↦ x_i ∂_j, which is
the transpose of the matrix convention used for frames in this package;
:func:`generator_matrix` converts.
"""

from __future__ import annotations

from fractions import Fraction

from .multivector import MultiVec, hamiltonian_bivector, schouten, is_poisson
from .polys import HomPoly
from .scalars import parse_scalar
from .srmi import (DegenerateFrame, LinFrame, SrmiStructure, rmatrix_certificate,
                   same_span, stabilizer, j2_image_membership)

F = Fraction


class UnknownIndex(ValueError):
    pass


class ParameterViolation(ValueError):
    pass


x = HomPoly.var(3, 0)
y = HomPoly.var(3, 1)
z = HomPoly.var(3, 2)


def bivector(c23, c31, c12, d=2):
    """c23 ∂23 + c31 ∂31 + c12 ∂12 (coefficients HomPoly of degree d, or 0)."""
    coeffs = {}
    for K, c, s in (((1, 2), c23, 1), ((0, 2), c31, -1), ((0, 1), c12, 1)):
        if isinstance(c, HomPoly) and not c.is_zero():
            coeffs[K] = c if s > 0 else -c
    return MultiVec(3, 2, d, coeffs)


def alpha3(c23, c31, c12):
    """Skew matrix for c23 Y23 + c31 Y31 + c12 Y12."""
    c23, c31, c12 = F(c23), F(c31), F(c12)
    return [[F(0), c12, -c31],
            [-c12, F(0), c23],
            [c31, -c23, F(0)]]


def _m(entries):
    a = [[F(0)] * 3 for _ in range(3)]
    for (m, p), c in entries.items():
        a[m][p] = F(c)
    return a


# frames, as Y = Σ a[m][p] x_p ∂_m with zero-based m, p
def frame_diagonal():
    return [_m({(0, 0): 1}), _m({(1, 1): 1}), _m({(2, 2): 1})]


def frame_rotation():
    return [_m({(0, 0): 1, (1, 1): 1}), _m({(1, 0): 1, (0, 1): -1}), _m({(2, 2): 1})]


def frame_shear():
    return [_m({(0, 0): 1, (1, 1): 1}), _m({(1, 0): 1}), _m({(2, 2): 1})]


def frame_euler_nilpotent():
    return [_m({(0, 0): 1, (1, 1): 1, (2, 2): 1}), _m({(1, 0): 1, (2, 1): 1}), _m({(2, 0): 1})]


def frame_euler_mixed(a, b):
    return [_m({(0, 0): 1, (1, 1): 1, (2, 2): 1}), _m({(1, 0): 1}),
            _m({(2, 0): a, (2, 2): 3 * b + 1})]


def frame_z_planar():
    """z∂1, z∂2, Euler: certificate frame for multiples of z²∂12."""
    return [_m({(0, 2): 1}), _m({(1, 2): 1}), _m({(0, 0): 1, (1, 1): 1, (2, 2): 1})]


FRAME_NAMES = {
    "diagonal": "x∂1, y∂2, z∂3",
    "rotation": "x∂1+y∂2, x∂2−y∂1, z∂3",
    "shear": "x∂1+y∂2, x∂2, z∂3",
    "euler_nilpotent": "E, x∂2+y∂3, x∂3",
    "euler_mixed": "E, x∂2, (ax+(3b+1)z)∂3",
}


def generator_matrix(i, j):
    """E_ij ↦ x_i ∂_j (one-based) as a frame-convention matrix."""
    return _m({(j - 1, i - 1): 1})


def combo(*pairs):
    a = [[F(0)] * 3 for _ in range(3)]
    for c, (i, j) in pairs:
        a[j - 1][i - 1] += F(c)
    return a


class DhcEntry:
    def __init__(self, index, params, Lambda, frame_name, frame, alpha, twist,
                 is_srmi, condition, certificate=None, reference_stabilizer=None,
                 reference_image=None):
        self.index = index
        self.params = params
        self.Lambda = Lambda
        self.frame_name = frame_name
        self.srmi_part = SrmiStructure(LinFrame(frame), alpha)
        self.twist = twist
        self.is_srmi = is_srmi
        self.condition = condition
        self.certificate = certificate
        self.reference_stabilizer = reference_stabilizer
        self.reference_image = reference_image
        self.verify()

    def verify(self):
        L = self.Lambda
        if self.srmi_part.Lambda + self.twist != L:
            raise AssertionError("decomposition of class %d is not exact" % self.index)
        if not is_poisson(L):
            raise AssertionError("class %d is not Poisson" % self.index)
        if not schouten(self.twist, self.twist).is_zero():
            raise AssertionError("twist of class %d is not Poisson" % self.index)
        if not schouten(self.srmi_part.Lambda, self.twist).is_zero():
            raise AssertionError("twist of class %d is not compatible" % self.index)
        if self.is_srmi:
            frame, alpha = self.certificate
            if not rmatrix_certificate(LinFrame(frame), alpha, L):
                raise AssertionError("SRMI certificate of class %d fails" % self.index)
        return True

    def stabilizer_check(self):
        """(stabilizer basis, Λ ∈ J² image, image basis, reference-data agreement or None)."""
        stab = stabilizer(self.Lambda)
        member, img = j2_image_membership(self.Lambda, stab)
        agree = None
        if self.reference_stabilizer is not None:
            from .srmi import linear_field
            st_ok = len(stab) == len(self.reference_stabilizer) and same_span(
                [linear_field(a) for a in stab],
                [linear_field(a) for a in self.reference_stabilizer])
            im_ok = same_span(img, self.reference_image)
            agree = st_ok and im_ok
        return stab, member, img, agree

    def describe(self):
        return {
            "index": self.index,
            "params": {k: str(v) for k, v in self.params.items()},
            "frame": FRAME_NAMES[self.frame_name],
            "srmi_condition": self.condition,
            "is_srmi": self.is_srmi,
            "Lambda": str(self.Lambda),
            "srmi_part": str(self.srmi_part.Lambda),
            "twist": str(self.twist),
        }


PARAMS = {
    1: ("a", "b", "c"), 2: ("a", "b"), 3: ("a",), 4: ("a", "b"), 5: ("a",), 6: ("a",),
    7: ("a", "b", "c"), 8: ("a", "b", "eps"), 9: ("a",), 10: ("a",), 11: ("b", "c"),
    12: ("b", "c"), 13: ("a", "b", "c"),
}

CONDITIONS = {
    1: "always", 2: "always", 3: "always", 4: "iff (a,b) = (0,0)", 5: "always (a ≠ -1/2)",
    6: "always", 7: "always", 8: "iff (a,b) = (0,0)", 9: "always", 10: "iff a = -1/3",
    11: "iff c = 0 (a = 0 fixed)", 12: "iff c = 0 (a = 1 fixed)", 13: "never",
}

DEFAULTS = {"eps": F(1)}


def _params(index, raw):
    names = PARAMS[index]
    out = {}
    for k in names:
        if k in raw:
            v = raw[k]
            out[k] = F(v) if not isinstance(v, str) else parse_scalar(v)
            if not isinstance(out[k], Fraction):
                raise ParameterViolation("parameter %s must be rational" % k)
        else:
            out[k] = DEFAULTS.get(k, F(1))
    extra = set(raw) - set(names)
    if extra:
        raise ParameterViolation("class %d takes parameters %s, got %s"
                                 % (index, ",".join(names), ",".join(sorted(extra))))
    return out


def dhc_catalog(index, params=None):
    """Build catalog entry ``index`` (1..13). Missing parameters default to 1
    (eps defaults to +1)."""
    if not isinstance(index, int) or not 1 <= index <= 13:
        raise UnknownIndex("catalog index must be in 1..13, got %r" % (index,))
    p = _params(index, params or {})
    return _BUILDERS[index](p)


def _zero():
    return MultiVec(3, 2, 2)


def _third_pi_z3():
    return hamiltonian_bivector((z ** 3).scale(F(1, 3)))


def _build1(p):
    a, b, c = p["a"], p["b"], p["c"]
    L = bivector((y * z).scale(a), (x * z).scale(b), (x * y).scale(c))
    al = alpha3(a, b, c)
    return DhcEntry(1, p, L, "diagonal", frame_diagonal(), al, _zero(), True,
                    CONDITIONS[1], certificate=(frame_diagonal(), al))


def _build4(p):
    a, b = p["a"], p["b"]
    L = bivector((y * z).scale(a), (x * z).scale(a), (x * y).scale(b) + z * z)
    srmi = a == 0 and b == 0
    return DhcEntry(4, p, L, "diagonal", frame_diagonal(), alpha3(a, a, b), _third_pi_z3(),
                    srmi, CONDITIONS[4],
                    certificate=(frame_z_planar(), alpha3(0, 0, 1)) if srmi else None,
                    reference_stabilizer=None if srmi else [
                        combo((F(1, 2), (1, 1)), (1, (2, 2))),
                        combo((F(1, 2), (1, 1)), (1, (3, 3)))],
                    reference_image=None if srmi else [
                        bivector(y * z, (x * z).scale(F(-1, 2)), (x * y).scale(F(-1, 2)))])


def _build2(p):
    a, b = p["a"], p["b"]
    L = bivector((x.scale(2 * a) - y.scale(b)) * z, (x.scale(b) + y.scale(2 * a)) * z,
                 (x * x + y * y).scale(a))
    al = alpha3(2 * a, b, a)
    return DhcEntry(2, p, L, "rotation", frame_rotation(), al, _zero(), True,
                    CONDITIONS[2], certificate=(frame_rotation(), al))


def _build7(p):
    a, b, c = p["a"], p["b"], p["c"]
    L = bivector((x.scale(2 * a + c) - y.scale(b)) * z, (x.scale(b) + y.scale(2 * a + c)) * z,
                 (x * x + y * y).scale(a))
    al = alpha3(2 * a + c, b, a)
    return DhcEntry(7, p, L, "rotation", frame_rotation(), al, _zero(), True,
                    CONDITIONS[7], certificate=(frame_rotation(), al))


def _build8(p):
    a, b, eps = p["a"], p["b"], p["eps"]
    if eps not in (1, -1):
        raise ParameterViolation("eps must be +1 or -1")
    L = bivector((x * z).scale(a), (y * z).scale(a),
                 (x * x + y * y).scale((a + b) / 2) + (z * z).scale(eps))
    srmi = a == 0 and b == 0
    return DhcEntry(8, p, L, "rotation", frame_rotation(), alpha3(a, 0, (a + b) / 2),
                    _third_pi_z3().scale(eps), srmi, CONDITIONS[8],
                    certificate=(frame_z_planar(), alpha3(0, 0, eps)) if srmi else None,
                    reference_stabilizer=None if srmi else [
                        combo((1, (1, 1)), (1, (2, 2)), (1, (3, 3))),
                        combo((1, (1, 2)), (-1, (2, 1)))],
                    reference_image=None if srmi else [
                        bivector(-(x * z), -(y * z), x * x + y * y)])


def _build3(p):
    a = p["a"]
    L = bivector((x.scale(2) - y.scale(a)) * z, (x * z).scale(a), x * x)
    al = alpha3(2, a, 1)
    return DhcEntry(3, p, L, "shear", frame_shear(), al, _zero(), True, CONDITIONS[3],
                    certificate=(frame_shear(), al))


def _build5(p):
    a = p["a"]
    if a == F(-1, 2):
        raise ParameterViolation("class 5 requires a ≠ -1/2")
    L = bivector((x.scale(2 * a + 1) + y) * z, -(x * z), (x * x).scale(a))
    al = alpha3(2 * a + 1, -1, a)
    return DhcEntry(5, p, L, "shear", frame_shear(), al, _zero(), True, CONDITIONS[5],
                    certificate=(frame_shear(), al))


def _build6(p):
    a = p["a"]
    L = bivector((y * z).scale(a), (x * z).scale(-a), (x * x).scale(F(-1, 2)))
    al = alpha3(0, -a, F(-1, 2))
    return DhcEntry(6, p, L, "shear", frame_shear(), al, _zero(), True, CONDITIONS[6],
                    certificate=(frame_shear(), al))


def _build9(p):
    a = p["a"]
    L = bivector((x * x).scale(a) - (y * y).scale(F(1, 3)) + (x * z).scale(F(1, 3)),
                 (x * y).scale(F(1, 3)), (x * x).scale(F(-1, 3)))
    al = alpha3(a, 0, F(-1, 3))
    return DhcEntry(9, p, L, "euler_nilpotent", frame_euler_nilpotent(), al, _zero(), True,
                    CONDITIONS[9], certificate=(frame_euler_nilpotent(), al))


def _build10(p):
    a = p["a"]
    L = bivector((y * y).scale(a) - (x * z).scale(4 * a + 1), (x * y).scale(2 * a + 1),
                 (x * x).scale(-(2 * a + 1)))
    al = alpha3(0, 0, -(2 * a + 1))
    twist = bivector((y * y - (x * z).scale(2)).scale(3 * a + 1), 0, 0)
    srmi = a == F(-1, 3)
    return DhcEntry(10, p, L, "euler_nilpotent", frame_euler_nilpotent(), al, twist, srmi,
                    CONDITIONS[10],
                    certificate=(frame_euler_nilpotent(), al) if srmi else None,
                    reference_stabilizer=None if srmi else [
                        combo((1, (1, 1)), (1, (2, 2)), (1, (3, 3))),
                        combo((1, (1, 2)), (1, (2, 3)))],
                    reference_image=None if srmi else [
                        bivector(y * y - x * z, -(x * y), x * x)])


def _euler_mixed_frame(a, b):
    if a == 0 and b == F(-1, 3):
        raise ParameterViolation("frame degenerates for a = 0, b = -1/3")
    return frame_euler_mixed(a, b)



def _mixed_reference():
    return ([combo((1, (1, 1)), (1, (2, 2)), (1, (3, 3))), combo((1, (1, 2))), combo((1, (3, 2)))],
            [bivector(-(x * z), 0, x * x), bivector(z * z, 0, -(x * z))])


def _build_11_12(index, a):
    def build(p):
        b, c = p["b"], p["c"]
        fr = _euler_mixed_frame(a, b)
        L = bivector((x * x).scale(a) + (x * z).scale(2 * b + 1), 0,
                     (x * x).scale(b) + (z * z).scale(c))
        al = alpha3(1, 0, b)
        srmi = c == 0
        st, im = _mixed_reference()
        return DhcEntry(index, p, L, "euler_mixed", fr, al, _third_pi_z3().scale(c), srmi,
                        CONDITIONS[index], certificate=(fr, al) if srmi else None,
                        reference_stabilizer=None if srmi else st,
                        reference_image=None if srmi else im)
    return build


def _build13(p):
    a, b, c = p["a"], p["b"], p["c"]
    fr = _euler_mixed_frame(a, b)
    L = bivector((x * x).scale(a) + (x * z).scale(2 * b + 1) + z * z, 0,
                 (x * x).scale(b) + (z * z).scale(c) + (x * z).scale(2))
    twist = hamiltonian_bivector((z ** 3).scale(c / 3) + x * z * z)
    st, im = _mixed_reference()
    return DhcEntry(13, p, L, "euler_mixed", fr, alpha3(1, 0, b), twist, False,
                    CONDITIONS[13], reference_stabilizer=st, reference_image=im)


_BUILDERS = {1: _build1, 2: _build2, 3: _build3, 4: _build4, 5: _build5, 6: _build6,
             7: _build7, 8: _build8, 9: _build9, 10: _build10,
             11: _build_11_12(11, F(0)), 12: _build_11_12(12, F(1)), 13: _build13}


def twist_curl_10():
    """Curl of the class-10 twist direction (y² − 2xz)∂23."""
    from .multivector import curl
    return curl(bivector(y * y - (x * z).scale(2), 0, 0))
