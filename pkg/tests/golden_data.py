"""Reference values used by the acceptance and cohomology tests."""

from fractions import Fraction as F

from quadpoisson.dhc import bivector
from quadpoisson.polys import HomPoly


def golden_l3():
    return {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 0): 1, (3, 3): 1}


def golden_l9(d_max=9):
    table = {(0, 0): 1, (1, 1): 3, (2, 0): 1, (2, 1): 1, (2, 2): 4, (2, 3): 1}
    for d in range(d_max + 1):
        table[(3, d)] = 1
    for d in range(4, d_max + 1):
        table[(2, d)] = 2
    return table


def poly(d, *terms):
    """Sum of c x^i y^j z^k over (c, i, j, k); terms with a negative exponent are dropped."""
    out = HomPoly(3, d)
    for c, i, j, k in terms:
        if min(i, j, k) >= 0:
            out = out + HomPoly.monomial((i, j, k), F(c))
    return out


def first_family(r, a=F(1)):
    """C_1^r, coefficient degree r + 1."""
    d = r + 1
    return bivector(
        poly(d, (9 * a * a, 1, r, 0), (a * (3 * r - 1) / F(r + 1), 0, 0, r + 1)),
        poly(d, (a, 0, 1, r)),
        poly(d, (-a, 1, 0, r), (-a * r, 0, 2, r - 1)),
        d=d)


def second_family(r, a=F(1)):
    """C_2^r, coefficient degree r + 1."""
    d = r + 1
    return bivector(
        poly(d, (9 * a * a, 1, 2, r - 2), (-9 * a / F(r), 1, 0, r),
             (3 * a * (r - 3) / F(r - 1), 0, 2, r - 1),
             (-3 * F(r - 1) / (r * (r + 1)), 0, 0, r + 1)),
        poly(d, (6 * a / F(r - 1), 1, 1, r - 1), (-a, 0, 3, r - 2), (-F(1, r), 0, 1, r)),
        poly(d, (-a * (r - 2), 0, 4, r - 3), (1, 0, 2, r - 1)),
        d=d)


def l3_degree2_classes(S):
    """Y_23, Y_31 and 2yz∂31 + y²∂12 for class 3."""
    Y = S.frame.wedge_fields
    x, y, z = (HomPoly.var(3, i) for i in range(3))
    return [Y((1, 2)), Y((0, 2)).scale(-1),
            bivector(None, (y * z).scale(2), y * y)]


def l3_degree3_classes():
    """∂123 and y²z∂123."""
    from quadpoisson.multivector import MultiVec
    return [MultiVec(3, 3, 0, {(0, 1, 2): HomPoly.const(3, F(1))}),
            MultiVec(3, 3, 3, {(0, 1, 2): HomPoly.monomial((0, 2, 1))})]
