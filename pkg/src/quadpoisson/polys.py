"""
Homogeneous polynomials in n variables with exact coefficients.

Monomials are exponent tuples. The global monomial order is lexicographic
with x1 > x2 > ... > xn; :func:`monomial_basis` lists a degree slice in
increasing order, which is Python's native tuple order.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb

from .linalg import SparseMatrix, solve
from .scalars import format_scalar, parse_scalar, normalize


class NotDivisible(ArithmeticError):
    pass


class ZeroDivisor(ZeroDivisionError):
    pass


VARNAMES3 = ("x", "y", "z")


@lru_cache(maxsize=None)
def monomial_basis(n, r):
    """All exponent tuples of length n and total degree r, lex-increasing."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    out = []
    for bars in itertools.combinations(range(r + n - 1), n - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(r + n - 2 - prev)
        out.append(tuple(exps))
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n, r):
    return {m: i for i, m in enumerate(monomial_basis(n, r))}


def basis_size(n, r):
    return comb(r + n - 1, n - 1) if r >= 0 else 0


class HomPoly:
    """A homogeneous polynomial of degree ``deg`` in ``n`` variables."""

    __slots__ = ("n", "deg", "terms")

    def __init__(self, n, deg, terms=None, check=True):
        self.n = n
        self.deg = deg
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    m = tuple(m)
                    if check and (len(m) != n or sum(m) != deg or min(m) < 0):
                        raise ValueError("monomial %r does not fit (n=%d, deg=%d)" % (m, n, deg))
                    t[m] = c
        self.terms = t

    # constructors

    @classmethod
    def zero(cls, n, deg):
        return cls(n, deg)

    @classmethod
    def const(cls, n, c):
        return cls(n, 0, {(0,) * n: c})

    @classmethod
    def var(cls, n, i, c=1):
        """c * x_i, with i zero-based."""
        m = [0] * n
        m[i] = 1
        return cls(n, 1, {tuple(m): c})

    @classmethod
    def monomial(cls, exps, c=1):
        exps = tuple(exps)
        return cls(len(exps), sum(exps), {exps: c})

    @classmethod
    def linear_form(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                m = [0] * n
                m[i] = 1
                terms[tuple(m)] = c
        return cls(n, 1, terms)

    @classmethod
    def from_vector(cls, n, deg, vec):
        basis = monomial_basis(n, deg)
        return cls(n, deg, {basis[i]: c for i, c in vec.items()}, check=False)

    # basic protocol

    def is_zero(self):
        return not self.terms

    __bool__ = lambda self: bool(self.terms)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("dimension mismatch")

    def __eq__(self, other):
        if isinstance(other, HomPoly):
            if self.n != other.n:
                return False
            if not self.terms and not other.terms:
                return True
            return self.deg == other.deg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.deg, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, HomPoly):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.deg != other.deg:
            raise ValueError("adding polynomials of degrees %d and %d" % (self.deg, other.deg))
        t = dict(self.terms)
        for m, c in other.terms.items():
            x = t.get(m)
            if x is None:
                t[m] = c
            else:
                x = x + c
                if x:
                    t[m] = x
                else:
                    del t[m]
        return HomPoly(self.n, self.deg, t, check=False)

    __radd__ = __add__

    def __neg__(self):
        return HomPoly(self.n, self.deg, {m: -c for m, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return HomPoly(self.n, self.deg)
        return HomPoly(self.n, self.deg, {m: c * x for m, x in self.terms.items()}, check=False)

    def __mul__(self, other):
        if not isinstance(other, HomPoly):
            return self.scale(other)
        self._check(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                x = t.get(m)
                t[m] = c1 * c2 if x is None else x + c1 * c2
        return HomPoly(self.n, self.deg + other.deg, t, check=False)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = HomPoly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def coeff(self, m):
        return self.terms.get(tuple(m), 0)

    def deriv(self, i):
        """Partial derivative in x_i (zero-based)."""
        if self.deg == 0:
            return HomPoly(self.n, 0)
        t = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                t[mm] = c * e
        return HomPoly(self.n, self.deg - 1, t, check=False)

    def to_vector(self):
        """Coefficient vector in the lex-increasing monomial basis."""
        idx = monomial_index(self.n, self.deg)
        return {idx[m]: c for m, c in self.terms.items()}

    def evaluate(self, point):
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x ** e
            total = total + v
        return total

    def map_coeffs(self, f):
        return HomPoly(self.n, self.deg, {m: f(c) for m, c in self.terms.items()}, check=False)

    def substitute_linear(self, M):
        """P(M·x): variable x_k is replaced by the linear form Σ_l M[k][l] x_l."""
        forms = [HomPoly.linear_form(row) for row in M]
        out = HomPoly(self.n, self.deg)
        for m, c in self.terms.items():
            term = HomPoly.const(self.n, c)
            for k, e in enumerate(m):
                for _ in range(e):
                    term = term * forms[k]
            out = out + term
        return out

    def is_proportional(self, other):
        """True when self = c*other for a nonzero scalar c (both nonzero)."""
        if not self.terms or not other.terms or self.deg != other.deg:
            return False
        if set(self.terms) != set(other.terms):
            return False
        m0 = next(iter(other.terms))
        c = self.terms[m0] / other.terms[m0]
        return all(self.terms[m] == c * other.terms[m] for m in other.terms)

    # text

    def to_literal(self):
        """Mapping "e1,...,en" -> scalar string."""
        return {",".join(map(str, m)): format_scalar(c)
                for m, c in sorted(self.terms.items(), reverse=True)}

    @classmethod
    def from_literal(cls, lit, n=None, deg=None):
        terms = {}
        for k, v in lit.items():
            m = tuple(int(e) for e in k.split(","))
            terms[m] = normalize(parse_scalar(v))
        if n is None or deg is None:
            if not terms:
                raise ValueError("cannot infer n/deg of an empty literal")
            m0 = next(iter(terms))
            n = len(m0) if n is None else n
            deg = sum(m0) if deg is None else deg
        return cls(n, deg, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = VARNAMES3 if self.n == 3 else tuple("x%d" % (i + 1) for i in range(self.n))
        parts = []
        for m, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                names[i] + ("^%d" % e if e > 1 else "") for i, e in enumerate(m) if e)
            cs = format_scalar(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                if " i" in cs:
                    cs = "(%s)" % cs
                parts.append(cs + "*" + mono)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "HomPoly(%s)" % self


def const_matrix_check(Y, n):
    if len(Y) != n or any(len(row) != n for row in Y):
        raise ValueError("expected an %dx%d matrix" % (n, n))


def apply_linvf(Y, P):
    """Apply the linear vector field Σ Y[m][p] x_p ∂_m to P (degree preserved)."""
    n = P.n
    const_matrix_check(Y, n)
    out = {}
    for mono, c in P.terms.items():
        for m in range(n):
            e = mono[m]
            if not e:
                continue
            row = Y[m]
            for p in range(n):
                a = row[p]
                if not a:
                    continue
                if p == m:
                    new = mono
                else:
                    new = list(mono)
                    new[m] -= 1
                    new[p] += 1
                    new = tuple(new)
                x = out.get(new)
                v = a * e * c
                out[new] = v if x is None else x + v
    return HomPoly(n, P.deg, out, check=False)


def linvf_matrix(Y, n, r):
    """Matrix of P -> apply_linvf(Y, P) on the degree-r monomial basis."""
    basis = monomial_basis(n, r)
    idx = monomial_index(n, r)
    cols = []
    for mono in basis:
        img = apply_linvf(Y, HomPoly(n, r, {mono: 1}, check=False))
        cols.append({idx[m]: c for m, c in img.terms.items()})
    return SparseMatrix(len(basis), len(basis), cols)


def multiplication_matrix(D, r):
    """Matrix of T -> D*T from degree r to degree r + deg D."""
    n = D.n
    src = monomial_basis(n, r)
    idx = monomial_index(n, r + D.deg)
    cols = []
    for mono in src:
        col = {}
        for m, c in D.terms.items():
            col[idx[tuple(a + b for a, b in zip(m, mono))]] = c
        cols.append(col)
    return SparseMatrix(len(idx), len(src), cols)


def divides(D, Q):
    """Exact quotient T with Q = D*T, found by a linear solve.

    Raises ZeroDivisor for D = 0 and NotDivisible when no T exists."""
    if D.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if D.n != Q.n:
        raise ValueError("dimension mismatch")
    if Q.is_zero():
        return HomPoly(Q.n, max(Q.deg - D.deg, 0))
    k = Q.deg - D.deg
    if k < 0:
        raise NotDivisible("degree of divisor exceeds degree of dividend")
    M = multiplication_matrix(D, k)
    sol = solve(M, Q.to_vector())
    if sol is None:
        raise NotDivisible("%s does not divide %s" % (D, Q))
    return HomPoly.from_vector(Q.n, k, sol)


def try_divide(D, Q):
    try:
        return divides(D, Q)
    except NotDivisible:
        return None


def det(M):
    """Determinant of a small square matrix of HomPoly (or scalars) by memoized
    Laplace expansion along the first remaining row."""
    k = len(M)
    if k == 0:
        return None
    cache = {}

    def rec(row, cols):
        if row == k:
            return None
        key = (row, cols)
        if key in cache:
            return cache[key]
        total = None
        sign = 1
        for pos, c in enumerate(cols):
            entry = M[row][c]
            rest = cols[:pos] + cols[pos + 1:]
            sub = rec(row + 1, rest)
            term = entry if sub is None else entry * sub
            if sign < 0:
                term = -term
            total = term if total is None else total + term
            sign = -sign
        cache[key] = total
        return total

    return rec(0, tuple(range(k)))


def poly_det(M, n):
    """det of a HomPoly matrix; the empty matrix has determinant 1."""
    if len(M) == 0:
        return HomPoly.const(n, Fraction(1))
    return det(M)
