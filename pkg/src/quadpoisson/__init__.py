"""Exact formal Poisson cohomology of quadratic Poisson tensors."""

from .scalars import GaussRat, I
from .polys import HomPoly, monomial_basis, apply_linvf, divides, NotDivisible, ZeroDivisor
from .multivector import MultiVec, wedge, schouten, koszul_div, curl, lp_coboundary

__version__ = "0.1.0"
