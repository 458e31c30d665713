"""Exact p-adic multilinear Hausdorff operators on radial power-log functions.

The package computes Hausdorff operators, their commutators with radial
symbols, and weighted Lebesgue / Morrey / oscillation norms exactly on a
closed algebra of radial functions over Q_p^n, and verifies the boundedness
inequalities and sharp constants that govern them.
"""

from .numeric import ExtendedValue, Number
from .padic import PAdicMatrix, PAdicVector, pnorm, valuation
from .radial import RadialFunction, RadialTerm, ball_measure, integrate_radial, sphere_measure

__all__ = [
    "ExtendedValue",
    "Number",
    "PAdicMatrix",
    "PAdicVector",
    "pnorm",
    "valuation",
    "RadialFunction",
    "RadialTerm",
    "ball_measure",
    "integrate_radial",
    "sphere_measure",
]

__version__ = "0.1.0"
