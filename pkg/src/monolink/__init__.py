"""Exact computations for monotone lattice curves: F_C, superpolynomials,
HOMFLY specialisations and convexity/positivity diagnostics."""

__version__ = "0.1.0"
