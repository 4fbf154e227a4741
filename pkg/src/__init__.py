"""
volprod - polar bodies and volume products of convex polygons.

This package computes polars, Santalo points and volume products of planar
convex bodies and checks the known stability bounds for the planar Mahler
problem numerically.
"""

__version__ = "1.0.0"
__author__ = "Pauly-DData"
__description__ = "Polar bodies, volume products and stability checks for convex polygons"
