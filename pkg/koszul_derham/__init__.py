# koszul_derham/__init__.py
"""Exact de Rham and Jacobian Koszul homology for quasi-homogeneous hypersurfaces."""

__version__ = "0.1.0"
