"""Exact degree and tangent-space computations for foliations induced by
quasi-homogeneous rational maps on projective space."""

__version__ = "0.1.0"
