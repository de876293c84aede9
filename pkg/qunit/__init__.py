"""Permutation-symmetry sectors and maximally entangled bases of N identical qunits."""

__version__ = '0.1.0'
