"""Cactus groups J_3, J_4, their Cayley complexes and the pure subgroups."""

__version__ = "0.1.0"
