"""Exact computations around Coble surfaces: Picard lattices of Bl_N P^2,
(-1)-class enumeration, binary-form involutions, rational plane sextics and
the coincidence determinant."""

__version__ = "0.1.0"
