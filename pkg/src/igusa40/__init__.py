"""Exact computations around the Igusa quartic and its 40-nodal quadric sections."""

__version__ = "0.1.0"
