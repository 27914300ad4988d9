"""Exact computations in the symplectic blob algebra b_n^x."""

__version__ = "0.1.0"
