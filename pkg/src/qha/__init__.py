"""Exact computations for quiver representation theory."""
