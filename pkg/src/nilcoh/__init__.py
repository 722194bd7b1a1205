"""Exact Lie-algebra cohomology with complex structures and rank-one twists."""

__version__ = "0.1.0"
