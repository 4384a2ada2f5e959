"""Toolkit for minimum non-obtuse triangulation of planar straight-line graphs."""

__version__ = "0.1.0"
