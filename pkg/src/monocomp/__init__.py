"""Monochromatic components with many edges: constructions, checkers and search."""

__version__ = "0.1.0"
