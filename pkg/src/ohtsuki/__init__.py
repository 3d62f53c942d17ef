"""Exact computation of Ohtsuki's invariants of integral homology spheres."""

__version__ = "0.1.0"
