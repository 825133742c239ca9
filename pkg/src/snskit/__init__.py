"""Exact computations in the twisted N=1 Schroedinger-Neveu-Schwarz superalgebra."""
__version__ = "0.1.0"
