"""Numerical verification of Hamiltonian isotopies between exotic monotone Lagrangian tori."""

__version__ = "0.1.0"
