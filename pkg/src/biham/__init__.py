"""Exact micro-local analysis of bihamiltonian structures.

Skew matrix pencils decompose into Kronecker and Jordan blocks; polynomial
bivector fields get exact Poisson, compatibility and Casimir certificates;
lambda-Casimir families feed flatness criteria and anchored Lenard chains.
Everything except one clearly marked ODE helper is exact rational
arithmetic.
"""

from .exactalg import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
