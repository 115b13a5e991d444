"""
vlab: A Numerical Laboratory for Hecke-Type Functional Equations

Evaluates the Gamma-product kernels of Dirichlet series with multiple Gamma factors and
checks the modular relations, Riesz sum identities and functional equations they satisfy.
"""

__version__ = "0.1.0"
__author__ = "vlab Development Team"
