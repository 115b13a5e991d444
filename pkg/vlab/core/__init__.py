"""
Core module for vlab

This module contains the numerical code: Gamma products, kernels, residues, identities and the preset catalog.
"""
