"""Eigendecomposition and spectrum diagnostics"""

from nhscope.spectral.eigen import EigenSystem, eig_biorthogonal, eig_right
from nhscope.spectral.summary import SpectrumSummary, spectrum_summary

__all__ = ["EigenSystem", "SpectrumSummary", "eig_biorthogonal", "eig_right", "spectrum_summary"]
