"""Dirac operator on a ball: APS and chiral-bag spectra, spectral flow, mapping degrees."""
__version__ = "0.1.0"
