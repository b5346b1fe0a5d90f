"""Spectral moments and spacing statistics of random real symmetric Toeplitz matrices."""

__version__ = "0.1.0"
