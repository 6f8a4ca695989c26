"""Exact spectra of the linearized one-dimensional Gel'fand problems."""
