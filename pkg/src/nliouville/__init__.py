"""Verification toolkit for the weighted N-Laplacian Liouville equation."""
