"""Exact chain-level toolkit for Hochschild homology of symmetric powers of DG categories."""
__version__ = "0.1.0"
