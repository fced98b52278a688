"""Exact and certified arithmetic for OT manifolds X(K, U)."""

__version__ = "0.1.0"
