"""Exact Virasoro, Jack and Nekrasov computations with verification reports."""

__version__ = "1.0.0"
