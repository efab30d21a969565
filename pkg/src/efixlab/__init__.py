"""Fixed-point laboratory for E-distances on metric-induced uniform spaces."""

__version__ = "0.1.0"
