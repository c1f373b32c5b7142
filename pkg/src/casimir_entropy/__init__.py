"""Entanglement entropy of cavity modes under parametric resonance of a moving wall."""

from . import dce1d, dcend, gaussian, oracle, special

__version__ = "0.1.0"

__all__ = ["dce1d", "dcend", "gaussian", "oracle", "special", "__version__"]
