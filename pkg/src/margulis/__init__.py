"""Margulis invariants of affine deformations of two-generator Schottky groups."""

__version__ = "0.1.0"

from .errors import MargulisError  # noqa: E402

__all__ = ["MargulisError", "__version__"]
