"""Exact computations with symmetric sequences, shuffle algebras and their homology."""

from .exactlin import Matrix, Ring

__version__ = "0.1.0"
__all__ = ["Matrix", "Ring", "__version__"]
