"""Closed geodesics and string topology bookkeeping for compact symmetric spaces."""

from symloop.errors import SymloopError
from symloop.rootspace import SymmetricSpaceData, catalog, load_space, validate

__all__ = [
    "SymloopError",
    "SymmetricSpaceData",
    "catalog",
    "load_space",
    "validate",
]
__version__ = "0.1.0"
