"""Exceptions raised by symloop library code.

Every error carries a ``code`` equal to its class name. The command line prints
``Error: <code>: <message>`` so callers can match on the prefix.
"""

from __future__ import annotations


class SymloopError(ValueError):
    """Base class for domain errors."""

    code = "SymloopError"

    def __init_subclass__(cls, **kwargs: object) -> None:
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__

    def __str__(self) -> str:
        return f"{self.code}: {super().__str__()}"


class NotInCatalog(SymloopError):
    """Unknown catalog name."""


class CapExceeded(SymloopError):
    """A closure or canonicalization loop ran past its cap."""


class ZeroDirection(SymloopError):
    """The direction H = 0 was given where a geodesic direction is required."""


class NotClosed(SymloopError):
    """H is not a point of the unit lattice."""


class NotPrimitive(SymloopError):
    """H is a proper iterate where a prime direction is required."""


class RingMismatch(SymloopError):
    """Intersection ring dimension differs from dim Σ of the critical manifold."""


class ZeroClass(SymloopError):
    """The zero element was given where a nonzero class is required."""


class InhomogeneousClass(SymloopError):
    """A class mixes basis labels of different degrees."""


class Unsupported(SymloopError):
    """The operation is not defined for these inputs."""


class NotApplicable(SymloopError):
    """Inputs fall outside the hypothesis of the verdict."""


class InvalidSpace(SymloopError):
    """Root data failed validation."""


class InvalidRing(SymloopError):
    """Intersection ring failed validation."""


class InvalidCertificate(SymloopError):
    """Polygon certificate failed verification."""


class InvalidPlot(SymloopError):
    """Plot parameters are inconsistent."""


class InvalidFamily(SymloopError):
    """A singular-plane family does not parse or names a root the space lacks."""


class DocumentError(SymloopError):
    """An input document is malformed or has unknown keys."""
