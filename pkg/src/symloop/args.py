"""Shared argparse utilities for the symloop CLI."""

from __future__ import annotations

import argparse
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING

from symloop import linalg
from symloop.errors import Unsupported

if TYPE_CHECKING:
    from symloop.rootspace import SymmetricSpaceData


def positive_int(value: str) -> int:
    """Argparse type: positive integer.

    Raises:
        argparse.ArgumentTypeError: If value is not a positive integer.
    """
    try:
        n = int(value)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got '{value}'") from err
    if n <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {n}")
    return n


def nonneg_int(value: str) -> int:
    """Argparse type: integer >= 0."""
    try:
        n = int(value)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{value}'") from err
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def rational(value: str) -> Fraction:
    """Argparse type: exact rational such as ``16`` or ``5/2``."""
    try:
        return linalg.parse_rational(value)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def positive_rational(value: str) -> Fraction:
    q = rational(value)
    if q <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return q


def ratvec(value: str) -> linalg.RatVec:
    """Argparse type: comma-separated rationals such as ``2,1``."""
    try:
        return linalg.parse_ratvec(value)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


# ---------------------------------------------------------------------------
# --space / --product
# ---------------------------------------------------------------------------


def add_space_arguments(parser: argparse.ArgumentParser, *, required: bool = True) -> None:
    """Add the mutually exclusive ``--space`` / ``--product`` options."""
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument(
        "--space",
        help="Catalog name (sphere(3), cpn(2), gr2c4, a*b) or path to a space file",
    )
    group.add_argument(
        "--product",
        metavar="S1,S2",
        help="Product of two spaces, each a catalog name or space file",
    )


def load_space_arg(value: str) -> SymmetricSpaceData:
    """Resolve one space argument: an existing file path, else a catalog name."""
    from symloop.rootspace import catalog, load_space

    if Path(value).is_file():
        return load_space(value)
    return catalog(value)


def resolve_space(parsed: argparse.Namespace) -> SymmetricSpaceData:
    """Return the space selected by ``--space`` or ``--product``."""
    if getattr(parsed, "product", None):
        from symloop.products import compose

        parts = [p for p in parsed.product.split(",") if p.strip()]
        if len(parts) != 2:
            raise Unsupported(
                f"--product expects two spaces 'S1,S2', got '{parsed.product}'; "
                "use --space a*b*c for more factors"
            )
        return compose(load_space_arg(parts[0]), load_space_arg(parts[1])).space
    return load_space_arg(parsed.space)
