"""symloop validate / info: restricted-root data of a compact symmetric space.

A space is given by its positive restricted roots (as root vectors α^♯ in 𝔞, so
that α(H) = α^♯ᵀ·G·H), their multiplicities, the Gram matrix G of the invariant
inner product on 𝔞 and a basis of the unit lattice 𝓕 = {H | Exp(H) = o}.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any

from symloop import linalg
from symloop.args import add_space_arguments, resolve_space
from symloop.errors import DocumentError, InvalidSpace, NotClosed, NotInCatalog, ZeroDirection
from symloop.io import check_keys, load_document, safe_parse
from symloop.linalg import RatMatrix, RatVec
from symloop.types import RootDocument, SpaceDocument

logger = logging.getLogger(__name__)

CATALOG_NAMES = ("sphere(n), n >= 2", "cpn(n), n >= 1", "gr2c4")


@dataclass(frozen=True)
class RootDatum:
    functional: RatVec
    multiplicity: int


@dataclass(frozen=True)
class Lattice:
    """Unit lattice spanned by ``basis`` (the generators X_1, ..., X_r)."""

    basis: tuple[RatVec, ...]

    @cached_property
    def _to_coordinates(self) -> RatMatrix:
        return linalg.inverse(linalg.columns_to_matrix(self.basis))

    def coordinates(self, H: RatVec) -> RatVec:
        """Coordinates of H in the lattice basis."""
        return linalg.mat_vec(self._to_coordinates, H)

    def point(self, coords: RatVec | tuple[int, ...]) -> RatVec:
        r = len(self.basis)
        out = linalg.zero(r)
        for c, x in zip(coords, self.basis, strict=True):
            out = linalg.add(out, linalg.scale(c, x))
        return out

    def contains(self, H: RatVec) -> bool:
        return linalg.is_integral(self.coordinates(H))


@dataclass(frozen=True)
class SymmetricSpaceData:
    name: str
    rank: int
    positive_roots: tuple[RootDatum, ...]
    gram: RatMatrix
    lattice: Lattice
    dim_n: int
    z2_orientable_cycles: bool = False

    def evaluate(self, root_index: int, H: RatVec) -> Fraction:
        """α(H) for the root at *root_index*."""
        return linalg.bilinear(self.gram, self.positive_roots[root_index].functional, H)

    def root_values(self, H: RatVec) -> tuple[Fraction, ...]:
        return tuple(self.evaluate(i, H) for i in range(len(self.positive_roots)))

    def inner(self, u: RatVec, v: RatVec) -> Fraction:
        return linalg.bilinear(self.gram, u, v)

    def reflect(self, root_index: int, H: RatVec) -> RatVec:
        """s_α(H) = H − 2·α(H)/⟨α,α⟩·α^♯."""
        f = self.positive_roots[root_index].functional
        c = 2 * self.inner(f, H) / self.inner(f, f)
        return linalg.sub(H, linalg.scale(c, f))

    def root_index_of(self, functional: RatVec) -> tuple[int, int] | None:
        """Return ``(index, sign)`` if ±functional is a positive root."""
        neg = linalg.scale(-1, functional)
        for i, root in enumerate(self.positive_roots):
            if root.functional == functional:
                return i, 1
            if root.functional == neg:
                return i, -1
        return None


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    space: str
    checks: tuple[ValidationCheck, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks if not c.passed)


# ---------------------------------------------------------------------------
# Lattice helpers
# ---------------------------------------------------------------------------


def evaluate(space: SymmetricSpaceData, root_index: int, H: RatVec) -> Fraction:
    return space.evaluate(root_index, H)


def lattice_coordinates(space: SymmetricSpaceData, H: RatVec) -> RatVec:
    return space.lattice.coordinates(H)


def in_lattice(space: SymmetricSpaceData, H: RatVec) -> bool:
    return space.lattice.contains(H)


def require_lattice_point(space: SymmetricSpaceData, H: RatVec) -> tuple[int, ...]:
    """Return the integer lattice coordinates of H.

    Raises:
        ZeroDirection: If H = 0.
        NotClosed: If H is not in the unit lattice.
    """
    if len(H) != space.rank:
        raise NotClosed(f"H={linalg.format_ratvec(H)} has length {len(H)}, rank is {space.rank}")
    if linalg.is_zero(H):
        raise ZeroDirection("H = 0 is the constant loop")
    coords = space.lattice.coordinates(H)
    if not linalg.is_integral(coords):
        raise NotClosed(
            f"H={linalg.format_ratvec(H)} has lattice coordinates "
            f"{linalg.format_ratvec(coords)}; not a closed geodesic"
        )
    return tuple(int(c) for c in coords)


def primitive_decomposition(space: SymmetricSpaceData, H: RatVec) -> tuple[RatVec, int]:
    """Split a lattice point H as k·primitive with k the gcd of its lattice coordinates."""
    coords = require_lattice_point(space, H)
    k = linalg.integer_gcd(coords)
    return linalg.scale(Fraction(1, k), H), k


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _structural_checks(space: SymmetricSpaceData) -> list[ValidationCheck]:
    r = space.rank
    checks = [ValidationCheck("rank", r >= 1, f"rank {r}")]
    square = len(space.gram) == r and all(len(row) == r for row in space.gram)
    checks.append(ValidationCheck("gram-shape", square, f"expected {r}x{r}"))
    lengths = all(len(root.functional) == r for root in space.positive_roots) and all(
        len(x) == r for x in space.lattice.basis
    )
    checks.append(ValidationCheck("vector-lengths", lengths, f"every vector has length {r}"))
    checks.append(
        ValidationCheck(
            "lattice-basis-size", len(space.lattice.basis) == r, f"{r} generators required"
        )
    )
    return checks


def validate(
    space: SymmetricSpaceData, *, strict: bool = False, reduced: bool = False
) -> ValidationReport:
    """Check every invariant of *space*; the report's ``ok`` is their conjunction.

    With ``strict`` the root system axioms are checked as well; ``reduced``
    additionally forbids proportional pairs such as (α, 2α).
    """
    checks = _structural_checks(space)
    if not all(c.passed for c in checks):
        return ValidationReport(space.name, tuple(checks))

    gram = space.gram
    roots = space.positive_roots
    checks.append(ValidationCheck("gram-symmetric", linalg.is_symmetric(gram)))
    pd = linalg.is_symmetric(gram) and linalg.is_positive_definite(gram)
    checks.append(ValidationCheck("gram-positive-definite", pd))
    if not pd:
        return ValidationReport(space.name, tuple(checks))

    nonzero = all(not linalg.is_zero(root.functional) for root in roots)
    distinct = len({root.functional for root in roots}) == len(roots)
    checks.append(ValidationCheck("root-functionals", nonzero and distinct, "nonzero, distinct"))
    checks.append(
        ValidationCheck("multiplicities", all(root.multiplicity >= 1 for root in roots), ">= 1")
    )

    basis_det = linalg.det(linalg.columns_to_matrix(space.lattice.basis))
    independent = basis_det != 0
    checks.append(ValidationCheck("lattice-basis", independent, f"det {basis_det}"))

    total = space.rank + sum(root.multiplicity for root in roots)
    checks.append(
        ValidationCheck("dimension", space.dim_n == total, f"dim_n {space.dim_n}, r + Σm {total}")
    )

    bad = [
        f"α{i}(X{j})"
        for i in range(len(roots))
        for j, x in enumerate(space.lattice.basis)
        if space.evaluate(i, x).denominator != 1
    ]
    checks.append(ValidationCheck("lattice-integrality", not bad, ", ".join(bad)))

    if independent and nonzero:
        moved = [
            f"s{i}(X{j})"
            for i in range(len(roots))
            for j, x in enumerate(space.lattice.basis)
            if not space.lattice.contains(space.reflect(i, x))
        ]
        checks.append(ValidationCheck("lattice-weyl-invariance", not moved, ", ".join(moved)))

    if strict and nonzero:
        checks.extend(_root_system_checks(space, reduced=reduced))

    report = ValidationReport(space.name, tuple(checks))
    logger.debug(
        "validated %s: %d checks, %d failed", space.name, len(checks), len(report.failures)
    )
    return report


def _root_system_checks(space: SymmetricSpaceData, *, reduced: bool) -> list[ValidationCheck]:
    roots = space.positive_roots
    not_closed: list[str] = []
    not_integral: list[str] = []
    mult_moved: list[str] = []
    for i, a in enumerate(roots):
        aa = space.inner(a.functional, a.functional)
        for j, b in enumerate(roots):
            if (2 * space.inner(a.functional, b.functional) / aa).denominator != 1:
                not_integral.append(f"<{j},{i}>")
            image = space.root_index_of(space.reflect(i, b.functional))
            if image is None:
                not_closed.append(f"s{i}(α{j})")
            elif roots[image[0]].multiplicity != b.multiplicity:
                mult_moved.append(f"s{i}(α{j})")
    checks = [
        ValidationCheck("reflection-closure", not not_closed, ", ".join(not_closed)),
        ValidationCheck("crystallographic", not not_integral, ", ".join(not_integral)),
        ValidationCheck("multiplicity-invariance", not mult_moved, ", ".join(mult_moved)),
    ]
    if reduced:
        pairs = [
            f"α{i}~α{j}"
            for i in range(len(roots))
            for j in range(i + 1, len(roots))
            if proportionality(roots[i].functional, roots[j].functional) is not None
        ]
        checks.append(ValidationCheck("reduced", not pairs, ", ".join(pairs)))
    return checks


def proportionality(a: RatVec, b: RatVec) -> Fraction | None:
    """Return c with b = c·a, or None."""
    pivot = next((i for i, x in enumerate(a) if x != 0), None)
    if pivot is None:
        return None
    c = b[pivot] / a[pivot]
    return c if linalg.scale(c, a) == b else None


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

_SPHERE_RE = re.compile(r"^sphere(?:\((\d+)\)|(\d+))$")
_CPN_RE = re.compile(r"^cpn(?:\((\d+)\)|(\d+))$")


def _roots(*pairs: tuple[tuple[int | Fraction, ...], int]) -> tuple[RootDatum, ...]:
    out = []
    for functional, m in pairs:
        if m == 0:
            logger.debug("dropping root %s of multiplicity 0", functional)
            continue
        out.append(RootDatum(linalg.vec(functional), m))
    return tuple(out)


def sphere(n: int) -> SymmetricSpaceData:
    if n < 2:
        raise NotInCatalog(f"sphere({n}) requires n >= 2")
    return SymmetricSpaceData(
        name=f"sphere({n})",
        rank=1,
        positive_roots=_roots(((1,), n - 1)),
        gram=linalg.identity(1),
        lattice=Lattice((linalg.vec((2,)),)),
        dim_n=n,
        z2_orientable_cycles=True,
    )


def cpn(n: int) -> SymmetricSpaceData:
    if n < 1:
        raise NotInCatalog(f"cpn({n}) requires n >= 1")
    return SymmetricSpaceData(
        name=f"cpn({n})",
        rank=1,
        positive_roots=_roots(((1,), 2 * n - 2), ((2,), 1)),
        gram=linalg.identity(1),
        lattice=Lattice((linalg.vec((1,)),)),
        dim_n=2 * n,
        z2_orientable_cycles=True,
    )


def gr2c4() -> SymmetricSpaceData:
    half = Fraction(1, 2)
    return SymmetricSpaceData(
        name="gr2c4",
        rank=2,
        positive_roots=_roots(((1, -1), 2), ((1, 1), 2), ((2, 0), 1), ((0, 2), 1)),
        gram=linalg.identity(2),
        lattice=Lattice((linalg.vec((1, 0)), linalg.vec((half, half)))),
        dim_n=8,
        z2_orientable_cycles=True,
    )


def catalog(name: str) -> SymmetricSpaceData:
    """Look up a built-in space by name; ``a*b`` composes products.

    Raises:
        NotInCatalog: If the name is unknown.
    """
    key = name.strip().lower().replace(" ", "")
    if "*" in key:
        from symloop.products import compose_all

        return compose_all([catalog(part) for part in key.split("*")]).space
    if key == "gr2c4":
        return gr2c4()
    if m := _SPHERE_RE.match(key):
        return sphere(int(m.group(1) or m.group(2)))
    if m := _CPN_RE.match(key):
        return cpn(int(m.group(1) or m.group(2)))
    raise NotInCatalog(f"unknown space '{name}'; known: {', '.join(CATALOG_NAMES)}")


# ---------------------------------------------------------------------------
# Space documents
# ---------------------------------------------------------------------------

_SPACE_KEYS = ("name", "rank", "gram", "roots", "lattice_basis")
_SPACE_OPTIONAL = ("dim_n", "z2_orientable_cycles")


def _rational_row(value: Any, length: int, where: str) -> RatVec:
    if not isinstance(value, list) or len(value) != length:
        raise DocumentError(f"{where}: expected a list of {length} rationals")
    try:
        return tuple(linalg.parse_rational(x) for x in value)
    except ValueError as err:
        raise DocumentError(f"{where}: {err}") from err


def space_from_document(doc: dict[str, Any], where: str = "space") -> SymmetricSpaceData:
    """Build a space from a parsed space document.

    Raises:
        DocumentError: On unknown keys, missing keys, or malformed values.
    """
    check_keys(doc, required=_SPACE_KEYS, optional=_SPACE_OPTIONAL, where=where)
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise DocumentError(f"{where}: 'rank' must be a positive integer")
    if not isinstance(doc["name"], str) or not doc["name"]:
        raise DocumentError(f"{where}: 'name' must be a nonempty string")

    gram_rows = doc["gram"]
    if not isinstance(gram_rows, list) or len(gram_rows) != rank:
        raise DocumentError(f"{where}: 'gram' must have {rank} rows")
    gram = tuple(_rational_row(row, rank, f"{where}: gram[{i}]") for i, row in enumerate(gram_rows))

    if not isinstance(doc["roots"], list):
        raise DocumentError(f"{where}: 'roots' must be a list")
    roots = []
    for i, entry in enumerate(doc["roots"]):
        label = f"{where}: roots[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{label}: expected an object")
        check_keys(entry, required=("functional", "multiplicity"), where=label)
        m = entry["multiplicity"]
        if not isinstance(m, int) or isinstance(m, bool):
            raise DocumentError(f"{label}: 'multiplicity' must be an integer")
        roots.append(RootDatum(_rational_row(entry["functional"], rank, label), m))

    basis_rows = doc["lattice_basis"]
    if not isinstance(basis_rows, list) or len(basis_rows) != rank:
        raise DocumentError(f"{where}: 'lattice_basis' must have {rank} vectors")
    basis = tuple(
        _rational_row(row, rank, f"{where}: lattice_basis[{i}]") for i, row in enumerate(basis_rows)
    )

    default_dim = rank + sum(root.multiplicity for root in roots)
    dim_n = doc.get("dim_n", default_dim)
    if not isinstance(dim_n, int) or isinstance(dim_n, bool):
        raise DocumentError(f"{where}: 'dim_n' must be an integer")
    if dim_n != default_dim:
        logger.warning(
            "%s: dim_n %d disagrees with rank + multiplicities %d", where, dim_n, default_dim
        )
    orientable = doc.get("z2_orientable_cycles", False)
    if not isinstance(orientable, bool):
        raise DocumentError(f"{where}: 'z2_orientable_cycles' must be a boolean")

    return SymmetricSpaceData(
        name=doc["name"],
        rank=rank,
        positive_roots=tuple(roots),
        gram=gram,
        lattice=Lattice(basis),
        dim_n=dim_n,
        z2_orientable_cycles=orientable,
    )


def space_to_document(space: SymmetricSpaceData) -> SpaceDocument:
    fmt = linalg.format_rational
    roots: list[RootDocument] = [
        {"functional": [fmt(x) for x in root.functional], "multiplicity": root.multiplicity}
        for root in space.positive_roots
    ]
    return {
        "name": space.name,
        "rank": space.rank,
        "gram": [[fmt(x) for x in row] for row in space.gram],
        "roots": roots,
        "lattice_basis": [[fmt(x) for x in v] for v in space.lattice.basis],
        "dim_n": space.dim_n,
        "z2_orientable_cycles": space.z2_orientable_cycles,
    }


def load_space(path: str | Path) -> SymmetricSpaceData:
    return space_from_document(load_document(path), where=str(path))


# ---------------------------------------------------------------------------
# CLI: validate / info
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop validate."""
    parser = argparse.ArgumentParser(
        prog="symloop validate",
        description="Check the invariants of a space definition.",
    )
    add_space_arguments(parser)
    parser.add_argument("--strict", action="store_true", help="Also check root system axioms")
    parser.add_argument(
        "--reduced", action="store_true", help="With --strict, forbid proportional roots"
    )
    return parser


def main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop validate."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        space = resolve_space(parsed)
        report = validate(space, strict=parsed.strict, reduced=parsed.reduced)
        for check in report.checks:
            status = "ok" if check.passed else "FAIL"
            detail = f"\t{check.detail}" if check.detail else ""
            print(f"{status}\t{check.name}{detail}")
        if not report.ok:
            raise InvalidSpace(f"{space.name}: failed {', '.join(report.failures)}")
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


def _build_info_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop info."""
    parser = argparse.ArgumentParser(
        prog="symloop info",
        description="Summarize roots, lattice and Weyl group of a space.",
    )
    add_space_arguments(parser)
    return parser


def info_main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop info."""
    from symloop import weyl

    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_info_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        space = resolve_space(parsed)
        group = weyl.generate_group(space)
        simple = weyl.simple_roots(space)
        print(f"# space: {space.name}")
        print(f"rank\t{space.rank}")
        print(f"dim\t{space.dim_n}")
        print(f"z2_orientable_cycles\t{'yes' if space.z2_orientable_cycles else 'no'}")
        print(f"weyl_order\t{len(group.elements)}")
        for i, root in enumerate(space.positive_roots):
            mark = "\tsimple" if i in simple else ""
            print(f"root {i}\t{linalg.format_ratvec(root.functional)}\tm={root.multiplicity}{mark}")
        for j, x in enumerate(space.lattice.basis):
            print(f"lattice {j}\t{linalg.format_ratvec(x)}")
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
