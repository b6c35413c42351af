"""symloop cs-product / power: ledger of completing-manifold classes over ℤ₂.

A critical manifold Σ of σ_H is completed by Γ = (G × K_{t_1} × … × K_{t_l}) / K_c^{l+1},
of dimension index + dim Σ. A class f_*∘p_!(a) for a ∈ H_*(Σ) is tracked as
(primitive, k, a); Chas–Sullivan products of classes in the same direction have
leading term (primitive, k₁+k₂, a•b) where • is the intersection product on Σ.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import sys
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any

from symloop import geodesics, linalg
from symloop.args import add_space_arguments, positive_int, ratvec, resolve_space
from symloop.errors import (
    DocumentError,
    InhomogeneousClass,
    InvalidRing,
    NotInCatalog,
    NotPrimitive,
    RingMismatch,
    Unsupported,
    ZeroClass,
)
from symloop.geodesics import CheckResult, Identity
from symloop.io import check_keys, dumps_record, load_document, safe_parse
from symloop.linalg import RatVec
from symloop.rootspace import SymmetricSpaceData, ValidationCheck, primitive_decomposition

logger = logging.getLogger(__name__)

RingElement = frozenset[str]

BUILTIN_RINGS = ("two-class", "unit-tangent-s3")


@dataclass(frozen=True)
class IntersectionRing:
    """Homology of Σ with the intersection product, over ℤ₂.

    ``products`` maps an ordered label pair (i, j) to the labels occurring in i•j;
    missing pairs multiply to zero.
    """

    name: str
    basis: tuple[tuple[str, int], ...]
    products: tuple[tuple[str, str, frozenset[str]], ...]
    fundamental: str
    point: str

    @cached_property
    def _degrees(self) -> dict[str, int]:
        return dict(self.basis)

    @cached_property
    def _table(self) -> dict[tuple[str, str], frozenset[str]]:
        return {(i, j): ks for i, j, ks in self.products}

    @property
    def dim(self) -> int:
        return self._degrees.get(self.fundamental, -1)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.basis)

    def degree(self, label: str) -> int:
        try:
            return self._degrees[label]
        except KeyError:
            raise InvalidRing(f"ring '{self.name}' has no class '{label}'") from None

    def times(self, i: str, j: str) -> frozenset[str]:
        return self._table.get((i, j), frozenset())

    def multiply(self, a: RingElement, b: RingElement) -> RingElement:
        """Bilinear extension of the basis table; ℤ₂ sums are symmetric differences."""
        result: set[str] = set()
        for i in sorted(a):
            for j in sorted(b):
                result ^= self.times(i, j)
        return frozenset(result)

    def element_degree(self, a: RingElement) -> int:
        """Degree of a nonzero homogeneous element.

        Raises:
            ZeroClass: If a = 0.
            InhomogeneousClass: If the labels of a have different degrees.
        """
        if not a:
            raise ZeroClass("the zero class has no degree")
        degrees = {self.degree(label) for label in a}
        if len(degrees) != 1:
            raise InhomogeneousClass(
                f"{format_element(a)} mixes degrees {', '.join(map(str, sorted(degrees)))}"
            )
        return degrees.pop()


def format_element(a: RingElement) -> str:
    return "+".join(sorted(a)) if a else "0"


def parse_element(text: str) -> RingElement:
    """Parse ``a+b`` into a ℤ₂ combination; ``0`` is the zero element."""
    text = text.strip()
    if text == "0":
        return frozenset()
    labels: set[str] = set()
    for part in text.split("+"):
        part = part.strip()
        if not part:
            raise InvalidRing(f"empty label in '{text}'")
        labels ^= {part}
    return frozenset(labels)


# ---------------------------------------------------------------------------
# Ring validation and loading
# ---------------------------------------------------------------------------


def check_ring(ring: IntersectionRing) -> tuple[ValidationCheck, ...]:
    """Exhaustive check of the ring axioms on basis elements."""
    checks: list[ValidationCheck] = []
    labels = ring.labels
    dim = ring.dim

    dupes = sorted({x for x in labels if labels.count(x) > 1})
    checks.append(ValidationCheck("unique-labels", not dupes, ", ".join(dupes)))
    checks.append(
        ValidationCheck(
            "fundamental",
            ring.fundamental in labels and dim >= 0,
            f"fundamental class '{ring.fundamental}'",
        )
    )
    bad_degrees = [label for label, d in ring.basis if not 0 <= d <= dim]
    checks.append(ValidationCheck("degree-range", not bad_degrees, ", ".join(bad_degrees)))
    checks.append(
        ValidationCheck(
            "point",
            ring.point in labels and ring._degrees.get(ring.point) == 0,
            f"point class '{ring.point}' must have degree 0",
        )
    )
    unknown = sorted(
        {x for i, j, ks in ring.products for x in (i, j, *ks) if x not in ring._degrees}
    )
    checks.append(ValidationCheck("known-labels", not unknown, ", ".join(unknown)))
    if any(not c.passed for c in checks):
        return tuple(checks)

    deg = ring._degrees
    ungraded = [
        f"{i}•{j}∋{k}"
        for i, j, ks in ring.products
        for k in sorted(ks)
        if deg[k] != deg[i] + deg[j] - dim
    ]
    checks.append(ValidationCheck("graded", not ungraded, ", ".join(ungraded)))

    unit = frozenset({ring.fundamental})
    not_unit = [
        x
        for x in labels
        if ring.multiply(unit, frozenset({x})) != {x} or ring.multiply(frozenset({x}), unit) != {x}
    ]
    checks.append(ValidationCheck("unit", not not_unit, ", ".join(not_unit)))

    noncommuting = [
        f"{i},{j}"
        for i, j in itertools.combinations(labels, 2)
        if ring.times(i, j) != ring.times(j, i)
    ]
    checks.append(ValidationCheck("commutative", not noncommuting, ", ".join(noncommuting)))

    nonassoc = []
    for x, y, z in itertools.product(labels, repeat=3):
        a, b, c = frozenset({x}), frozenset({y}), frozenset({z})
        if ring.multiply(ring.multiply(a, b), c) != ring.multiply(a, ring.multiply(b, c)):
            nonassoc.append(f"{x},{y},{z}")
    checks.append(ValidationCheck("associative", not nonassoc, ", ".join(nonassoc[:5])))
    return tuple(checks)


def _validated(ring: IntersectionRing) -> IntersectionRing:
    failed = [c for c in check_ring(ring) if not c.passed]
    if failed:
        detail = "; ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in failed)
        raise InvalidRing(f"ring '{ring.name}': {detail}")
    logger.debug("ring %s: %d classes, dim %d", ring.name, len(ring.basis), ring.dim)
    return ring


def _assemble(
    name: str,
    basis: Iterable[tuple[str, int]],
    triples: Iterable[tuple[str, str, str]],
    fundamental: str,
    point: str,
) -> IntersectionRing:
    """Build the product table, filling in the unit law where no entry is given."""
    basis = tuple(basis)
    table: dict[tuple[str, str], set[str]] = defaultdict(set)
    for i, j, k in triples:
        table[i, j] ^= {k}
    for label, _ in basis:
        table.setdefault((fundamental, label), {label})
        table.setdefault((label, fundamental), {label})
    products = tuple(
        (i, j, frozenset(ks)) for (i, j), ks in sorted(table.items()) if ks
    )
    return _validated(IntersectionRing(name, basis, products, fundamental, point))


def builtin_ring(name: str, dim: int) -> IntersectionRing:
    """Return a shipped ring for a critical manifold of dimension *dim*.

    ``two-class`` is {pt, S} with pt•pt = 0 in positive dimension; it is a
    truncation valid for every Σ. ``unit-tangent-s3`` is H_*(S²×S³): pt, a, b, S
    in degrees 0, 2, 3, 5 with a•b = pt.

    Raises:
        NotInCatalog: Unknown ring name.
        RingMismatch: If the ring cannot have dimension *dim*.
    """
    if name == "two-class":
        if dim < 0:
            raise RingMismatch(f"ring dimension must be >= 0, got {dim}")
        if dim == 0:
            return _assemble(name, [("S", 0)], [], "S", "S")
        return _assemble(name, [("pt", 0), ("S", dim)], [], "S", "pt")
    if name == "unit-tangent-s3":
        if dim != 5:
            raise RingMismatch(f"unit-tangent-s3 has dimension 5, critical manifold has {dim}")
        return _assemble(
            name,
            [("pt", 0), ("a", 2), ("b", 3), ("S", 5)],
            [("a", "b", "pt"), ("b", "a", "pt")],
            "S",
            "pt",
        )
    raise NotInCatalog(f"unknown ring '{name}'; builtin rings: {', '.join(BUILTIN_RINGS)}")


_RING_KEYS = ("basis", "fundamental", "point")
_RING_OPTIONAL = ("products",)


def ring_from_document(doc: Mapping[str, Any], name: str = "ring") -> IntersectionRing:
    """Build and validate a ring from a parsed ring file.

    Raises:
        DocumentError: Unknown keys, wrong types or duplicate product triples.
        InvalidRing: If the table violates a ring axiom.
    """
    check_keys(dict(doc), required=_RING_KEYS, optional=_RING_OPTIONAL, where=name)
    basis: list[tuple[str, int]] = []
    for entry in doc["basis"]:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not isinstance(entry[0], str)
            or not isinstance(entry[1], int)
            or isinstance(entry[1], bool)
        ):
            raise DocumentError(f"{name}: 'basis' entries must be [label, degree], got {entry!r}")
        basis.append((entry[0], entry[1]))
    for key in ("fundamental", "point"):
        if not isinstance(doc[key], str):
            raise DocumentError(f"{name}: '{key}' must be a label")
    triples: list[tuple[str, str, str]] = []
    for entry in doc.get("products", []):
        if not (
            isinstance(entry, list) and len(entry) == 3 and all(isinstance(x, str) for x in entry)
        ):
            raise DocumentError(f"{name}: 'products' entries must be [i, j, k], got {entry!r}")
        triple = (entry[0], entry[1], entry[2])
        if triple in triples:
            raise DocumentError(f"{name}: duplicate product {list(triple)}")
        triples.append(triple)
    return _assemble(name, basis, triples, doc["fundamental"], doc["point"])


def load_ring(path: str | Path) -> IntersectionRing:
    path = Path(path)
    return ring_from_document(load_document(path), name=path.stem)


def resolve_ring(value: str, dim: int) -> IntersectionRing:
    """A ring file if *value* names one, else a builtin ring of dimension *dim*."""
    if Path(value).is_file():
        return load_ring(value)
    return builtin_ring(value, dim)


# ---------------------------------------------------------------------------
# Completing classes and products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompletingClass:
    space: SymmetricSpaceData = field(compare=False, repr=False)
    ring: IntersectionRing = field(compare=False, repr=False)
    primitive: RatVec
    iterate_k: int
    sigma_elt: RingElement
    degree: int


class ProductStatus(StrEnum):
    EXACTLY_EQUAL = "ExactlyEqual"
    NONZERO_WITH_LEADING_TERM = "NonzeroWithLeadingTerm"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ProductVerdict:
    leading: CompletingClass | None
    status: ProductStatus
    degree: int


@dataclass(frozen=True)
class PowerEntry:
    k: int
    degree: int
    nonzero: bool


@dataclass(frozen=True)
class ZillerCycle:
    H: RatVec
    factors: tuple[tuple[Fraction, int], ...]
    sigma_dim: int
    gamma_dim: int
    based_sigma_dim: int
    based_gamma_dim: int


@dataclass(frozen=True)
class WClass:
    cls: CompletingClass
    degree: int
    coproduct_trivial: bool


def _sigma_dim(space: SymmetricSpaceData, primitive: RatVec) -> int:
    return space.dim_n + geodesics.mu(space, primitive)


def _require_prime(space: SymmetricSpaceData, primitive: RatVec) -> None:
    _, g = primitive_decomposition(space, primitive)
    if g != 1:
        raise NotPrimitive(
            f"H={linalg.format_ratvec(primitive)} is the {g}-fold iterate of a prime geodesic"
        )


def make_class(
    space: SymmetricSpaceData,
    ring: IntersectionRing,
    primitive: RatVec,
    k: int,
    a: RingElement | str,
) -> CompletingClass:
    """The class f_*∘p_!(a) on the critical manifold of σ^k.

    Raises:
        ZeroClass: If a = 0.
        NotPrimitive: If *primitive* is a proper iterate.
        RingMismatch: If dim of the ring differs from n + μ.
        InhomogeneousClass: If a is not homogeneous.
    """
    a = frozenset({a}) if isinstance(a, str) else frozenset(a)
    if not a:
        raise ZeroClass("completing classes need a nonzero sigma element")
    if k < 1:
        raise Unsupported(f"iterate count must be >= 1, got {k}")
    _require_prime(space, primitive)
    dim_sigma = _sigma_dim(space, primitive)
    if ring.dim != dim_sigma:
        raise RingMismatch(
            f"ring '{ring.name}' has dimension {ring.dim}, "
            f"critical manifold of H={linalg.format_ratvec(primitive)} has {dim_sigma}"
        )
    sigma_degree = ring.element_degree(a)
    index = geodesics.index(space, linalg.scale(k, primitive))
    return CompletingClass(space, ring, primitive, k, a, index + sigma_degree)


def cs_product(c1: CompletingClass, c2: CompletingClass) -> ProductVerdict:
    """Leading term of c1 ∧ c2 in the Chas–Sullivan ring.

    The product is exact when either factor carries [Σ]; otherwise a nonzero
    a•b only certifies that the product is nonzero with that leading term.

    Raises:
        Unsupported: If the classes live on different directions, rings or spaces.
    """
    if c1.primitive != c2.primitive:
        raise Unsupported(
            "products of classes in different directions "
            f"({linalg.format_ratvec(c1.primitive)} vs {linalg.format_ratvec(c2.primitive)}) "
            "are not determined"
        )
    if c1.ring != c2.ring or c1.space != c2.space:
        raise Unsupported("classes must share the space and the intersection ring")
    ring = c1.ring
    degree = c1.degree + c2.degree - c1.space.dim_n
    product = ring.multiply(c1.sigma_elt, c2.sigma_elt)
    if not product:
        return ProductVerdict(None, ProductStatus.INDETERMINATE, degree)
    leading = make_class(c1.space, ring, c1.primitive, c1.iterate_k + c2.iterate_k, product)
    unit = frozenset({ring.fundamental})
    if unit in (c1.sigma_elt, c2.sigma_elt):
        status = ProductStatus.EXACTLY_EQUAL
    else:
        status = ProductStatus.NONZERO_WITH_LEADING_TERM
    return ProductVerdict(leading, status, degree)


def power_report(c: CompletingClass, k_max: int) -> tuple[PowerEntry, ...]:
    """Degrees of Θ, Θ∧Θ, …, Θ^{∧k_max} for Θ = (primitive, 1, [Σ]).

    Raises:
        Unsupported: If c is not of that form.
    """
    if c.sigma_elt != {c.ring.fundamental} or c.iterate_k != 1:
        raise Unsupported(
            f"powers are tracked for (H, 1, {c.ring.fundamental}) only, "
            f"got (k={c.iterate_k}, {format_element(c.sigma_elt)})"
        )
    entries = [PowerEntry(1, c.degree, True)]
    current = c
    for k in range(2, k_max + 1):
        verdict = cs_product(current, c)
        assert verdict.leading is not None
        current = verdict.leading
        entries.append(PowerEntry(k, current.degree, True))
    return tuple(entries)


def ziller_cycle(space: SymmetricSpaceData, H: RatVec) -> ZillerCycle:
    """Dimension ledger of the completing manifold of σ_H and its based version."""
    report = geodesics.geodesic_report(space, H)
    sigma_dim = report.nullity
    return ZillerCycle(
        H=H,
        factors=tuple((c.t, c.multiplicity) for c in report.conjugate_times),
        sigma_dim=sigma_dim,
        gamma_dim=report.index + sigma_dim,
        based_sigma_dim=report.mu,
        based_gamma_dim=report.index + report.mu,
    )


def fiber_product_check(
    space: SymmetricSpaceData, primitive: RatVec, k1: int, k2: int
) -> CheckResult:
    """Γ_{k1} ×_M Γ_{k2} ≅ Γ_{k1+k2} at the level of dimensions and group factors.

    Raises:
        NotPrimitive: If *primitive* is a proper iterate.
    """
    if k1 < 1 or k2 < 1:
        raise Unsupported(f"iterate counts must be >= 1, got {k1}, {k2}")
    _require_prime(space, primitive)
    z1 = ziller_cycle(space, linalg.scale(k1, primitive))
    z2 = ziller_cycle(space, linalg.scale(k2, primitive))
    z12 = ziller_cycle(space, linalg.scale(k1 + k2, primitive))
    joint = 1 if z1.based_sigma_dim > 0 else 0
    return CheckResult(
        name=f"fiber product k1={k1} k2={k2}",
        identities=(
            Identity("gamma-dim", z1.gamma_dim + z2.gamma_dim - space.dim_n, z12.gamma_dim),
            Identity("group-factors", len(z1.factors) + len(z2.factors) + joint, len(z12.factors)),
        ),
    )


def w_class(
    space: SymmetricSpaceData, ring: IntersectionRing, primitive: RatVec, k: int
) -> WClass:
    """The class of the point of Σ pushed into ΛM; its coproduct vanishes in rank ≥ 2."""
    cls = make_class(space, ring, primitive, k, ring.point)
    return WClass(cls, cls.degree, space.rank >= 2)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _class_cell(c: CompletingClass) -> str:
    return f"{c.iterate_k}\t{format_element(c.sigma_elt)}\t{c.degree}"


def _class_record(c: CompletingClass | None) -> dict[str, Any] | None:
    if c is None:
        return None
    return {
        "primitive": linalg.format_ratvec(c.primitive),
        "k": c.iterate_k,
        "sigma": format_element(c.sigma_elt),
        "degree": c.degree,
    }


def format_verdict(c1: CompletingClass, c2: CompletingClass, verdict: ProductVerdict) -> str:
    lines = [
        f"# space: {c1.space.name}",
        f"# ring: {c1.ring.name} (dim {c1.ring.dim})",
        f"# H: {linalg.format_ratvec(c1.primitive)}",
        "role\tk\tsigma\tdegree",
        f"left\t{_class_cell(c1)}",
        f"right\t{_class_cell(c2)}",
    ]
    if verdict.leading is None:
        lines.append(f"leading\t-\t0\t{verdict.degree}")
    else:
        lines.append(f"leading\t{_class_cell(verdict.leading)}")
    lines.append(f"status\t{verdict.status}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _add_class_arguments(parser: argparse.ArgumentParser) -> None:
    add_space_arguments(parser)
    parser.add_argument(
        "--H", dest="H", type=ratvec, required=True, help="Prime lattice direction, e.g. 2,1"
    )
    parser.add_argument(
        "--ring",
        default="two-class",
        help="Builtin ring (two-class, unit-tangent-s3) or ring file (default: two-class)",
    )


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop cs-product."""
    parser = argparse.ArgumentParser(
        prog="symloop cs-product",
        description="Leading term and status of the Chas–Sullivan product of two classes.",
    )
    _add_class_arguments(parser)
    parser.add_argument("--a", required=True, help="Sigma element of the left class, e.g. S or a+b")
    parser.add_argument("--b", required=True, help="Sigma element of the right class")
    parser.add_argument("--k1", type=positive_int, default=1, help="Left iterate count")
    parser.add_argument("--k2", type=positive_int, default=1, help="Right iterate count")
    parser.add_argument("--jsonl", action="store_true", help="Emit one JSON record")
    return parser


def main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop cs-product."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        space = resolve_space(parsed)
        ring = resolve_ring(parsed.ring, _sigma_dim(space, parsed.H))
        c1 = make_class(space, ring, parsed.H, parsed.k1, parse_element(parsed.a))
        c2 = make_class(space, ring, parsed.H, parsed.k2, parse_element(parsed.b))
        verdict = cs_product(c1, c2)
        if parsed.jsonl:
            print(
                dumps_record(
                    {
                        "space": space.name,
                        "ring": ring.name,
                        "left": _class_record(c1),
                        "right": _class_record(c2),
                        "leading": _class_record(verdict.leading),
                        "status": str(verdict.status),
                        "degree": verdict.degree,
                    }
                )
            )
        else:
            print(format_verdict(c1, c2, verdict))
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


def _build_power_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop power."""
    parser = argparse.ArgumentParser(
        prog="symloop power",
        description="Degrees of the powers of the fundamental completing class Θ.",
    )
    _add_class_arguments(parser)
    parser.add_argument("--k-max", type=positive_int, default=5, help="Highest power (default: 5)")
    return parser


def power_main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop power."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_power_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        space = resolve_space(parsed)
        ring = resolve_ring(parsed.ring, _sigma_dim(space, parsed.H))
        theta = make_class(space, ring, parsed.H, 1, ring.fundamental)
        cycle = ziller_cycle(space, parsed.H)
        print(f"# space: {space.name}")
        print(f"# H: {linalg.format_ratvec(parsed.H)}")
        print(f"# sigma dim: {cycle.sigma_dim}  gamma dim: {cycle.gamma_dim}")
        print("k\tdegree\tverdict")
        for entry in power_report(theta, parsed.k_max):
            print(f"{entry.k}\t{entry.degree}\t{'Nonzero' if entry.nonzero else 'Unknown'}")
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
