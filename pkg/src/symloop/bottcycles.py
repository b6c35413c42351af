"""symloop bott / verify-cert: Bott–Samelson cycles of ordered singular-plane families.

An ordered family P = (p_1, …, p_m) of singular planes {α(H) = n} gives a cycle
Γ_P → ΩM of dimension Σ mult(p_i). When a chain of polygons 0 → q_1 → … → q_m → 0
with q_i on p_i avoids the unit lattice 𝓕 (except at the two ends), the cycle
meets the constant loops with intersection multiplicity 1 and its based
coproduct vanishes in rank ≥ 2. This module builds and checks such chains exactly.
"""

from __future__ import annotations

import argparse
import logging
import math
import random
import sys
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Any

from symloop import linalg
from symloop.args import (
    add_space_arguments,
    load_space_arg,
    nonneg_int,
    positive_int,
    resolve_space,
)
from symloop.errors import DocumentError, InvalidCertificate, InvalidFamily, Unsupported
from symloop.io import (
    check_keys,
    dumps_record,
    load_document,
    read_jsonl,
    safe_parse,
    write_atomic,
)
from symloop.linalg import RatVec
from symloop.rootspace import SymmetricSpaceData, proportionality
from symloop.types import BottRecord, CertificateDocument

logger = logging.getLogger(__name__)

DEFAULT_RETRIES = 64
DEFAULT_DENOMINATOR_BOUND = 2**8


@dataclass(frozen=True)
class SingularPlane:
    root_index: int
    level: int

    def __str__(self) -> str:
        return f"{self.root_index}:{self.level}"


@dataclass(frozen=True)
class PlaneFamily:
    planes: tuple[SingularPlane, ...] = ()

    def __len__(self) -> int:
        return len(self.planes)

    def __add__(self, other: PlaneFamily) -> PlaneFamily:
        return PlaneFamily(self.planes + other.planes)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.planes)


@dataclass(frozen=True)
class PolygonCertificate:
    space: str
    family: PlaneFamily
    polygons: tuple[tuple[RatVec, ...], ...]
    junctions: tuple[RatVec, ...]
    seed: int = 0


@dataclass(frozen=True)
class Infeasible:
    reason: str
    attempts: int = 0


class Coproduct(StrEnum):
    TRIVIAL = "Trivial"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CoproductVerdict:
    int_multiplicity_cert: int | None
    based_coproduct: Coproduct
    gamma_dim: int
    certificate: PolygonCertificate | None = None
    reason: str = ""


def parse_planes(text: str) -> PlaneFamily:
    """Parse ``"1:1,2:1"`` (root index, level) pairs; an empty string is the empty family."""
    planes = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        index, sep, level = part.partition(":")
        if not sep:
            raise InvalidFamily(f"expected 'root:level', got '{part}'")
        try:
            planes.append(SingularPlane(int(index), int(level)))
        except ValueError as err:
            raise InvalidFamily(f"expected integers in '{part}'") from err
    return PlaneFamily(tuple(planes))


def family_from_pairs(pairs: Iterable[Any]) -> PlaneFamily:
    planes = []
    for pair in pairs:
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise DocumentError(f"planes must be [root_index, level] pairs, got {pair!r}")
        planes.append(SingularPlane(pair[0], pair[1]))
    return PlaneFamily(tuple(planes))


def _check_family(space: SymmetricSpaceData, family: PlaneFamily) -> None:
    """Raise InvalidFamily unless every plane names a positive root of *space*."""
    count = len(space.positive_roots)
    for plane in family.planes:
        if not 0 <= plane.root_index < count:
            raise InvalidFamily(
                f"plane {plane} names root {plane.root_index}; {space.name} has {count} roots"
            )


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------


def plane_multiplicity(space: SymmetricSpaceData, plane: SingularPlane) -> int:
    """Σ m_β over positive roots β = c·α with c·n ∈ ℤ."""
    _check_family(space, PlaneFamily((plane,)))
    f = space.positive_roots[plane.root_index].functional
    total = 0
    for root in space.positive_roots:
        c = proportionality(f, root.functional)
        if c is not None and c > 0 and (c * plane.level).denominator == 1:
            total += root.multiplicity
    return total


def gamma_dim(space: SymmetricSpaceData, family: PlaneFamily) -> int:
    """Dimension of Γ_P, the degree of the Bott–Samelson class of the family."""
    return sum(plane_multiplicity(space, plane) for plane in family.planes)


# ---------------------------------------------------------------------------
# Exact segment / lattice intersection
# ---------------------------------------------------------------------------


def segment_lattice_hits(
    space: SymmetricSpaceData, start: RatVec, end: RatVec
) -> tuple[Fraction, ...]:
    """Parameters t ∈ [0,1] with start + t·(end − start) in the unit lattice."""
    a = space.lattice.coordinates(start)
    d = linalg.sub(space.lattice.coordinates(end), a)
    if linalg.is_zero(d):
        return (Fraction(0),) if linalg.is_integral(a) else ()
    # solve along the coordinate with the smallest nonzero step, check the rest
    i = min((j for j, x in enumerate(d) if x != 0), key=lambda j: abs(d[j]))
    lo, hi = sorted((a[i], a[i] + d[i]))
    hits = []
    for z in range(math.ceil(lo), math.floor(hi) + 1):
        t = (z - a[i]) / d[i]
        if linalg.is_integral(a[j] + t * d[j] for j in range(len(a))):
            hits.append(t)
    return tuple(sorted(hits))


def _allowed(polygon: int, last: int, t: Fraction, first_segment: bool, last_segment: bool) -> bool:
    return (polygon == 0 and first_segment and t == 0) or (
        polygon == last and last_segment and t == 1
    )


def _polygon_hits(
    space: SymmetricSpaceData, polygon: int, last: int, vertices: tuple[RatVec, ...]
) -> list[str]:
    """Forbidden lattice hits of one polygon, rendered for reports."""
    if len(vertices) == 1:
        v = vertices[0]
        if space.lattice.contains(v) and not (polygon == 0 and polygon == last):
            return [f"polygon {polygon} is the lattice point {linalg.format_ratvec(v)}"]
        return []
    problems = []
    segments = len(vertices) - 1
    for s in range(segments):
        for t in segment_lattice_hits(space, vertices[s], vertices[s + 1]):
            if not _allowed(polygon, last, t, s == 0, s == segments - 1):
                at = linalg.format_rational(t)
                problems.append(f"polygon {polygon} segment {s} meets the lattice at t={at}")
    return problems


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _plane_frame(
    space: SymmetricSpaceData, plane: SingularPlane
) -> tuple[RatVec, tuple[RatVec, ...]]:
    """A point on the plane and integer directions spanning it."""
    f = space.positive_roots[plane.root_index].functional
    base = linalg.scale(Fraction(plane.level) / space.inner(f, f), f)
    covector = linalg.mat_vec(space.gram, f)
    return base, linalg.kernel(covector)


def _draw(
    rng: random.Random, base: RatVec, directions: tuple[RatVec, ...], bound: int
) -> RatVec:
    point = base
    for k in directions:
        denominator = rng.randint(1, bound)
        offset = Fraction(rng.randint(-denominator, denominator), denominator)
        point = linalg.add(point, linalg.scale(offset, k))
    return point


def _chain(junctions: list[RatVec], rank: int) -> tuple[tuple[RatVec, ...], ...]:
    origin = linalg.zero(rank)
    stops = [origin, *junctions, origin]
    return tuple((stops[i], stops[i + 1]) for i in range(len(stops) - 1))


def construct_polygons(
    space: SymmetricSpaceData,
    family: PlaneFamily,
    seed: int = 0,
    *,
    retries: int = DEFAULT_RETRIES,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> PolygonCertificate | Infeasible:
    """Find a lattice-nonintersecting chain of straight segments through the family.

    Junctions are drawn on their planes with seeded rational offsets; a junction
    involved in a lattice hit is redrawn until the chain is clean or *retries*
    rounds are spent.
    """
    if not family.planes:
        return PolygonCertificate(space.name, family, ((linalg.zero(space.rank),),), (), seed)
    try:
        _check_family(space, family)
    except InvalidFamily as err:
        return Infeasible(str(err))

    rng = random.Random(seed)
    frames = [_plane_frame(space, plane) for plane in family.planes]
    junctions = [_draw(rng, base, dirs, denominator_bound) for base, dirs in frames]
    last = len(family.planes)
    for j, (plane, (_, dirs)) in enumerate(zip(family.planes, frames, strict=True)):
        if not dirs and space.lattice.contains(junctions[j]):
            return Infeasible(
                f"junction on plane {plane} is forced onto the lattice point "
                f"{linalg.format_ratvec(junctions[j])}"
            )

    for attempt in range(retries + 1):
        polygons = _chain(junctions, space.rank)
        involved: set[int] = set()
        for i, polygon in enumerate(polygons):
            if _polygon_hits(space, i, last, polygon):
                # polygon i runs from junction i-1 to junction i
                involved.update(j for j in (i - 1, i) if 0 <= j < last)
        if not involved:
            logger.debug("%s: family %s certified after %d redraws", space.name, family, attempt)
            return PolygonCertificate(space.name, family, polygons, tuple(junctions), seed)
        fixed = [j for j in sorted(involved) if not frames[j][1]]
        if len(fixed) == len(involved):
            plane = family.planes[fixed[0]]
            return Infeasible(
                f"junction on plane {plane} cannot move and the chain meets the lattice",
                attempt,
            )
        for j in sorted(involved):
            base, dirs = frames[j]
            if dirs:
                junctions[j] = _draw(rng, base, dirs, denominator_bound)

    logger.warning("%s: family %s not certified after %d retries", space.name, family, retries)
    return Infeasible(f"no lattice-nonintersecting chain after {retries} retries", retries)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def certificate_problems(space: SymmetricSpaceData, cert: PolygonCertificate) -> list[str]:
    """Every violated certificate condition; empty when the certificate is valid."""
    m = len(cert.family.planes)
    if cert.space != space.name:
        return [f"certificate is for '{cert.space}', not '{space.name}'"]
    if len(cert.junctions) != m or len(cert.polygons) != m + 1:
        return [f"expected {m} junctions and {m + 1} polygons"]
    try:
        _check_family(space, cert.family)
    except InvalidFamily as err:
        return [str(err)]
    vertices = [v for poly in cert.polygons for v in poly] + list(cert.junctions)
    if any(not poly for poly in cert.polygons):
        return ["empty polygon"]
    if any(len(v) != space.rank for v in vertices):
        return [f"vertices must have {space.rank} coordinates"]

    problems = []
    origin = linalg.zero(space.rank)
    if cert.polygons[0][0] != origin:
        problems.append("polygon 0 does not start at 0")
    if cert.polygons[m][-1] != origin:
        problems.append(f"polygon {m} does not end at 0")
    for i, (plane, q) in enumerate(zip(cert.family.planes, cert.junctions, strict=True)):
        if cert.polygons[i][-1] != q or cert.polygons[i + 1][0] != q:
            problems.append(f"junction {i} does not join polygons {i} and {i + 1}")
        if space.evaluate(plane.root_index, q) != plane.level:
            problems.append(f"junction {i} is not on plane {plane}")
    for i, poly in enumerate(cert.polygons):
        problems.extend(_polygon_hits(space, i, m, poly))
    return problems


def verify_certificate(space: SymmetricSpaceData, cert: PolygonCertificate) -> bool:
    return not certificate_problems(space, cert)


def coproduct_verdict(
    space: SymmetricSpaceData,
    family: PlaneFamily,
    seed: int = 0,
    *,
    retries: int = DEFAULT_RETRIES,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> CoproductVerdict:
    """Trivial based coproduct when rank ≥ 2 and a verified certificate exists.

    Raises:
        InvalidFamily: If a plane names a root the space does not have.
    """
    _check_family(space, family)
    dim = gamma_dim(space, family)
    if space.rank < 2:
        return CoproductVerdict(None, Coproduct.UNKNOWN, dim, reason="rank 1")
    result = construct_polygons(
        space, family, seed, retries=retries, denominator_bound=denominator_bound
    )
    if isinstance(result, Infeasible):
        return CoproductVerdict(None, Coproduct.UNKNOWN, dim, reason=result.reason)
    if not verify_certificate(space, result):
        return CoproductVerdict(None, Coproduct.UNKNOWN, dim, reason="certificate rejected")
    return CoproductVerdict(1, Coproduct.TRIVIAL, dim, certificate=result)


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def certificate_to_document(cert: PolygonCertificate) -> CertificateDocument:
    fmt = linalg.format_rational
    return {
        "space": cert.space,
        "family": [[p.root_index, p.level] for p in cert.family.planes],
        "junctions": [[fmt(x) for x in q] for q in cert.junctions],
        "polygons": [[[fmt(x) for x in v] for v in poly] for poly in cert.polygons],
        "seed": cert.seed,
    }


def _vertex(value: Any, where: str) -> RatVec:
    if not isinstance(value, list):
        raise DocumentError(f"{where}: expected a list of rationals")
    try:
        return tuple(linalg.parse_rational(x) for x in value)
    except (ValueError, TypeError) as err:
        raise DocumentError(f"{where}: {err}") from err


def certificate_from_document(doc: Mapping[str, Any]) -> PolygonCertificate:
    """Raises DocumentError on unknown keys or malformed vertices."""
    check_keys(
        dict(doc),
        required=("space", "family", "junctions", "polygons"),
        optional=("seed",),
        where="certificate",
    )
    if not isinstance(doc["space"], str):
        raise DocumentError("certificate: 'space' must be a string")
    for key in ("family", "junctions", "polygons"):
        if not isinstance(doc[key], list):
            raise DocumentError(f"certificate: '{key}' must be a list")
    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise DocumentError("certificate: 'seed' must be an integer")
    polygons = []
    for i, poly in enumerate(doc["polygons"]):
        if not isinstance(poly, list):
            raise DocumentError(f"certificate: polygon {i} must be a list of vertices")
        polygons.append(tuple(_vertex(v, f"polygon {i}") for v in poly))
    return PolygonCertificate(
        space=doc["space"],
        family=family_from_pairs(doc["family"]),
        polygons=tuple(polygons),
        junctions=tuple(_vertex(q, f"junction {i}") for i, q in enumerate(doc["junctions"])),
        seed=seed,
    )


def verdict_to_record(family: PlaneFamily, verdict: CoproductVerdict) -> BottRecord:
    record: BottRecord = {
        "planes": [[p.root_index, p.level] for p in family.planes],
        "gamma_dim": verdict.gamma_dim,
        "int_multiplicity": str(verdict.int_multiplicity_cert or "Unknown"),
        "based_coproduct": str(verdict.based_coproduct),
    }
    if verdict.reason:
        record["reason"] = verdict.reason
    return record


def _verdict_row(family: PlaneFamily, verdict: CoproductVerdict) -> str:
    cells = [
        str(family) or "-",
        str(verdict.gamma_dim),
        str(verdict.int_multiplicity_cert or "Unknown"),
        str(verdict.based_coproduct),
    ]
    if verdict.reason:
        cells.append(verdict.reason)
    return "\t".join(cells)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop bott."""
    parser = argparse.ArgumentParser(
        prog="symloop bott",
        description="Γ_P dimension and based coproduct verdict for singular-plane families.",
    )
    add_space_arguments(parser)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--planes", help="Ordered family as root:level pairs, e.g. 1:1,2:1 ('' for empty)"
    )
    source.add_argument(
        "--families",
        metavar="FILE",
        help='JSONL file of {"planes": [[i, n], ...]} families ("-" for stdin)',
    )
    parser.add_argument("--seed", type=nonneg_int, default=0, help="Junction sampling seed")
    parser.add_argument(
        "--retries", type=nonneg_int, default=DEFAULT_RETRIES, help="Junction redraw rounds"
    )
    parser.add_argument(
        "--denominator-bound",
        type=positive_int,
        default=DEFAULT_DENOMINATOR_BOUND,
        help="Largest denominator of junction offsets",
    )
    parser.add_argument("--out", metavar="FILE", help="Write the certificate (with --planes)")
    parser.add_argument("--jsonl", action="store_true", help="One JSON record per family")
    parser.add_argument("-v", "--verbose", action="store_true", help="Show progress on stderr")
    return parser


def _families(parsed: argparse.Namespace, space: SymmetricSpaceData) -> list[PlaneFamily]:
    if parsed.planes is not None:
        family = parse_planes(parsed.planes)
        _check_family(space, family)
        return [family]
    if parsed.families == "-":
        records = list(read_jsonl(sys.stdin))
    else:
        with open(parsed.families, encoding="utf-8") as f:
            records = list(read_jsonl(f))
    families = []
    for n, record in enumerate(records, 1):
        try:
            check_keys(record, required=("planes",), where=f"family {n}")
            family = family_from_pairs(record["planes"])
            _check_family(space, family)
            families.append(family)
        except (DocumentError, InvalidFamily) as err:
            logger.warning("skipping %s", err)
    return families


def main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop bott."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        if parsed.out and parsed.families:
            raise Unsupported("--out needs a single family given with --planes")
        space = resolve_space(parsed)
        families = _families(parsed, space)
        if not parsed.jsonl:
            print(f"# space: {space.name}")
            print(f"# seed: {parsed.seed}")
            print("planes\tgamma_dim\tint_multiplicity\tbased_coproduct")
        verdict = None
        for n, family in enumerate(families, 1):
            verdict = coproduct_verdict(
                space,
                family,
                parsed.seed,
                retries=parsed.retries,
                denominator_bound=parsed.denominator_bound,
            )
            if parsed.verbose:
                print(f"[{n}/{len(families)}] {family or '-'}", file=sys.stderr)
            if parsed.jsonl:
                print(dumps_record(verdict_to_record(family, verdict)))
            else:
                print(_verdict_row(family, verdict))
        if parsed.out:
            result = construct_polygons(
                space,
                families[0],
                parsed.seed,
                retries=parsed.retries,
                denominator_bound=parsed.denominator_bound,
            )
            if isinstance(result, Infeasible):
                raise InvalidCertificate(f"no certificate to write: {result.reason}")
            write_atomic(parsed.out, dumps_record(certificate_to_document(result)) + "\n")
            if parsed.verbose:
                print(f"Wrote certificate to {parsed.out}", file=sys.stderr)
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


def _build_verify_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop verify-cert."""
    parser = argparse.ArgumentParser(
        prog="symloop verify-cert",
        description="Exactly verify a lattice-nonintersecting polygon certificate.",
    )
    parser.add_argument("certificate", help="Certificate JSON file")
    # without --space/--product the space named in the certificate is used
    add_space_arguments(parser, required=False)
    return parser


def verify_main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop verify-cert."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_verify_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        cert = certificate_from_document(load_document(parsed.certificate))
        if parsed.space or parsed.product:
            space = resolve_space(parsed)
        else:
            space = load_space_arg(cert.space)
        problems = certificate_problems(space, cert)
        for problem in problems:
            print(f"FAIL\t{problem}")
        if problems:
            raise InvalidCertificate(f"{parsed.certificate}: {len(problems)} problem(s)")
        print(f"ok\t{space.name}\t{cert.family or '-'}")
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
