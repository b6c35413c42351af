"""symloop geodesic: conjugate points, Morse index, nullity and μ along σ_H.

A point σ_H(t) = Exp(tH) is conjugate to o exactly when tH lies on a singular
plane {α(H) = n} with n ≠ 0. The multiplicity at t is the sum of m_α over the
positive roots with α(tH) ∈ ℤ∖{0}; the Morse index of the closed geodesic is the
sum of multiplicities over interior times.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from symloop import linalg
from symloop.args import add_space_arguments, positive_int, ratvec, resolve_space
from symloop.errors import NotPrimitive, Unsupported, ZeroDirection
from symloop.io import dumps_record, safe_parse
from symloop.linalg import RatVec
from symloop.rootspace import (
    SymmetricSpaceData,
    primitive_decomposition,
    require_lattice_point,
)
from symloop.types import ConjugateTimeRecord, GeodesicRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConjugateTime:
    t: Fraction
    multiplicity: int
    contributing_roots: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GeodesicReport:
    H: RatVec
    lattice_coords: tuple[int, ...]
    conjugate_times: tuple[ConjugateTime, ...]
    index: int
    mu: int
    nullity: int
    energy: Fraction
    prime: bool
    primitive: RatVec
    iterate_k: int


@dataclass(frozen=True)
class Identity:
    label: str
    lhs: int | Fraction
    rhs: int | Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class CheckResult:
    name: str
    identities: tuple[Identity, ...]

    @property
    def holds(self) -> bool:
        return all(identity.holds for identity in self.identities)


def crossing_times(space: SymmetricSpaceData, H: RatVec) -> tuple[ConjugateTime, ...]:
    """All t ∈ (0,1) at which σ_H crosses a singular plane with n ≠ 0.

    Raises:
        ZeroDirection: If H = 0.
    """
    if linalg.is_zero(H):
        raise ZeroDirection("crossing times need a nonzero direction")
    events: dict[Fraction, list[tuple[int, int]]] = defaultdict(list)
    for i, value in enumerate(space.root_values(H)):
        if value == 0:
            continue
        size = abs(value)
        sign = 1 if value > 0 else -1
        n = 1
        while n < size:
            events[n / size].append((i, sign * n))
            n += 1
    roots = space.positive_roots
    return tuple(
        ConjugateTime(t, sum(roots[i].multiplicity for i, _ in hits), tuple(sorted(hits)))
        for t, hits in sorted(events.items())
    )


def index(space: SymmetricSpaceData, H: RatVec) -> int:
    """Morse index of the closed geodesic σ_H.

    Raises:
        ZeroDirection: If H = 0.
        NotClosed: If H is not a lattice point.
    """
    require_lattice_point(space, H)
    return sum(c.multiplicity for c in crossing_times(space, H))


def mu(space: SymmetricSpaceData, H: RatVec) -> int:
    """μ = Σ m_α over positive roots with α(H) ≠ 0."""
    if linalg.is_zero(H):
        raise ZeroDirection("μ needs a nonzero direction")
    return sum(
        root.multiplicity
        for root, value in zip(space.positive_roots, space.root_values(H), strict=True)
        if value != 0
    )


def nullity(space: SymmetricSpaceData, H: RatVec) -> int:
    require_lattice_point(space, H)
    return space.dim_n + mu(space, H)


def energy(space: SymmetricSpaceData, H: RatVec) -> Fraction:
    return space.inner(H, H) / 2


def closed_form_index(space: SymmetricSpaceData, H: RatVec) -> int:
    """Σ m_α·(|α(H)| − 1) over roots with α(H) ≠ 0, for H in the lattice."""
    require_lattice_point(space, H)
    return sum(
        root.multiplicity * (int(abs(value)) - 1)
        for root, value in zip(space.positive_roots, space.root_values(H), strict=True)
        if value != 0
    )


def geodesic_report(space: SymmetricSpaceData, H: RatVec) -> GeodesicReport:
    coords = require_lattice_point(space, H)
    primitive, k = primitive_decomposition(space, H)
    times = crossing_times(space, H)
    m = mu(space, H)
    logger.debug(
        "%s: H=%s has %d conjugate times, k=%d",
        space.name,
        linalg.format_ratvec(H),
        len(times),
        k,
    )
    return GeodesicReport(
        H=H,
        lattice_coords=coords,
        conjugate_times=times,
        index=sum(c.multiplicity for c in times),
        mu=m,
        nullity=space.dim_n + m,
        energy=energy(space, H),
        prime=k == 1,
        primitive=primitive,
        iterate_k=k,
    )


def iterate_check(space: SymmetricSpaceData, H_primitive: RatVec, k: int) -> CheckResult:
    """Check the iteration formulas for σ^k against independent enumeration.

    ind(kH) = k·ind(H) + (k−1)·μ and (ind+null)(kH) = k·ind(H) + k·μ + n. The
    conjugate-time count of the k-th iterate is k copies of those of H plus the
    k−1 returns to the origin (when μ > 0).

    Raises:
        NotPrimitive: If H_primitive is a proper iterate.
    """
    if k < 1:
        raise Unsupported(f"iterate count must be >= 1, got {k}")
    _, g = primitive_decomposition(space, H_primitive)
    if g != 1:
        raise NotPrimitive(
            f"H={linalg.format_ratvec(H_primitive)} is the {g}-fold iterate of a prime geodesic"
        )
    kH = linalg.scale(k, H_primitive)
    n = space.dim_n
    ind1 = index(space, H_primitive)
    m = mu(space, H_primitive)
    ind_k = index(space, kH)
    returns = (k - 1) if m > 0 else 0
    return CheckResult(
        name=f"iterate k={k}",
        identities=(
            Identity("index", ind_k, k * ind1 + (k - 1) * m),
            Identity("index+nullity", ind_k + nullity(space, kH), k * ind1 + k * m + n),
            Identity(
                "conjugate-times",
                len(crossing_times(space, kH)),
                k * len(crossing_times(space, H_primitive)) + returns,
            ),
        ),
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _roots_cell(hits: tuple[tuple[int, int], ...]) -> str:
    return " ".join(f"{i}:{n}" for i, n in hits)


def report_to_record(space: SymmetricSpaceData, report: GeodesicReport) -> GeodesicRecord:
    fmt = linalg.format_ratvec
    times: list[ConjugateTimeRecord] = [
        {
            "t": linalg.format_rational(c.t),
            "multiplicity": c.multiplicity,
            "roots": [[i, n] for i, n in c.contributing_roots],
        }
        for c in report.conjugate_times
    ]
    return {
        "space": space.name,
        "H": fmt(report.H),
        "lattice_coords": ",".join(str(c) for c in report.lattice_coords),
        "conjugate_times": times,
        "index": report.index,
        "mu": report.mu,
        "nullity": report.nullity,
        "energy": linalg.format_rational(report.energy),
        "prime": report.prime,
        "primitive": fmt(report.primitive),
        "iterate_k": report.iterate_k,
    }


def format_report(space: SymmetricSpaceData, report: GeodesicReport) -> str:
    fmt = linalg.format_ratvec
    lines = [
        f"# space: {space.name}",
        f"H\t{fmt(report.H)}",
        f"lattice_coords\t{','.join(str(c) for c in report.lattice_coords)}",
        f"energy\t{linalg.format_rational(report.energy)}",
        f"index\t{report.index}",
        f"mu\t{report.mu}",
        f"nullity\t{report.nullity}",
        f"prime\t{'yes' if report.prime else 'no'}",
        f"primitive\t{fmt(report.primitive)}",
        f"iterate_k\t{report.iterate_k}",
        f"conjugate_times\t{len(report.conjugate_times)}",
        "t\tmultiplicity\troots",
    ]
    lines += [
        f"{linalg.format_rational(c.t)}\t{c.multiplicity}\t{_roots_cell(c.contributing_roots)}"
        for c in report.conjugate_times
    ]
    return "\n".join(lines)


def format_check(result: CheckResult) -> str:
    lines = [f"# check: {result.name}"]
    for identity in result.identities:
        status = "ok" if identity.holds else "FAIL"
        lines.append(f"{status}\t{identity.label}\t{identity.lhs}\t{identity.rhs}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop geodesic."""
    parser = argparse.ArgumentParser(
        prog="symloop geodesic",
        description="Conjugate times, index, nullity and μ of the closed geodesic σ_H.",
    )
    add_space_arguments(parser)
    parser.add_argument("--H", dest="H", type=ratvec, required=True, help="Lattice point, e.g. 2,1")
    parser.add_argument(
        "--iterate",
        type=positive_int,
        metavar="K",
        help="Also check the iteration formulas for the K-th iterate of the primitive of H",
    )
    parser.add_argument("--jsonl", action="store_true", help="Emit one JSON record")
    return parser


def main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop geodesic."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        space = resolve_space(parsed)
        report = geodesic_report(space, parsed.H)
        if parsed.jsonl:
            print(dumps_record(report_to_record(space, report)))
        else:
            print(format_report(space, report))
        if parsed.iterate is not None:
            result = iterate_check(space, report.primitive, parsed.iterate)
            if not parsed.jsonl:
                print(format_check(result))
            if not result.holds:
                print(f"Error: iteration identity failed for k={parsed.iterate}", file=sys.stderr)
                return 1
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
