"""symloop enumerate: critical manifolds of the energy functional.

Nonconstant critical manifolds of E on ΛM correspond one-to-one to the nonzero
lattice points in the closed positive chamber. Each carries Σ = G/K_c of
dimension n + μ and contributes H_{*−index}(Σ) to the Morse ledger.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import math
import sys
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from symloop import geodesics, linalg, weyl
from symloop.args import add_space_arguments, positive_rational, resolve_space
from symloop.errors import DocumentError, Unsupported
from symloop.io import dumps_record, load_document, safe_parse
from symloop.linalg import RatVec
from symloop.rootspace import SymmetricSpaceData, primitive_decomposition
from symloop.types import CriticalRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CriticalEntry:
    H_dom: RatVec
    lattice_coords: tuple[int, ...]
    energy: Fraction
    index: int
    mu: int
    dim_sigma: int
    prime: bool
    primitive: RatVec
    iterate_k: int
    w_class_degree: int
    w_class_coproduct_trivial: bool


@dataclass(frozen=True)
class MorseLedger:
    space: str
    energy_bound: Fraction
    entries: tuple[CriticalEntry, ...]
    constant_stratum: tuple[int, int]

    @property
    def splitting_trace(self) -> tuple[tuple[int, int], ...]:
        """Per entry the shift and dimension of its summand H_{*−index}(Σ)."""
        return tuple((e.index, e.dim_sigma) for e in self.entries)


def is_prime(space: SymmetricSpaceData, H: RatVec) -> bool:
    """True iff H is not a proper multiple of another lattice point.

    Raises:
        ZeroDirection: If H = 0.
        NotClosed: If H is not a lattice point.
    """
    _, k = primitive_decomposition(space, H)
    return k == 1


def _box(space: SymmetricSpaceData, energy_bound: Fraction) -> list[range]:
    """Integer ranges in lattice coordinates covering the ellipsoid E ≤ bound."""
    basis = linalg.columns_to_matrix(space.lattice.basis)
    q = linalg.mat_mul(linalg.transpose(basis), linalg.mat_mul(space.gram, basis))
    q_inv = linalg.inverse(q)
    ranges = []
    for i in range(space.rank):
        limit = math.isqrt(math.floor(2 * energy_bound * q_inv[i][i]))
        ranges.append(range(-limit, limit + 1))
    return ranges


def critical_entry(space: SymmetricSpaceData, H: RatVec) -> CriticalEntry:
    report = geodesics.geodesic_report(space, H)
    return CriticalEntry(
        H_dom=H,
        lattice_coords=report.lattice_coords,
        energy=report.energy,
        index=report.index,
        mu=report.mu,
        dim_sigma=report.nullity,
        prime=report.prime,
        primitive=report.primitive,
        iterate_k=report.iterate_k,
        w_class_degree=report.index,
        w_class_coproduct_trivial=space.rank >= 2,
    )


def enumerate_critical(space: SymmetricSpaceData, energy_bound: Fraction) -> MorseLedger:
    """All dominant lattice points with 0 < E(H) ≤ energy_bound, sorted by energy."""
    energy_bound = Fraction(energy_bound)
    if energy_bound <= 0:
        raise Unsupported(f"energy bound must be positive, got {energy_bound}")
    ranges = _box(space, energy_bound)
    logger.debug("%s: scanning %d lattice points", space.name, math.prod(len(r) for r in ranges))
    entries = []
    for coords in itertools.product(*ranges):
        if not any(coords):
            continue
        H = space.lattice.point(coords)
        if geodesics.energy(space, H) > energy_bound or not weyl.is_dominant(space, H):
            continue
        entries.append(critical_entry(space, H))
    entries.sort(key=lambda e: e.lattice_coords)
    entries.sort(key=lambda e: e.energy)
    return MorseLedger(space.name, energy_bound, tuple(entries), (0, space.dim_n))


def count_prime(space: SymmetricSpaceData, energy_bound: Fraction) -> int:
    return sum(1 for e in enumerate_critical(space, energy_bound).entries if e.prime)


def prime_growth(
    space: SymmetricSpaceData, bounds: Iterable[Fraction]
) -> tuple[tuple[Fraction, int], ...]:
    return tuple((Fraction(b), count_prime(space, b)) for b in bounds)


def partial_morse_series(
    ledger: MorseLedger,
    sigma_polynomials: Mapping[str, Sequence[int]],
    constant_polynomial: Sequence[int] | None = None,
) -> list[int]:
    """Coefficients of Σ t^index·P_Σ(t) over the ledger (plus P_M for constants).

    ``sigma_polynomials`` maps the rendered H_dom (``"2,1"``) to the Poincaré
    polynomial coefficients of its critical manifold.

    Raises:
        Unsupported: If an entry has no polynomial.
    """
    terms: list[tuple[int, Sequence[int]]] = []
    if constant_polynomial is not None:
        terms.append((0, constant_polynomial))
    for entry in ledger.entries:
        key = linalg.format_ratvec(entry.H_dom)
        if key not in sigma_polynomials:
            raise Unsupported(f"no Poincaré polynomial given for H={key}")
        terms.append((entry.index, sigma_polynomials[key]))
    length = max((shift + len(poly) for shift, poly in terms), default=0)
    series = [0] * length
    for shift, poly in terms:
        for d, c in enumerate(poly):
            series[shift + d] += c
    return series


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

HEADER = "H\tenergy\tindex\tnullity\tprime\tprimitive\tk\tw_class"


def _w_class_cell(entry: CriticalEntry) -> str:
    return "trivial" if entry.w_class_coproduct_trivial else "unknown"


def format_ledger(space: SymmetricSpaceData, ledger: MorseLedger) -> str:
    fmt = linalg.format_ratvec
    lines = [
        f"# space: {space.name}",
        f"# energy <= {linalg.format_rational(ledger.energy_bound)}",
        f"# constant loops: index {ledger.constant_stratum[0]}, dim {ledger.constant_stratum[1]}",
        HEADER,
    ]
    for e in ledger.entries:
        lines.append(
            "\t".join(
                [
                    fmt(e.H_dom),
                    linalg.format_rational(e.energy),
                    str(e.index),
                    str(e.dim_sigma),
                    "yes" if e.prime else "no",
                    fmt(e.primitive),
                    str(e.iterate_k),
                    _w_class_cell(e),
                ]
            )
        )
    return "\n".join(lines)


def entry_to_record(entry: CriticalEntry) -> CriticalRecord:
    return {
        "H": linalg.format_ratvec(entry.H_dom),
        "energy": linalg.format_rational(entry.energy),
        "index": entry.index,
        "nullity": entry.dim_sigma,
        "prime": entry.prime,
        "primitive": linalg.format_ratvec(entry.primitive),
        "k": entry.iterate_k,
        "w_class_degree": entry.w_class_degree,
        "w_class_trivial": entry.w_class_coproduct_trivial,
    }


def _load_polynomials(path: str) -> tuple[dict[str, list[int]], list[int] | None]:
    doc = load_document(path)
    polys: dict[str, list[int]] = {}
    constant = None
    for key, value in doc.items():
        if not isinstance(value, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in value
        ):
            raise DocumentError(f"{path}: '{key}' must be a list of integers")
        if key == "constant":
            constant = value
        else:
            polys[linalg.format_ratvec(linalg.parse_ratvec(key))] = value
    return polys, constant


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop enumerate."""
    parser = argparse.ArgumentParser(
        prog="symloop enumerate",
        description="List critical manifolds with energy up to a bound.",
    )
    add_space_arguments(parser)
    parser.add_argument(
        "--energy", type=positive_rational, required=True, help="Energy bound, e.g. 16 or 5/2"
    )
    parser.add_argument("--jsonl", action="store_true", help="One JSON record per entry")
    parser.add_argument("--count-prime", action="store_true", help="Append the prime count")
    parser.add_argument(
        "--sigma-poly",
        metavar="FILE",
        help="JSON map from H to Poincaré polynomial of Σ; prints the partial Morse series",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Show progress on stderr")
    return parser


def main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop enumerate."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        space = resolve_space(parsed)
        ledger = enumerate_critical(space, parsed.energy)
        if parsed.verbose:
            print(f"Found {len(ledger.entries)} critical manifolds", file=sys.stderr)
        if parsed.jsonl:
            for entry in ledger.entries:
                print(dumps_record(entry_to_record(entry)))
        else:
            print(format_ledger(space, ledger))
        if parsed.count_prime:
            print(f"# primes: {sum(1 for e in ledger.entries if e.prime)}")
        if parsed.sigma_poly:
            polys, constant = _load_polynomials(parsed.sigma_poly)
            series = partial_morse_series(ledger, polys, constant)
            print(f"# morse series: {json.dumps(series)}")
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
