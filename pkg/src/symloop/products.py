"""symloop product: product spaces M₁ × M₂ with the product metric.

The flat of the product is 𝔞₁ ⊕ 𝔞₂ with block-diagonal Gram matrix; roots of
each factor vanish on the other block, so conjugate points, index and μ of
(H₁, H₂) split factor by factor.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from symloop import csring, geodesics, linalg
from symloop.args import load_space_arg, ratvec
from symloop.bottcycles import Coproduct
from symloop.errors import NotApplicable, Unsupported, ZeroDirection
from symloop.geodesics import CheckResult, Identity
from symloop.io import safe_parse
from symloop.linalg import RatVec
from symloop.rootspace import Lattice, RootDatum, SymmetricSpaceData, require_lattice_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProductTag:
    components: tuple[str, ...]
    split: tuple[int, ...]


@dataclass(frozen=True)
class ProductSpace:
    space: SymmetricSpaceData
    tag: ProductTag
    factors: tuple[SymmetricSpaceData, ...]


@dataclass(frozen=True)
class CriticalData:
    index: int
    sigma_dim: int
    gamma_dim: int


@dataclass(frozen=True)
class VanishingReport:
    verdict: str
    first: CriticalData
    second: CriticalData
    product: CriticalData
    kunneth: tuple[tuple[str, Coproduct], ...]


def _pad(v: RatVec, before: int, after: int) -> RatVec:
    return linalg.zero(before) + v + linalg.zero(after)


def _join(s1: SymmetricSpaceData, s2: SymmetricSpaceData) -> SymmetricSpaceData:
    r1, r2 = s1.rank, s2.rank
    roots = tuple(
        RootDatum(_pad(root.functional, 0, r2), root.multiplicity) for root in s1.positive_roots
    ) + tuple(
        RootDatum(_pad(root.functional, r1, 0), root.multiplicity) for root in s2.positive_roots
    )
    basis = tuple(_pad(x, 0, r2) for x in s1.lattice.basis) + tuple(
        _pad(x, r1, 0) for x in s2.lattice.basis
    )
    return SymmetricSpaceData(
        name=f"{s1.name}*{s2.name}",
        rank=r1 + r2,
        positive_roots=roots,
        gram=linalg.block_diagonal(s1.gram, s2.gram),
        lattice=Lattice(basis),
        dim_n=s1.dim_n + s2.dim_n,
        z2_orientable_cycles=s1.z2_orientable_cycles and s2.z2_orientable_cycles,
    )


def compose(s1: SymmetricSpaceData, s2: SymmetricSpaceData) -> ProductSpace:
    """The product s1 × s2: block Gram matrix, roots and lattice embedded blockwise."""
    space = _join(s1, s2)
    logger.debug("composed %s: rank %d", space.name, space.rank)
    return ProductSpace(space, ProductTag((s1.name, s2.name), (s1.rank, s2.rank)), (s1, s2))


def compose_all(spaces: Sequence[SymmetricSpaceData]) -> ProductSpace:
    """Left-to-right product of one or more spaces."""
    if not spaces:
        raise Unsupported("compose_all needs at least one space")
    first = spaces[0]
    result = ProductSpace(first, ProductTag((first.name,), (first.rank,)), (first,))
    for s in spaces[1:]:
        result = ProductSpace(
            _join(result.space, s),
            ProductTag(result.tag.components + (s.name,), result.tag.split + (s.rank,)),
            result.factors + (s,),
        )
    return result


def _critical_data(space: SymmetricSpaceData, H: RatVec) -> CriticalData:
    """Index and dimensions of Σ and Γ; a constant factor contributes M itself."""
    if linalg.is_zero(H):
        return CriticalData(0, space.dim_n, space.dim_n)
    cycle = csring.ziller_cycle(space, H)
    return CriticalData(cycle.gamma_dim - cycle.sigma_dim, cycle.sigma_dim, cycle.gamma_dim)


def _times(space: SymmetricSpaceData, H: RatVec) -> Counter[Fraction]:
    if linalg.is_zero(H):
        return Counter()
    return Counter({c.t: c.multiplicity for c in geodesics.crossing_times(space, H)})


def _factor_values(space: SymmetricSpaceData, H: RatVec) -> tuple[int, int, Fraction]:
    """(index, μ, energy) of one factor, zero for a constant factor."""
    if linalg.is_zero(H):
        return 0, 0, Fraction(0)
    return geodesics.index(space, H), geodesics.mu(space, H), geodesics.energy(space, H)


def factor_check(
    s1: SymmetricSpaceData, s2: SymmetricSpaceData, H1: RatVec, H2: RatVec
) -> CheckResult:
    """Compare the product geodesic (H1, H2) against its two factors.

    Raises:
        NotClosed: If a nonzero H_i is not in its factor's lattice.
        ZeroDirection: If both are zero.
    """
    for space, H in ((s1, H1), (s2, H2)):
        if not linalg.is_zero(H) or len(H) != space.rank:
            require_lattice_point(space, H)
    if linalg.is_zero(H1) and linalg.is_zero(H2):
        raise ZeroDirection("(H1, H2) = 0 is the constant loop")
    product = compose(s1, s2).space
    H = H1 + H2
    require_lattice_point(product, H)

    joint = _times(s1, H1) + _times(s2, H2)
    whole = _times(product, H)
    identities = [
        Identity(f"multiplicity@{linalg.format_rational(t)}", whole[t], joint[t])
        for t in sorted(set(joint) | set(whole))
    ]
    ind1, mu1, e1 = _factor_values(s1, H1)
    ind2, mu2, e2 = _factor_values(s2, H2)
    ind, mu, e = _factor_values(product, H)
    g1, g2, g = _critical_data(s1, H1), _critical_data(s2, H2), _critical_data(product, H)
    identities += [
        Identity("index", ind, ind1 + ind2),
        Identity("mu", mu, mu1 + mu2),
        Identity("nullity-n", geodesics.nullity(product, H) - product.dim_n, mu1 + mu2),
        Identity("energy", e, e1 + e2),
        Identity("gamma-dim", g.gamma_dim, g1.gamma_dim + g2.gamma_dim),
    ]
    fmt = linalg.format_ratvec
    return CheckResult(f"factor H1={fmt(H1)} H2={fmt(H2)}", tuple(identities))


KUNNETH_SUMMANDS = (
    ("relative⊗relative", Coproduct.TRIVIAL),
    ("relative⊗constant", Coproduct.UNKNOWN),
    ("constant⊗relative", Coproduct.UNKNOWN),
)


def coproduct_vanishing_report(product: ProductSpace, H1: RatVec, H2: RatVec) -> VanishingReport:
    """Coproduct vanishing on classes pushed from Γ₁ × Γ₂ when both factors move.

    Raises:
        NotApplicable: If H1 = 0 or H2 = 0.
        Unsupported: If the product does not have exactly two factors.
    """
    if len(product.factors) != 2:
        raise Unsupported(f"expected a product of two spaces, got {len(product.factors)}")
    if linalg.is_zero(H1) or linalg.is_zero(H2):
        raise NotApplicable("both factors must be non-constant closed geodesics")
    s1, s2 = product.factors
    require_lattice_point(s1, H1)
    require_lattice_point(s2, H2)
    return VanishingReport(
        verdict="CoproductTrivial",
        first=_critical_data(s1, H1),
        second=_critical_data(s2, H2),
        product=_critical_data(product.space, H1 + H2),
        kunneth=KUNNETH_SUMMANDS,
    )


def format_vanishing(report: VanishingReport) -> str:
    lines = [f"# coproduct: {report.verdict}"]
    for label, data in (
        ("factor1", report.first),
        ("factor2", report.second),
        ("product", report.product),
    ):
        lines.append(
            f"critical\t{label}\tindex {data.index}\tsigma {data.sigma_dim}\tgamma {data.gamma_dim}"
        )
    lines += [f"summand\t{label}\t{status}" for label, status in report.kunneth]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop product."""
    parser = argparse.ArgumentParser(
        prog="symloop product",
        description="Compose spaces and check the product splitting of a geodesic.",
    )
    parser.add_argument("spaces", nargs="+", help="Two or more catalog names or space files")
    parser.add_argument("--H1", dest="H1", type=ratvec, help="Lattice point of the first factor")
    parser.add_argument("--H2", dest="H2", type=ratvec, help="Lattice point of the second factor")
    return parser


def main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop product."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        if len(parsed.spaces) < 2:
            raise Unsupported("product needs at least two spaces")
        factors = [load_space_arg(s) for s in parsed.spaces]
        product = compose_all(factors)
        space = product.space
        print(f"# product: {space.name}")
        print(f"rank\t{space.rank}")
        print(f"dim\t{space.dim_n}")
        print(f"split\t{','.join(str(r) for r in product.tag.split)}")
        for i, root in enumerate(space.positive_roots):
            print(f"root {i}\t{linalg.format_ratvec(root.functional)}\tm={root.multiplicity}")
        for j, x in enumerate(space.lattice.basis):
            print(f"lattice {j}\t{linalg.format_ratvec(x)}")

        if parsed.H1 is None and parsed.H2 is None:
            return 0
        if len(factors) != 2:
            raise Unsupported("--H1/--H2 need exactly two spaces")
        s1, s2 = factors
        H1 = parsed.H1 if parsed.H1 is not None else linalg.zero(s1.rank)
        H2 = parsed.H2 if parsed.H2 is not None else linalg.zero(s2.rank)
        result = factor_check(s1, s2, H1, H2)
        print(geodesics.format_check(result))
        try:
            print(format_vanishing(coproduct_vanishing_report(product, H1, H2)))
        except NotApplicable as e:
            print(f"# coproduct: {e}")
        if not result.holds:
            print("Error: product splitting failed", file=sys.stderr)
            return 1
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
