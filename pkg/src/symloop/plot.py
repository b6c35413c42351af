"""symloop plot: SVG picture of a rank-2 flat.

Draws the singular planes {α(H) = n} meeting the box (dash style per root), the
unit lattice as dots, the closed positive chamber, and the ray 0 → H with a
marker at each conjugate time. Geometry is exact until the final conversion to
fixed-precision decimals, so output is byte-stable.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from symloop import geodesics, linalg, weyl
from symloop.args import add_space_arguments, positive_rational, ratvec, resolve_space
from symloop.errors import InvalidPlot, Unsupported
from symloop.io import safe_parse, write_atomic
from symloop.linalg import RatVec
from symloop.rootspace import SymmetricSpaceData

logger = logging.getLogger(__name__)

DEFAULT_BOX = (-3, 3, -3, 3)
PRECISION = 6
PIXELS_PER_UNIT = 100
DASH_STYLES = ("6 3", "2 3", "8 3 2 3", "1 2")
CHAMBER_FILL = "#e6e9f5"


@dataclass(frozen=True)
class PlotSpec:
    box: tuple[Fraction | int, ...] = DEFAULT_BOX
    H: RatVec | None = None
    dot_radius: Fraction = Fraction(1, 25)
    shade_chamber: bool = True
    dash_styles: tuple[str, ...] = DASH_STYLES
    out: str | None = None

    def __post_init__(self) -> None:
        xmin, xmax, ymin, ymax = self.box
        if not (xmin < xmax and ymin < ymax):
            raise InvalidPlot(f"empty box {linalg.format_ratvec(self.box)}")
        if self.dot_radius <= 0:
            raise InvalidPlot("dot radius must be positive")
        if not self.dash_styles:
            raise InvalidPlot("need at least one dash style")
        if self.H is not None:
            if len(self.H) != 2:
                raise InvalidPlot(f"H must have 2 coordinates, got {len(self.H)}")
            x, y = self.H
            if not (xmin <= x <= xmax and ymin <= y <= ymax):
                raise InvalidPlot(f"H={linalg.format_ratvec(self.H)} lies outside the box")

    def dash_for(self, root_index: int) -> str:
        return self.dash_styles[root_index % len(self.dash_styles)]


def _num(q: Fraction) -> str:
    return f"{float(q):.{PRECISION}f}"


def _inside(box: Sequence[Fraction | int], p: RatVec) -> bool:
    xmin, xmax, ymin, ymax = box
    return xmin <= p[0] <= xmax and ymin <= p[1] <= ymax


def _clip_line(
    box: Sequence[Fraction | int], g: RatVec, level: int
) -> tuple[RatVec, RatVec] | None:
    """Endpoints of {g·x = level} inside the box, or None if it misses or only touches."""
    xmin, xmax, ymin, ymax = box
    gx, gy = g
    points: set[RatVec] = set()
    if gy != 0:
        for x in (xmin, xmax):
            y = (level - gx * x) / gy
            if ymin <= y <= ymax:
                points.add((x, y))
    if gx != 0:
        for y in (ymin, ymax):
            x = (level - gy * y) / gx
            if xmin <= x <= xmax:
                points.add((x, y))
    if len(points) < 2:
        return None
    ordered = sorted(points)
    return ordered[0], ordered[-1]


def _clip_halfplane(polygon: list[RatVec], g: RatVec) -> list[RatVec]:
    """Sutherland–Hodgman step keeping g·x ≥ 0."""
    out: list[RatVec] = []
    for p, q in zip(polygon, polygon[1:] + polygon[:1], strict=True):
        fp = g[0] * p[0] + g[1] * p[1]
        fq = g[0] * q[0] + g[1] * q[1]
        if fp >= 0:
            out.append(p)
        if fp < 0 < fq or fq < 0 < fp:
            s = fp / (fp - fq)
            out.append(linalg.add(p, linalg.scale(s, linalg.sub(q, p))))
    return out


def _covector(space: SymmetricSpaceData, root_index: int) -> RatVec:
    return linalg.mat_vec(space.gram, space.positive_roots[root_index].functional)


def _lattice_points(space: SymmetricSpaceData, box: Sequence[Fraction | int]) -> list[RatVec]:
    xmin, xmax, ymin, ymax = box
    corners = [(x, y) for x in (xmin, xmax) for y in (ymin, ymax)]
    coords = [space.lattice.coordinates(c) for c in corners]
    ranges = [
        range(math.floor(min(c[i] for c in coords)), math.ceil(max(c[i] for c in coords)) + 1)
        for i in range(2)
    ]
    points = (space.lattice.point(c) for c in itertools.product(*ranges))
    return sorted(p for p in points if _inside(box, p))


def emit_svg(space: SymmetricSpaceData, spec: PlotSpec) -> str:
    """Render the flat of a rank-2 space as an SVG 1.1 document.

    Raises:
        Unsupported: If the rank is not 2.
    """
    if space.rank != 2:
        raise Unsupported(f"plotting needs rank 2, {space.name} has rank {space.rank}")
    xmin, xmax, ymin, ymax = spec.box
    scale = PIXELS_PER_UNIT

    def px(p: RatVec) -> tuple[str, str]:
        return _num((p[0] - xmin) * scale), _num((ymax - p[1]) * scale)

    width, height = _num((xmax - xmin) * scale), _num((ymax - ymin) * scale)
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f"<title>{space.name}</title>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]

    if spec.shade_chamber:
        polygon = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
        for i in weyl.simple_roots(space):
            polygon = _clip_halfplane(polygon, _covector(space, i))
        if len(polygon) >= 3:
            points = " ".join(",".join(px(p)) for p in polygon)
            lines.append(f'<polygon class="chamber" points="{points}" fill="{CHAMBER_FILL}"/>')

    corners = [(x, y) for x in (xmin, xmax) for y in (ymin, ymax)]
    planes = 0
    for i in range(len(space.positive_roots)):
        g = _covector(space, i)
        values = [g[0] * c[0] + g[1] * c[1] for c in corners]
        for n in range(math.ceil(min(values)), math.floor(max(values)) + 1):
            segment = _clip_line(spec.box, g, n)
            if segment is None:
                continue
            (x1, y1), (x2, y2) = px(segment[0]), px(segment[1])
            stroke = "1.5" if n == 0 else "0.8"
            lines.append(
                f'<line class="plane" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#444444" '
                f'stroke-width="{stroke}" stroke-dasharray="{spec.dash_for(i)}"/>'
            )
            planes += 1

    radius = _num(spec.dot_radius * scale)
    dots = _lattice_points(space, spec.box)
    for p in dots:
        cx, cy = px(p)
        lines.append(f'<circle class="lattice" cx="{cx}" cy="{cy}" r="{radius}" fill="black"/>')

    if spec.H is not None and not linalg.is_zero(spec.H):
        (x1, y1), (x2, y2) = px(linalg.zero(2)), px(spec.H)
        lines.append(
            f'<line class="ray" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            'stroke="#c0392b" stroke-width="2"/>'
        )
        for c in geodesics.crossing_times(space, spec.H):
            cx, cy = px(linalg.scale(c.t, spec.H))
            lines.append(
                f'<circle class="conjugate" cx="{cx}" cy="{cy}" r="{radius}" '
                'fill="white" stroke="#c0392b" stroke-width="1.5"/>'
            )
    lines.append("</svg>")
    logger.debug("%s: %d plane segments, %d lattice points", space.name, planes, len(dots))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _box(value: str) -> tuple[Fraction, ...]:
    v = ratvec(value)
    if len(v) != 4:
        raise argparse.ArgumentTypeError(f"expected xmin,xmax,ymin,ymax, got '{value}'")
    return v


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for symloop plot."""
    parser = argparse.ArgumentParser(
        prog="symloop plot",
        description="SVG picture of singular planes, lattice and chamber of a rank-2 space.",
    )
    add_space_arguments(parser)
    parser.add_argument(
        "--H", dest="H", type=ratvec, help="Draw the ray 0 → H with conjugate points"
    )
    parser.add_argument(
        "--box",
        type=_box,
        default=DEFAULT_BOX,
        help="xmin,xmax,ymin,ymax (default: -3,3,-3,3)",
    )
    parser.add_argument(
        "--dot-radius", type=positive_rational, default=Fraction(1, 25), help="Lattice dot radius"
    )
    parser.add_argument("--no-shade", action="store_true", help="Do not shade the chamber")
    parser.add_argument("--out", metavar="FILE", help="Write the SVG here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true", help="Show progress on stderr")
    return parser


def main(args: list[str] | None = None) -> int:
    """CLI entry point for symloop plot."""
    if args is None:
        args = sys.argv[1:]

    parsed, code = safe_parse(_build_parser(), args)
    if parsed is None:
        return code  # type: ignore[return-value]

    try:
        space = resolve_space(parsed)
        spec = PlotSpec(
            box=parsed.box,
            H=parsed.H,
            dot_radius=parsed.dot_radius,
            shade_chamber=not parsed.no_shade,
            out=parsed.out,
        )
        svg = emit_svg(space, spec)
        if spec.out:
            write_atomic(spec.out, svg)
            if parsed.verbose:
                print(f"Wrote {spec.out}", file=sys.stderr)
        else:
            sys.stdout.write(svg)
        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
