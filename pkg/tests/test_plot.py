"""Tests for symloop.plot: SVG rendering of rank-2 flats."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from symloop import plot
from symloop.errors import InvalidPlot, Unsupported
from symloop.linalg import vec
from symloop.plot import PlotSpec
from symloop.rootspace import SymmetricSpaceData

TINY_BOX = (Fraction(3, 10), Fraction(2, 5), Fraction(1, 10), Fraction(3, 20))


class TestEmitSvg:
    def test_conjugate_markers(self, gr2c4: SymmetricSpaceData) -> None:
        svg = plot.emit_svg(gr2c4, PlotSpec(H=vec((2, 1))))
        assert svg.count('class="conjugate"') == 5
        assert svg.count('class="ray"') == 1

    def test_lattice_dots(self, gr2c4: SymmetricSpaceData) -> None:
        svg = plot.emit_svg(gr2c4, PlotSpec())
        # 49 integer points and 36 half-integer points in [-3,3]²
        assert svg.count('class="lattice"') == 85

    def test_tiny_box_has_no_planes(self, gr2c4: SymmetricSpaceData) -> None:
        svg = plot.emit_svg(gr2c4, PlotSpec(box=TINY_BOX))
        assert 'class="plane"' not in svg
        assert 'class="lattice"' not in svg
        assert 'class="chamber"' in svg

    def test_no_shade(self, gr2c4: SymmetricSpaceData) -> None:
        svg = plot.emit_svg(gr2c4, PlotSpec(shade_chamber=False))
        assert 'class="chamber"' not in svg

    def test_byte_stable(self, gr2c4: SymmetricSpaceData) -> None:
        spec = PlotSpec(H=vec((2, 1)))
        assert plot.emit_svg(gr2c4, spec) == plot.emit_svg(gr2c4, spec)

    def test_document_shape(self, s2xs3: SymmetricSpaceData) -> None:
        svg = plot.emit_svg(s2xs3, PlotSpec())
        assert svg.startswith("<?xml")
        assert svg.endswith("</svg>\n")
        assert "<title>sphere(2)*sphere(3)</title>" in svg

    def test_dash_style_per_root(self, gr2c4: SymmetricSpaceData) -> None:
        svg = plot.emit_svg(gr2c4, PlotSpec(dash_styles=("4 4",)))
        assert 'stroke-dasharray="6 3"' not in svg
        assert 'stroke-dasharray="4 4"' in svg

    def test_rank_one(self, sphere3: SymmetricSpaceData) -> None:
        with pytest.raises(Unsupported, match="rank 2"):
            plot.emit_svg(sphere3, PlotSpec())


class TestPlotSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"box": (1, 0, 0, 1)},
            {"dot_radius": Fraction(0)},
            {"dash_styles": ()},
            {"H": vec((5, 0))},
            {"H": vec((1,))},
        ],
    )
    def test_invalid(self, kwargs: dict) -> None:
        with pytest.raises(InvalidPlot):
            PlotSpec(**kwargs)

    def test_dash_cycles(self) -> None:
        spec = PlotSpec(dash_styles=("a", "b"))
        assert [spec.dash_for(i) for i in range(3)] == ["a", "b", "a"]


class TestPlotCommand:
    GOLDEN_ARGS = ["--space", "gr2c4", "--H", "2,1", "--box", "0,2,0,1"]

    def test_golden(self, fixtures_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
        assert plot.main(self.GOLDEN_ARGS) == 0
        expected = (fixtures_dir / "golden" / "gr2c4-H21.svg").read_text(encoding="utf-8")
        assert capsys.readouterr().out == expected

    def test_golden_file_bytes(self, tmp_path: Path, fixtures_dir: Path) -> None:
        target = tmp_path / "flat.svg"
        assert plot.main([*self.GOLDEN_ARGS, "--out", str(target)]) == 0
        assert target.read_bytes() == (fixtures_dir / "golden" / "gr2c4-H21.svg").read_bytes()

    def test_stdout(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert plot.main(["--space", "gr2c4", "--H", "2,1"]) == 0
        assert capsys.readouterr().out.count('class="conjugate"') == 5

    def test_out(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        target = tmp_path / "flat.svg"
        assert plot.main(["--space", "gr2c4", "--out", str(target), "-v"]) == 0
        captured = capsys.readouterr()
        assert captured.out == ""
        assert f"Wrote {target}" in captured.err
        assert target.read_text().endswith("</svg>\n")

    def test_box_needs_four_values(self) -> None:
        assert plot.main(["--space", "gr2c4", "--box", "0,1,0"]) == 2

    def test_rank_one_exits_1(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert plot.main(["--space", "sphere(3)"]) == 1
        assert capsys.readouterr().err.startswith("Error: Unsupported:")

    def test_h_outside_box(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert plot.main(["--space", "gr2c4", "--H", "4,1"]) == 1
        assert "InvalidPlot" in capsys.readouterr().err
