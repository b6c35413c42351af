"""Tests for symloop.rootspace: catalog, validation, space documents and CLI."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from symloop import rootspace
from symloop.errors import DocumentError, NotClosed, NotInCatalog, ZeroDirection
from symloop.linalg import vec
from symloop.rootspace import SymmetricSpaceData

from .conftest import catalog_spaces


class TestCatalog:
    """Built-in spaces and their lookup names."""

    def test_sphere_data(self) -> None:
        s = rootspace.sphere(4)
        assert s.rank == 1
        assert s.dim_n == 4
        assert [r.multiplicity for r in s.positive_roots] == [3]

    def test_cpn_one_drops_zero_multiplicity_root(self) -> None:
        s = rootspace.cpn(1)
        assert len(s.positive_roots) == 1
        assert s.dim_n == 2

    @pytest.mark.parametrize(
        ("name", "expected"),
        [("cpn(2)", "cpn(2)"), ("GR2C4", "gr2c4"), ("sphere3", "sphere(3)"), ("cpn2", "cpn(2)")],
    )
    def test_lookup(self, name: str, expected: str) -> None:
        assert rootspace.catalog(name).name == expected

    def test_product_lookup(self) -> None:
        s = rootspace.catalog("sphere(2)*sphere(3)")
        assert s.rank == 2
        assert s.dim_n == 5

    @pytest.mark.parametrize(
        "name", ["torus", "sphere(1)", "cpn(0)", "", "sphere(3", "cpn2)", "sphere()"]
    )
    def test_unknown(self, name: str) -> None:
        with pytest.raises(NotInCatalog):
            rootspace.catalog(name)

    @pytest.mark.parametrize("space", catalog_spaces(), ids=lambda s: s.name)
    def test_catalog_validates_strictly(self, space: SymmetricSpaceData) -> None:
        report = rootspace.validate(space, strict=True)
        assert report.ok, report.failures


class TestValidate:
    """validate names each failing invariant."""

    def test_bad_dimension(self, fixtures_dir: Path) -> None:
        space = rootspace.load_space(fixtures_dir / "spaces" / "bad-dimension.json")
        report = rootspace.validate(space)
        assert not report.ok
        assert report.failures == ("dimension",)

    def test_not_positive_definite(self) -> None:
        good = rootspace.sphere(3)
        bad = SymmetricSpaceData(
            name="neg",
            rank=1,
            positive_roots=good.positive_roots,
            gram=((Fraction(-1),),),
            lattice=good.lattice,
            dim_n=3,
        )
        report = rootspace.validate(bad)
        assert "gram-positive-definite" in report.failures

    def test_lattice_not_integral(self) -> None:
        good = rootspace.sphere(3)
        bad = SymmetricSpaceData(
            name="half",
            rank=1,
            positive_roots=good.positive_roots,
            gram=good.gram,
            lattice=rootspace.Lattice((vec((Fraction(1, 2),)),)),
            dim_n=3,
        )
        assert "lattice-integrality" in rootspace.validate(bad).failures

    def test_cpn_is_not_reduced(self, cp2: SymmetricSpaceData) -> None:
        report = rootspace.validate(cp2, strict=True, reduced=True)
        assert report.failures == ("reduced",)


class TestLattice:
    def test_evaluate(self, gr2c4: SymmetricSpaceData) -> None:
        H = vec((2, 1))
        assert [rootspace.evaluate(gr2c4, i, H) for i in range(4)] == [1, 3, 4, 2]

    def test_coordinates(self, gr2c4: SymmetricSpaceData) -> None:
        assert rootspace.lattice_coordinates(gr2c4, vec((2, 1))) == vec((1, 2))

    def test_half_point_is_in_lattice(self, gr2c4: SymmetricSpaceData) -> None:
        assert rootspace.in_lattice(gr2c4, vec((Fraction(1, 2), Fraction(1, 2))))
        assert not rootspace.in_lattice(gr2c4, vec((Fraction(1, 2), 0)))

    def test_require_rejects_zero(self, gr2c4: SymmetricSpaceData) -> None:
        with pytest.raises(ZeroDirection):
            rootspace.require_lattice_point(gr2c4, vec((0, 0)))

    def test_require_rejects_off_lattice(self, sphere3: SymmetricSpaceData) -> None:
        with pytest.raises(NotClosed, match="not a closed geodesic"):
            rootspace.require_lattice_point(sphere3, vec((1,)))

    def test_primitive_decomposition(self, gr2c4: SymmetricSpaceData) -> None:
        # (2,2) has lattice coordinates (0,4)
        primitive, k = rootspace.primitive_decomposition(gr2c4, vec((2, 2)))
        assert k == 4
        assert primitive == vec((Fraction(1, 2), Fraction(1, 2)))

    def test_prime_point_is_its_own_primitive(self, gr2c4: SymmetricSpaceData) -> None:
        assert rootspace.primitive_decomposition(gr2c4, vec((2, 1))) == (vec((2, 1)), 1)


class TestDocuments:
    """Space documents load, reject typos and round-trip."""

    def test_fixture_matches_catalog(self, fixtures_dir: Path) -> None:
        loaded = rootspace.load_space(fixtures_dir / "spaces" / "gr2c4.json")
        assert loaded == rootspace.gr2c4()

    def test_unknown_key(self, fixtures_dir: Path) -> None:
        with pytest.raises(DocumentError, match="multiplicty"):
            rootspace.load_space(fixtures_dir / "spaces" / "unknown-key.json")

    @pytest.mark.parametrize("space", catalog_spaces(), ids=lambda s: s.name)
    def test_round_trip(self, space: SymmetricSpaceData) -> None:
        doc = json.loads(json.dumps(rootspace.space_to_document(space)))
        assert rootspace.space_from_document(doc) == space

    def test_float_rejected(self) -> None:
        doc = dict(rootspace.space_to_document(rootspace.sphere(3)))
        doc["gram"] = [[1.0]]
        with pytest.raises(DocumentError, match="gram"):
            rootspace.space_from_document(doc)

    def test_dim_n_mismatch_warns(self, caplog: pytest.LogCaptureFixture) -> None:
        doc = dict(rootspace.space_to_document(rootspace.sphere(3)))
        doc["dim_n"] = 7
        with caplog.at_level("WARNING", logger="symloop.rootspace"):
            space = rootspace.space_from_document(doc)
        assert space.dim_n == 7
        assert "disagrees" in caplog.text


class TestValidateCommand:
    """symloop validate / info print one row per check or fact."""

    def test_ok(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert rootspace.main(["--space", "gr2c4", "--strict"]) == 0
        out = capsys.readouterr().out
        assert "ok\tdimension" in out
        assert "FAIL" not in out

    def test_failure_exits_1(self, fixtures_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
        path = fixtures_dir / "spaces" / "bad-dimension.json"
        assert rootspace.main(["--space", str(path)]) == 1
        captured = capsys.readouterr()
        assert "FAIL\tdimension" in captured.out
        assert captured.err.startswith("Error: InvalidSpace:")

    def test_missing_space_is_usage_error(self) -> None:
        assert rootspace.main([]) == 2

    def test_info(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert rootspace.info_main(["--space", "gr2c4"]) == 0
        out = capsys.readouterr().out
        assert "weyl_order\t8" in out
        assert "root 0\t1,-1\tm=2\tsimple" in out
        assert "root 3\t0,2\tm=1\tsimple" in out
        assert "lattice 1\t1/2,1/2" in out
