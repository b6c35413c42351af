"""Tests for symloop.products."""

from __future__ import annotations

import random

import pytest

from symloop import geodesics, linalg, products, rootspace, weyl
from symloop.errors import NotApplicable, NotClosed, Unsupported, ZeroDirection
from symloop.linalg import RatVec, vec
from symloop.rootspace import SymmetricSpaceData


@pytest.fixture
def s2() -> SymmetricSpaceData:
    return rootspace.sphere(2)


class TestCompose:
    def test_block_structure(self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData) -> None:
        product = products.compose(s2, sphere3)
        assert product.space.name == "sphere(2)*sphere(3)"
        assert product.space.rank == 2
        assert product.space.dim_n == 5
        assert product.tag.split == (1, 1)
        assert [r.functional for r in product.space.positive_roots] == [vec((1, 0)), vec((0, 1))]

    def test_product_validates(self, gr2c4: SymmetricSpaceData, cp2: SymmetricSpaceData) -> None:
        space = products.compose(gr2c4, cp2).space
        assert rootspace.validate(space, strict=True).ok

    def test_weyl_order_multiplies(
        self, gr2c4: SymmetricSpaceData, sphere3: SymmetricSpaceData
    ) -> None:
        space = products.compose(gr2c4, sphere3).space
        assert weyl.generate_group(space).order == 8 * 2

    def test_compose_all(
        self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData, gr2c4: SymmetricSpaceData
    ) -> None:
        product = products.compose_all([s2, sphere3, gr2c4])
        assert product.tag.components == ("sphere(2)", "sphere(3)", "gr2c4")
        assert product.tag.split == (1, 1, 2)
        assert product.space.rank == 4
        assert weyl.generate_group(product.space).order == 2 * 2 * 8

    def test_compose_all_needs_a_space(self) -> None:
        with pytest.raises(ValueError):
            products.compose_all([])


class TestFactorCheck:
    """Conjugate times, index and μ of (H1, H2) split factor by factor."""

    def test_shared_conjugate_time(
        self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData
    ) -> None:
        result = products.factor_check(s2, sphere3, vec((2,)), vec((2,)))
        assert result.holds
        identities = {i.label: i for i in result.identities}
        assert identities["multiplicity@1/2"].lhs == 3
        assert identities["index"].lhs == 3

    def test_gr2c4_times_sphere(
        self, gr2c4: SymmetricSpaceData, sphere3: SymmetricSpaceData
    ) -> None:
        result = products.factor_check(gr2c4, sphere3, vec((2, 1)), vec((2,)))
        assert result.holds
        assert {i.label: i.lhs for i in result.identities}["index"] == 10

    def test_constant_factor(self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData) -> None:
        result = products.factor_check(s2, sphere3, vec((0,)), vec((4,)))
        assert result.holds
        identities = {i.label: i for i in result.identities}
        assert identities["index"].lhs == geodesics.index(sphere3, vec((4,)))

    def test_both_constant(self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData) -> None:
        with pytest.raises(ZeroDirection):
            products.factor_check(s2, sphere3, vec((0,)), vec((0,)))

    def test_factor_not_closed(self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData) -> None:
        with pytest.raises(NotClosed):
            products.factor_check(s2, sphere3, vec((1,)), vec((2,)))


class TestVanishing:
    def test_report(self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData) -> None:
        report = products.coproduct_vanishing_report(
            products.compose(s2, sphere3), vec((2,)), vec((2,))
        )
        assert report.verdict == "CoproductTrivial"
        assert (report.first.index, report.first.sigma_dim, report.first.gamma_dim) == (1, 3, 4)
        assert (report.second.index, report.second.sigma_dim) == (2, 5)
        assert report.product.gamma_dim == report.first.gamma_dim + report.second.gamma_dim
        assert report.kunneth == products.KUNNETH_SUMMANDS

    def test_constant_factor_not_applicable(
        self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData
    ) -> None:
        with pytest.raises(NotApplicable):
            products.coproduct_vanishing_report(
                products.compose(s2, sphere3), vec((0,)), vec((2,))
            )

    def test_three_factors_unsupported(
        self, s2: SymmetricSpaceData, sphere3: SymmetricSpaceData
    ) -> None:
        product = products.compose_all([s2, s2, sphere3])
        with pytest.raises(Unsupported):
            products.coproduct_vanishing_report(product, vec((2,)), vec((2,)))


PAIRS = [("sphere(2)", "sphere(3)"), ("gr2c4", "sphere(3)")]


def _lattice_point(space: SymmetricSpaceData, rng: random.Random) -> RatVec:
    return space.lattice.point(tuple(rng.randint(-3, 3) for _ in range(space.rank)))


class TestRandomPairs:
    """Seeded (H1, H2) pairs, including one constant factor."""

    @pytest.mark.parametrize(("first", "second"), PAIRS)
    def test_factors_add_up(self, first: str, second: str) -> None:
        s1, s2 = rootspace.catalog(first), rootspace.catalog(second)
        product = products.compose(s1, s2)
        rng = random.Random(11)
        checked = 0
        while checked < 50:
            H1, H2 = _lattice_point(s1, rng), _lattice_point(s2, rng)
            if linalg.is_zero(H1) and linalg.is_zero(H2):
                continue
            result = products.factor_check(s1, s2, H1, H2)
            assert result.holds, result.identities
            if linalg.is_zero(H1) or linalg.is_zero(H2):
                with pytest.raises(NotApplicable):
                    products.coproduct_vanishing_report(product, H1, H2)
            else:
                report = products.coproduct_vanishing_report(product, H1, H2)
                assert report.verdict == "CoproductTrivial"
                assert report.product.gamma_dim == (
                    report.first.gamma_dim + report.second.gamma_dim
                )
            checked += 1


class TestProductCommand:
    def test_summary(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert products.main(["sphere(2)", "sphere(3)"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[:4] == ["# product: sphere(2)*sphere(3)", "rank\t2", "dim\t5", "split\t1,1"]

    def test_check(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert products.main(["sphere(2)", "sphere(3)", "--H1", "2", "--H2", "2"]) == 0
        out = capsys.readouterr().out
        assert "ok\tmultiplicity@1/2\t3\t3" in out
        assert "# coproduct: CoproductTrivial" in out
        assert "summand\trelative⊗relative\tTrivial" in out

    def test_constant_factor(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert products.main(["sphere(2)", "sphere(3)", "--H2", "2"]) == 0
        assert "# coproduct: NotApplicable:" in capsys.readouterr().out

    def test_one_space(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert products.main(["sphere(2)"]) == 1
        assert "at least two spaces" in capsys.readouterr().err

    def test_three_spaces_with_h(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert products.main(["sphere(2)", "sphere(2)", "gr2c4", "--H1", "2"]) == 1
        assert "Unsupported" in capsys.readouterr().err
