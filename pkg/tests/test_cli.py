"""Tests for symloop.cli: subcommand dispatch."""

from __future__ import annotations

from pathlib import Path

import pytest

from symloop import __version__
from symloop.cli import SUBCOMMANDS, run


def test_no_args_prints_help(capsys: pytest.CaptureFixture[str]) -> None:
    assert run([]) == 0
    out = capsys.readouterr().out
    for name in SUBCOMMANDS:
        assert name in out


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["--version"]) == 0
    assert capsys.readouterr().out.strip() == f"symloop {__version__}"


def test_unknown_command_suggests(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["geodesics"]) == 2
    err = capsys.readouterr().err
    assert "Unknown command 'geodesics'" in err
    assert "Did you mean: geodesic" in err


def test_dispatch_geodesic(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["geodesic", "--space", "gr2c4", "--H", "2,1"]) == 0
    out = capsys.readouterr().out
    assert "index\t8" in out
    assert "mu\t6" in out
    assert "nullity\t14" in out


def test_dispatch_product_flag(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["geodesic", "--product", "sphere(2),sphere(3)", "--H", "2,2"]
    assert run(argv) == 0
    assert "index\t3" in capsys.readouterr().out


def test_malformed_space_file_exits_1(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "broken.json"
    path.write_text('{"name": "x", "rank": 1')
    assert run(["validate", "--space", str(path)]) == 1
    assert capsys.readouterr().err.startswith("Error: DocumentError:")


def test_subcommand_help(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["bott", "--help"]) == 0
    assert "--planes" in capsys.readouterr().out


@pytest.mark.parametrize(
    ("argv", "code"),
    [
        (["bott", "--space", "gr2c4", "--planes", "7:1"], "InvalidFamily"),
        (["bott", "--space", "gr2c4", "--planes", "1"], "InvalidFamily"),
        (["geodesic", "--product", "sphere(2),sphere(3),cpn(2)", "--H", "2,2,1"], "Unsupported"),
        (["product", "sphere(2)"], "Unsupported"),
        (["enumerate", "--space", "sphere(3", "--energy", "4"], "NotInCatalog"),
        (
            ["cs-product", "--space", "sphere(3)", "--H", "2", "--a", "S+", "--b", "S"],
            "InvalidRing",
        ),
    ],
)
def test_domain_errors_carry_code(
    argv: list[str], code: str, capsys: pytest.CaptureFixture[str]
) -> None:
    assert run(argv) == 1
    err = capsys.readouterr().err
    assert err.startswith(f"Error: {code}: ")
    assert err.count("\n") == 1
