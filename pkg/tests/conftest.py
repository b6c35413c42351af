"""Shared fixtures for the symloop test suite."""

from pathlib import Path

import pytest

from symloop import csring, rootspace
from symloop.rootspace import SymmetricSpaceData

# Project root directory
PROJECT_DIR = Path(__file__).parent.parent
FIXTURES_DIR = PROJECT_DIR / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    """Return the path to the fixtures directory."""
    return FIXTURES_DIR


@pytest.fixture
def gr2c4() -> SymmetricSpaceData:
    """The rank-2 Grassmannian of 2-planes in ℂ⁴ (restricted roots of type C₂)."""
    return rootspace.gr2c4()


@pytest.fixture
def sphere3() -> SymmetricSpaceData:
    return rootspace.sphere(3)


@pytest.fixture
def cp2() -> SymmetricSpaceData:
    return rootspace.cpn(2)


@pytest.fixture
def s2xs3() -> SymmetricSpaceData:
    """sphere(2) × sphere(3) composed from the catalog."""
    return rootspace.catalog("sphere(2)*sphere(3)")


@pytest.fixture
def ring_s3() -> csring.IntersectionRing:
    """Two-class ring for the 5-dimensional critical manifold of a prime geodesic on S³."""
    return csring.builtin_ring("two-class", 5)


@pytest.fixture
def unit_tangent_ring() -> csring.IntersectionRing:
    """H_*(S²×S³) with a•b = pt."""
    return csring.builtin_ring("unit-tangent-s3", 5)


@pytest.fixture
def ring_gr2c4() -> csring.IntersectionRing:
    """Two-class ring for Σ of dimension 14 (gr2c4, H = (2,1))."""
    return csring.builtin_ring("two-class", 14)


def catalog_spaces() -> list[SymmetricSpaceData]:
    """Every catalog space exercised by property tests."""
    spheres = [rootspace.sphere(n) for n in range(2, 7)]
    projective = [rootspace.cpn(n) for n in range(1, 4)]
    return [*spheres, *projective, rootspace.gr2c4()]
