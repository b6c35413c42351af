# DO NOT add 'from __future__ import annotations': PEP 563 turns annotations into strings,
# which breaks Required[] resolution: __required_keys__ becomes frozenset() at runtime.
"""TypedDict definitions for symloop documents and report rows.

Input documents (spaces, rings, certificates) are JSON objects; report rows are
emitted one per line by ``--jsonl``. Rationals are always ``"p/q"`` strings (or
``"p"`` for integers) so every record is exact.
"""

from typing import Required, TypedDict


class RootDocument(TypedDict):
    """One positive restricted root in a space file."""

    functional: list[str]
    multiplicity: int


class SpaceDocument(TypedDict, total=False):
    """A space-definition file.

    ``gram`` is row-major. ``dim_n`` defaults to rank + Σ multiplicities and
    ``z2_orientable_cycles`` to false.
    """

    name: Required[str]
    rank: Required[int]
    gram: Required[list[list[str]]]
    roots: Required[list[RootDocument]]
    lattice_basis: Required[list[list[str]]]
    dim_n: int
    z2_orientable_cycles: bool


class RingDocument(TypedDict, total=False):
    """An intersection-ring table over ℤ₂.

    ``products`` holds ``[i, j, k]`` label triples meaning k occurs in i•j.
    Products with the fundamental class may be omitted; the loader fills them in
    as the unit law.
    """

    basis: Required[list[list[str | int]]]
    fundamental: Required[str]
    point: Required[str]
    products: list[list[str]]


class CertificateDocument(TypedDict, total=False):
    """A lattice-nonintersecting polygon certificate."""

    space: Required[str]
    family: Required[list[list[int]]]
    junctions: Required[list[list[str]]]
    polygons: Required[list[list[list[str]]]]
    seed: int


class ConjugateTimeRecord(TypedDict):
    """One interior conjugate time: contributing roots as [root_index, level]."""

    t: str
    multiplicity: int
    roots: list[list[int]]


class GeodesicRecord(TypedDict):
    """Output row of ``symloop geodesic --jsonl``."""

    space: str
    H: str
    lattice_coords: str
    conjugate_times: list[ConjugateTimeRecord]
    index: int
    mu: int
    nullity: int
    energy: str
    prime: bool
    primitive: str
    iterate_k: int


class CriticalRecord(TypedDict):
    """Output row of ``symloop enumerate --jsonl``."""

    H: str
    energy: str
    index: int
    nullity: int
    prime: bool
    primitive: str
    k: int
    w_class_degree: int
    w_class_trivial: bool


class BottRecord(TypedDict, total=False):
    """Output row of ``symloop bott``."""

    planes: Required[list[list[int]]]
    gamma_dim: Required[int]
    int_multiplicity: Required[str]
    based_coproduct: Required[str]
    reason: str
