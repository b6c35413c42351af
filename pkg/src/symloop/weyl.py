"""Weyl group of the restricted root system: reflections, closure, chambers."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from symloop import linalg
from symloop.errors import CapExceeded
from symloop.linalg import RatMatrix, RatVec
from symloop.rootspace import SymmetricSpaceData

logger = logging.getLogger(__name__)

DEFAULT_GROUP_CAP = 10**6


@dataclass(frozen=True)
class WeylGroup:
    elements: tuple[RatMatrix, ...]
    generators: tuple[RatMatrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class ChamberPosition:
    point: RatVec
    dominant: bool
    stabilizing_walls: tuple[int, ...]


def reflect(space: SymmetricSpaceData, root_index: int, H: RatVec) -> RatVec:
    return space.reflect(root_index, H)


def reflection_matrix(space: SymmetricSpaceData, root_index: int) -> RatMatrix:
    columns = [space.reflect(root_index, e) for e in linalg.identity(space.rank)]
    return linalg.columns_to_matrix(columns)


def apply(element: RatMatrix, H: RatVec) -> RatVec:
    return linalg.mat_vec(element, H)


def generate_group(space: SymmetricSpaceData, cap: int = DEFAULT_GROUP_CAP) -> WeylGroup:
    """Close the root reflections under composition.

    Raises:
        CapExceeded: If more than *cap* elements appear (malformed root data).
    """
    generators = tuple(reflection_matrix(space, i) for i in range(len(space.positive_roots)))
    identity = linalg.identity(space.rank)
    seen = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for g in frontier:
            for s in generators:
                h = linalg.mat_mul(s, g)
                if h in seen:
                    continue
                seen.add(h)
                fresh.append(h)
                if len(seen) > cap:
                    raise CapExceeded(
                        f"{space.name}: Weyl group exceeds {cap} elements; root data is not "
                        "a finite reflection system"
                    )
        frontier = fresh
    logger.debug("%s: Weyl group of order %d", space.name, len(seen))
    return WeylGroup(tuple(sorted(seen)), generators)


@lru_cache(maxsize=64)
def simple_roots(space: SymmetricSpaceData) -> tuple[int, ...]:
    """Indices of positive roots that are not a sum of two positive roots."""
    functionals = [root.functional for root in space.positive_roots]
    sums = {
        linalg.add(a, b) for i, a in enumerate(functionals) for b in functionals[i:]
    }
    return tuple(i for i, f in enumerate(functionals) if f not in sums)


def is_dominant(space: SymmetricSpaceData, H: RatVec) -> bool:
    return all(space.evaluate(i, H) >= 0 for i in simple_roots(space))


def chamber_position(space: SymmetricSpaceData, H: RatVec) -> ChamberPosition:
    walls = tuple(i for i, v in enumerate(space.root_values(H)) if v == 0)
    return ChamberPosition(H, is_dominant(space, H), walls)


def canonicalize(space: SymmetricSpaceData, H: RatVec) -> tuple[RatVec, tuple[int, ...]]:
    """Move H into the closed positive chamber.

    Returns ``(H_dom, word)``; reflecting H successively in the roots listed in
    ``word`` gives H_dom. Dominant inputs come back unchanged with an empty word.
    """
    simple = simple_roots(space)
    word: list[int] = []
    current = H
    # each step flips at least one positive root from negative to positive on H
    for _ in range(len(space.positive_roots) + 1):
        negative = next((i for i in simple if space.evaluate(i, current) < 0), None)
        if negative is None:
            return current, tuple(word)
        current = space.reflect(negative, current)
        word.append(negative)
    logger.warning("%s: greedy canonicalization stalled, searching the orbit", space.name)
    return _canonicalize_by_orbit(space, H)


def _canonicalize_by_orbit(
    space: SymmetricSpaceData, H: RatVec
) -> tuple[RatVec, tuple[int, ...]]:
    words: dict[RatVec, tuple[int, ...]] = {H: ()}
    queue = deque([H])
    while queue:
        point = queue.popleft()
        if is_dominant(space, point):
            return point, words[point]
        for i in range(len(space.positive_roots)):
            image = space.reflect(i, point)
            if image not in words:
                words[image] = (*words[point], i)
                queue.append(image)
    raise CapExceeded(f"{space.name}: orbit of {linalg.format_ratvec(H)} has no dominant point")


def orbit(space: SymmetricSpaceData, H: RatVec) -> tuple[RatVec, ...]:
    """The Weyl orbit of H, sorted."""
    seen = {H}
    queue = deque([H])
    while queue:
        point = queue.popleft()
        for i in range(len(space.positive_roots)):
            image = space.reflect(i, point)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return tuple(sorted(seen))
