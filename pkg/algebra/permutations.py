"""Permutations of a finite support and their breadth-first closure."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

from config import settings
from errors import DomainError, ResourceBoundError

logger = logging.getLogger(__name__)

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[i] for i in q)


def identity(n: int) -> Perm:
    return tuple(range(n))


def from_mapping(points: list, mapping: dict) -> Perm:
    index = {x: i for i, x in enumerate(points)}
    if set(mapping) != set(points):
        raise DomainError("mapping does not cover the support")
    return tuple(index[mapping[x]] for x in points)


@dataclass
class PermutationClosure:
    degree: int
    generators: list[Perm]
    elements: set[Perm]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements


def closure(generators: list[Perm], degree: int, bound: int | None = None) -> PermutationClosure:
    """All products of the generators, by hashing and a breadth-first frontier."""
    bound = bound or settings.closure_bound
    gens = [g for g in dict.fromkeys(generators) if g != identity(degree)]
    start = identity(degree)
    seen = {start}
    frontier = deque([start])
    while frontier:
        p = frontier.popleft()
        for g in gens:
            image = compose(g, p)
            if image not in seen:
                seen.add(image)
                if len(seen) > bound:
                    raise ResourceBoundError("permutation closure", bound)
                frontier.append(image)
    logger.debug("closure of %d generators on %d points: %d elements", len(gens), degree, len(seen))
    return PermutationClosure(degree, gens, seen)
