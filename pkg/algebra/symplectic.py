from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Callable, Iterator, Union

from sympy.combinatorics import Permutation, PermutationGroup

from algebra.torsion import TorsionElement, TorsionGroup
from config import settings
from errors import DomainError, ResourceBoundError, VerificationError

logger = logging.getLogger(__name__)

NATURAL = "natural"
TWISTED = "twisted"


@dataclass(frozen=True)
class SymplecticMap:
    """An automorphism of T preserving beta, given by the images of the basis."""

    group: TorsionGroup
    images: tuple[TorsionElement, ...]

    @classmethod
    def identity(cls, group: TorsionGroup) -> SymplecticMap:
        return cls(group, tuple(group.basis()))

    def __call__(self, t: TorsionElement) -> TorsionElement:
        out = self.group.identity
        for x, image in zip(t, self.images):
            if x:
                out = self.group.mul(out, self.group.power(image, x))
        return out

    def compose(self, other: SymplecticMap) -> SymplecticMap:
        """self after other."""
        return SymplecticMap(self.group, tuple(self(image) for image in other.images))

    @cached_property
    def inverse(self) -> SymplecticMap:
        preimage = {self(t): t for t in self.group.elements()}
        return SymplecticMap(self.group, tuple(preimage[e] for e in self.group.basis()))

    def is_automorphism(self) -> bool:
        g = self.group
        basis = g.basis()
        for k, (e, image) in enumerate(zip(basis, self.images)):
            if g.power(image, g.moduli[k]) != g.identity:
                return False
            for j in range(k):
                if g.beta_log(image, self.images[j]) != g.beta_log(e, basis[j]):
                    return False
        return True

    def is_identity(self) -> bool:
        return self.images == tuple(self.group.basis())


@dataclass(frozen=True)
class AffineSymplectic:
    """The pair (u, alpha) acting by t -> alpha(t) u."""

    shift: TorsionElement
    map: SymplecticMap

    @classmethod
    def identity(cls, group: TorsionGroup) -> AffineSymplectic:
        return cls(group.identity, SymplecticMap.identity(group))

    def __call__(self, t: TorsionElement) -> TorsionElement:
        return self.map.group.mul(self.map(t), self.shift)

    def compose(self, other: AffineSymplectic) -> AffineSymplectic:
        g = self.map.group
        return AffineSymplectic(g.mul(self.map(other.shift), self.shift), self.map.compose(other.map))

    @property
    def inverse(self) -> AffineSymplectic:
        g = self.map.group
        inv = self.map.inverse
        return AffineSymplectic(inv(g.inv(self.shift)), inv)


GroupElement = Union[SymplecticMap, AffineSymplectic]


# ── Aut(T, beta) ──


def _transvection(group: TorsionGroup, v: TorsionElement) -> SymplecticMap:
    # x -> x + <x, v> v over F_2
    images = []
    for e in group.basis():
        images.append(group.mul(e, v) if group.beta_log(e, v) else e)
    return SymplecticMap(group, tuple(images))


def _enumerate_maps(group: TorsionGroup) -> Iterator[SymplecticMap]:
    """Depth-first filtering of basis-image tuples that preserve beta."""
    basis = group.basis()
    elements = group.elements()
    candidates = [
        [t for t in elements if group.power(t, group.moduli[k]) == group.identity]
        for k in range(group.rank)
    ]

    def extend(images: list[TorsionElement]):
        k = len(images)
        if k == group.rank:
            yield SymplecticMap(group, tuple(images))
            return
        for t in candidates[k]:
            if all(
                group.beta_log(t, images[j]) == group.beta_log(basis[k], basis[j]) for j in range(k)
            ):
                images.append(t)
                yield from extend(images)
                images.pop()

    yield from extend([])


def symplectic_order_formula(r: int) -> int:
    """|Sp_2r(2)| = 2^(r^2) prod (4^i - 1)."""
    return 2 ** (r * r) * prod(4**i - 1 for i in range(1, r + 1))


class SymplecticGroup:
    """Handle on Aut(T, beta): generators, exact order, elements on demand."""

    def __init__(self, group: TorsionGroup):
        self.group = group
        self.points = group.elements()
        self.index = {t: i for i, t in enumerate(self.points)}

    def to_permutation(self, f: Callable[[TorsionElement], TorsionElement]) -> Permutation:
        return Permutation([self.index[f(t)] for t in self.points])

    @cached_property
    def generators(self) -> list[SymplecticMap]:
        g = self.group
        if g.is_elementary_two:
            pool = [_transvection(g, v) for v in self.points if v != g.identity]
        else:
            pool = list(_enumerate_maps(g))
        return reduce_generators(self, pool)

    @cached_property
    def permutation_group(self) -> PermutationGroup:
        perms = [self.to_permutation(a) for a in self.generators]
        return PermutationGroup(perms or [Permutation(list(range(len(self.points))))])

    @cached_property
    def order(self) -> int:
        order = int(self.permutation_group.order())
        if self.group.is_elementary_two and order != symplectic_order_formula(self.group.r):
            raise VerificationError(
                f"Schreier-Sims order {order} of Sp_{self.group.rank}(2) disagrees with the closed form"
            )
        logger.debug("Aut(T,beta) for %s has order %d", self.group.describe(), order)
        return order

    def elements(self, bound: int | None = None) -> Iterator[SymplecticMap]:
        bound = bound or settings.enumeration_bound
        if self.order > bound:
            raise ResourceBoundError(f"Aut(T,beta) of order {self.order}", bound)
        return _enumerate_maps(self.group)


_AUT_CACHE: dict[TorsionGroup, SymplecticGroup] = {}


def aut_group(group: TorsionGroup) -> SymplecticGroup:
    if group not in _AUT_CACHE:
        _AUT_CACHE[group] = SymplecticGroup(group)
    return _AUT_CACHE[group]


def reduce_generators(aut: SymplecticGroup, pool: list[SymplecticMap]) -> list[SymplecticMap]:
    """Keep each candidate only if it is not already in the group generated so far."""
    kept: list[SymplecticMap] = []
    current: PermutationGroup | None = None
    for a in pool:
        if a.is_identity():
            continue
        perm = aut.to_permutation(a)
        if current is not None and current.contains(perm):
            continue
        kept.append(a)
        current = PermutationGroup([aut.to_permutation(x) for x in kept])
    return kept


# ── Twisted action ──


def t_alpha(group: TorsionGroup, alpha: SymplecticMap) -> TorsionElement:
    """Unique t with beta(t, x) = beta(alpha^-1(x)) beta(x) for all x."""
    inv = alpha.inverse

    def character(x: TorsionElement) -> int:
        return group.quad_sign(inv(x)) * group.quad_sign(x)

    exps = []
    for k in range(group.r):
        a_k = group.basis()[2 * k]
        b_k = group.basis()[2 * k + 1]
        # beta(t, a_k) = (-1)^j_k(t), beta(t, b_k) = (-1)^i_k(t)
        exps.append(1 if character(b_k) == -1 else 0)
        exps.append(1 if character(a_k) == -1 else 0)
    t = tuple(exps)
    for x in group.elements():
        if group.beta_sign(t, x) != character(x):
            raise VerificationError(f"t_alpha {group.format(t)} fails at {group.format(x)}")
    return t


def act(kind: str, g: GroupElement, t: TorsionElement) -> TorsionElement:
    if kind == NATURAL:
        return g(t)
    if kind == TWISTED:
        alpha = g.map if isinstance(g, AffineSymplectic) else g
        group = alpha.group
        return group.mul(alpha(t), t_alpha(group, alpha))
    raise DomainError(f"unknown action kind {kind!r}")


def as_point_map(kind: str, g: GroupElement) -> Callable[[TorsionElement], TorsionElement]:
    """The permutation of T induced by g; t_alpha is computed once."""
    if kind == TWISTED:
        alpha = g.map if isinstance(g, AffineSymplectic) else g
        group = alpha.group
        shift = t_alpha(group, alpha)
        return lambda t: group.mul(alpha(t), shift)
    return g


# ── Multisets ──


@dataclass(frozen=True)
class MultisetSigma:
    entries: tuple[tuple[TorsionElement, int], ...]

    @classmethod
    def from_tau(cls, tau) -> MultisetSigma:
        counts: dict[TorsionElement, int] = {}
        for t in tau:
            counts[tuple(t)] = counts.get(tuple(t), 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def q(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.entries]

    def flat(self) -> tuple[TorsionElement, ...]:
        return tuple(t for t, m in self.entries for _ in range(m))

    def image(self, f: Callable[[TorsionElement], TorsionElement]) -> MultisetSigma:
        return MultisetSigma.from_tau([f(t) for t in self.flat()])


def restriction(f: Callable[[TorsionElement], TorsionElement], tau) -> tuple[int, ...]:
    """The permutation pi of tau's indices with tau[pi(i)] = f(tau[i]), order-preserving within blocks."""
    positions: dict[TorsionElement, list[int]] = {}
    for i, t in enumerate(tau):
        positions.setdefault(tuple(t), []).append(i)
    seen: dict[TorsionElement, int] = {}
    pi = []
    for t in tau:
        t = tuple(t)
        rank = seen.get(t, 0)
        seen[t] = rank + 1
        target = positions.get(f(t))
        if target is None or len(target) != len(positions[t]):
            raise DomainError("map does not stabilize the multiset")
        pi.append(target[rank])
    return tuple(pi)


def acting_generators(group: TorsionGroup, kind: str) -> list[GroupElement]:
    sp = aut_group(group).generators
    if kind == TWISTED:
        return list(sp)
    ident = SymplecticMap.identity(group)
    return [AffineSymplectic(e, ident) for e in group.basis()] + [
        AffineSymplectic(group.identity, a) for a in sp
    ]


def acting_order(group: TorsionGroup, kind: str) -> int:
    order = aut_group(group).order
    return order * group.order if kind == NATURAL else order


def _identity_of(group: TorsionGroup, kind: str) -> GroupElement:
    return SymplecticMap.identity(group) if kind == TWISTED else AffineSymplectic.identity(group)


def _compose(a: GroupElement, b: GroupElement) -> GroupElement:
    return a.compose(b)


def _inverse(a: GroupElement) -> GroupElement:
    return a.inverse


def orbit(
    group: TorsionGroup, sigma: MultisetSigma, kind: str, bound: int | None = None
) -> dict[MultisetSigma, GroupElement]:
    """Breadth-first orbit of sigma with a transversal: point -> element carrying sigma to it."""
    bound = bound or settings.enumeration_bound
    gens = [(g, as_point_map(kind, g)) for g in acting_generators(group, kind)]
    transversal: dict[MultisetSigma, GroupElement] = {sigma: _identity_of(group, kind)}
    queue = deque([sigma])
    while queue:
        point = queue.popleft()
        for g, f in gens:
            image = point.image(f)
            if image not in transversal:
                transversal[image] = _compose(g, transversal[point])
                if len(transversal) > bound:
                    raise ResourceBoundError("multiset orbit", bound)
                queue.append(image)
    logger.debug("orbit of %s under the %s action: %d points", sigma.entries, kind, len(transversal))
    return transversal


def canonical_form(group: TorsionGroup, sigma: MultisetSigma, kind: str) -> MultisetSigma:
    """Least multiset in the orbit, in lexicographic order of flattened exponent vectors."""
    return min(orbit(group, sigma, kind), key=lambda s: s.flat())


def orbit_witness(
    group: TorsionGroup, source: MultisetSigma, target: MultisetSigma, kind: str
) -> GroupElement | None:
    return orbit(group, source, kind).get(target)


@dataclass
class SigmaStabilizer:
    kind: str
    sigma: MultisetSigma
    order: int
    orbit_size: int
    generators: list[GroupElement]

    def restriction(self, g: GroupElement, tau=None) -> tuple[int, ...]:
        return restriction(as_point_map(self.kind, g), tau if tau is not None else self.sigma.flat())


def sigma_stabilizer(
    group: TorsionGroup, sigma: MultisetSigma, kind: str, method: str | None = None
) -> SigmaStabilizer:
    """Stabilizer of sigma: full enumeration for r <= 2, orbit with Schreier generators beyond."""
    if kind == TWISTED:
        group.require_elementary()
    elif not group.is_elementary_two:
        raise DomainError("multiset stabilizers are defined over elementary 2-groups")
    total = acting_order(group, kind)
    method = method or ("enumerate" if group.r <= 2 else "schreier")

    if method == "enumerate":
        if total > settings.enumeration_bound:
            raise ResourceBoundError(f"acting group of order {total}", settings.enumeration_bound)
        members = [g for g in _acting_elements(group, kind) if sigma.image(as_point_map(kind, g)) == sigma]
        orbit_size = total // len(members)
        gens = _reduce_acting(group, kind, members)
        result = SigmaStabilizer(kind, sigma, len(members), orbit_size, gens)
    else:
        transversal = orbit(group, sigma, kind)
        orbit_size = len(transversal)
        if total % orbit_size:
            raise VerificationError(f"orbit size {orbit_size} does not divide {total}")
        gens = _schreier_generators(group, kind, sigma, transversal, total // orbit_size)
        result = SigmaStabilizer(kind, sigma, total // orbit_size, orbit_size, gens)

    logger.info(
        "stabilizer of %s (%s): order %d, orbit %d", sigma.entries, kind, result.order, result.orbit_size
    )
    return result


def _acting_elements(group: TorsionGroup, kind: str) -> Iterator[GroupElement]:
    maps = list(aut_group(group).elements())
    if kind == TWISTED:
        yield from maps
        return
    for a in maps:
        for u in group.elements():
            yield AffineSymplectic(u, a)


def _point_permutation(aut: SymplecticGroup, kind: str, g: GroupElement) -> Permutation:
    return aut.to_permutation(as_point_map(kind, g))


def _reduce_acting(group: TorsionGroup, kind: str, members: list[GroupElement]) -> list[GroupElement]:
    aut = aut_group(group)
    kept: list[GroupElement] = []
    current: PermutationGroup | None = None
    for g in members:
        perm = _point_permutation(aut, kind, g)
        if perm.is_Identity:
            continue
        if current is not None and current.contains(perm):
            continue
        kept.append(g)
        current = PermutationGroup([_point_permutation(aut, kind, x) for x in kept])
    return kept


def _schreier_generators(
    group: TorsionGroup,
    kind: str,
    sigma: MultisetSigma,
    transversal: dict[MultisetSigma, GroupElement],
    target_order: int,
) -> list[GroupElement]:
    aut = aut_group(group)
    kept: list[GroupElement] = []
    current: PermutationGroup | None = None
    for point, u in transversal.items():
        for g in acting_generators(group, kind):
            image = point.image(as_point_map(kind, g))
            s = _compose(_inverse(transversal[image]), _compose(g, u))
            perm = _point_permutation(aut, kind, s)
            if perm.is_Identity or (current is not None and current.contains(perm)):
                continue
            kept.append(s)
            current = PermutationGroup([_point_permutation(aut, kind, x) for x in kept])
            if current.order() == target_order:
                return kept
    if target_order != 1:
        raise VerificationError("Schreier generators do not reach the stabilizer order")
    return kept
