"""Enumeration of fine gradings, one canonical spec per equivalence class."""
from __future__ import annotations

import itertools
import logging

from sympy import divisors, factorint
from sympy.utilities.iterables import partitions

from algebra.symplectic import NATURAL, TWISTED, MultisetSigma, orbit
from algebra.torsion import TorsionElement, TorsionGroup
from errors import DomainError
from models import GradingSpec, Series

logger = logging.getLogger(__name__)

SERIES_A = "A"


def check_range(series: Series | str, n: int):
    """The n for which each series is classified."""
    if series in (SERIES_A, Series.AI, Series.AII):
        if n < 3:
            raise DomainError(f"series A needs n >= 3, got {n}")
    elif series == Series.B:
        if n < 5 or n % 2 == 0:
            raise DomainError(f"series B needs odd n >= 5, got {n}")
    elif series == Series.C:
        if n < 4 or n % 2:
            raise DomainError(f"series C needs even n >= 4, got {n}")
    elif series == Series.D:
        if n < 6 or n % 2 or n == 8:
            raise DomainError(f"series D needs even n >= 6 and n != 8 (D4 is excluded), got {n}")
    else:
        raise DomainError(f"series {series} is not enumerated")


def torsion_groups(degree: int) -> list[TorsionGroup]:
    """Every T = prod (Z_l x Z_l) with l prime powers and prod l = degree."""
    per_prime = []
    for p, e in sorted(factorint(degree).items()):
        choices = []
        for part in partitions(e):
            choices.append(sorted(p**size for size, count in part.items() for _ in range(count)))
        per_prime.append(choices)
    out = []
    for combo in itertools.product(*per_prime):
        out.append(TorsionGroup(tuple(sorted(ell for pairs in combo for ell in pairs))))
    return out


def _type_one(n: int) -> list[GradingSpec]:
    out = []
    for degree in divisors(n):
        k = n // degree
        for group in torsion_groups(degree):
            if group.is_elementary_two and k < 3:
                continue
            out.append(GradingSpec(series=Series.AI, pairs=list(group.pairs), k=k))
    return sorted(out, key=lambda spec: (spec.group.order, spec.pairs, spec.k))


def multiset_classes(group: TorsionGroup, pool: list[TorsionElement], q: int, kind: str) -> list[MultisetSigma]:
    """Orbit representatives (least in the orbit) of the q-element multisets drawn from pool."""
    seen: set[MultisetSigma] = set()
    reps = []
    for combo in itertools.combinations_with_replacement(pool, q):
        sigma = MultisetSigma.from_tau(combo)
        if sigma in seen:
            continue
        points = orbit(group, sigma, kind)
        seen.update(points)
        reps.append(min(points, key=lambda s: s.flat()))
    return sorted(reps, key=lambda s: s.flat())


def _phi_classes(series: Series, n: int) -> list[GradingSpec]:
    out = []
    r = 0
    while 2**r <= n:
        width = 2**r
        if n % width == 0 and (series != Series.B or r == 0):
            group = TorsionGroup.elementary(r)
            if series == Series.AII:
                kind, pool, delta = NATURAL, group.elements(), None
            elif series == Series.C:
                kind, pool, delta = TWISTED, group.minus_part(), -1
            else:
                kind, pool, delta = TWISTED, group.plus_part(), 1
            blocks = n // width
            for s in range(blocks // 2 + 1):
                q = blocks - 2 * s
                if q and not pool:
                    continue
                for sigma in multiset_classes(group, pool, q, kind):
                    tau = sigma.flat()
                    if q == 2 and s == 0 and tau[0] == tau[1]:
                        continue
                    out.append(
                        GradingSpec(
                            series=series, r=r, q=q, s=s, tau=[group.format(t) for t in tau], delta=delta
                        )
                    )
        r += 1
    return sorted(out, key=lambda spec: (spec.r, spec.q, spec.s, [spec.group.parse(t) for t in spec.tau]))


def enumerate_fine_gradings(series: Series | str, n: int) -> list[GradingSpec]:
    check_range(series, n)
    if series == SERIES_A:
        specs = _type_one(n) + _phi_classes(Series.AII, n)
    elif series == Series.AI:
        specs = _type_one(n)
    else:
        specs = _phi_classes(Series(series), n)
    logger.info("series %s, n = %d: %d classes", getattr(series, "value", series), n, len(specs))
    return specs
