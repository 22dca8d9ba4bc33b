import itertools
import random

import pytest

from algebra.torsion import TorsionGroup
from models import GradingSpec, Series


def phi_spec(series: Series, r: int, tau: list[str], s: int = 0, **extra) -> GradingSpec:
    data = {"series": series, "r": r, "q": len(tau), "s": s, "tau": tau, **extra}
    if series == Series.B or series == Series.D:
        data.setdefault("delta", 1)
    elif series == Series.C:
        data.setdefault("delta", -1)
    return GradingSpec.model_validate(data)


def small_type_two_specs(max_r: int = 1, max_q: int = 3, max_s: int = 1):
    """Every valid AII spec in the given ranges, tau up to reordering."""
    for r in range(max_r + 1):
        group = TorsionGroup.elementary(r)
        for s in range(max_s + 1):
            for q in range(max_q + 1):
                if q + 2 * s == 0:
                    continue
                for tau in itertools.combinations_with_replacement(group.elements(), q):
                    if q == 2 and s == 0 and tau[0] == tau[1]:
                        continue
                    yield GradingSpec(series=Series.AII, r=r, q=q, s=s, tau=[group.format(t) for t in tau])


def sampled_type_two_specs(count: int, r: int, max_q: int, max_s: int, seed: int = 2024):
    """A reproducible random draw of valid AII specs over Z2^(2r)."""
    rng = random.Random(seed)
    group = TorsionGroup.elementary(r)
    elements = group.elements()
    shapes = [(q, s) for q in range(max_q + 1) for s in range(max_s + 1) if q + 2 * s > 0]
    specs = []
    while len(specs) < count:
        q, s = rng.choice(shapes)
        tau = sorted(rng.choice(elements) for _ in range(q))
        if q == 2 and s == 0 and tau[0] == tau[1]:
            continue
        specs.append(GradingSpec(series=Series.AII, r=r, q=q, s=s, tau=[group.format(t) for t in tau]))
    return specs


def sampled_raw_specs(count: int, r: int, max_blocks: int = 4, seed: int = 2024):
    """Random RAW_MPHI specs with q + 2s <= max_blocks and mu in {1, -1}."""
    rng = random.Random(seed)
    group = TorsionGroup.elementary(r)
    elements = group.elements()
    shapes = [
        (q, s) for s in range(max_blocks // 2 + 1) for q in range(max_blocks - 2 * s + 1) if q + 2 * s > 0
    ]
    specs = []
    for _ in range(count):
        q, s = rng.choice(shapes)
        specs.append(
            GradingSpec(
                series=Series.RAW_MPHI,
                r=r,
                q=q,
                s=s,
                tau=[group.format(rng.choice(elements)) for _ in range(q)],
                mu=[rng.choice((1, -1)) for _ in range(s)],
            )
        )
    return specs

@pytest.fixture
def pauli_spec():
    return GradingSpec(series=Series.RAW_M, pairs=[2], k=1)


@pytest.fixture
def aii_three_singles():
    return phi_spec(Series.AII, 0, ["e", "e", "e"])


@pytest.fixture
def aii_rank_one_pair():
    return phi_spec(Series.AII, 1, [], s=1)
