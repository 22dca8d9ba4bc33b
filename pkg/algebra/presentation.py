"""Universal groups of the matrix gradings.

U(Gamma) is generated by T and y_i = z_{i,i+1,e} (i < k); every support
symbol is a word in these, z_{i,j,t} = y_i ... y_{j-1} t.  The only relations
are the orders of the T generators and, for the phi-series, one relation per
identified pair of symbols.  The group is read off a Smith normal form.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from sympy import Matrix, ZZ, factorint
from sympy.matrices.normalforms import smith_normal_decomp

from algebra.grading import GradedMatrixAlgebra
from algebra.torsion import TorsionElement
from errors import VerificationError
from models import GradingSpec, PresentationModel

logger = logging.getLogger(__name__)


def gf2_rank(rows: list[list[int]]) -> int:
    """Rank over F_2 by elimination on a uint8 array."""
    if not rows or not rows[0]:
        return 0
    m = (np.array(rows, dtype=np.int64) % 2).astype(np.uint8)
    rank = 0
    for col in range(m.shape[1]):
        pivots = np.nonzero(m[rank:, col])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        m[[rank, p]] = m[[p, rank]]
        others = np.nonzero(m[:, col])[0]
        for r in others:
            if r != rank:
                m[r] ^= m[rank]
        rank += 1
        if rank == m.shape[0]:
            break
    return rank


def gf2_solve(rows: list[list[int]], rhs: list[int], width: int) -> list[int] | None:
    """One solution x of rows . x = rhs over F_2, or None when the system is inconsistent."""
    if not rows:
        return [0] * width
    m = np.zeros((len(rows), width + 1), dtype=np.uint8)
    m[:, :width] = np.array(rows, dtype=np.int64) % 2
    m[:, width] = np.array(rhs, dtype=np.int64) % 2
    pivots = []
    rank = 0
    for col in range(width):
        candidates = np.nonzero(m[rank:, col])[0]
        if candidates.size == 0:
            continue
        p = rank + candidates[0]
        m[[rank, p]] = m[[p, rank]]
        for r in np.nonzero(m[:, col])[0]:
            if r != rank:
                m[r] ^= m[rank]
        pivots.append(col)
        rank += 1
        if rank == m.shape[0]:
            break
    if m[rank:, width].any():
        return None
    x = [0] * width
    for r, col in enumerate(pivots):
        x[col] = int(m[r, width])
    return x


def elementary_divisors(invariants: list[int]) -> list[int]:
    out = []
    for d in invariants:
        for p, e in factorint(d).items():
            out.append(p**e)
    return sorted(out)


@dataclass
class UniversalPresentation:
    """Z/d_1 x ... x Z/d_m x Z^free with the images of the generators T-basis, y_1, ..., y_{k-1}."""

    invariants: list[int]
    free_rank: int
    generator_names: list[str]
    generator_images: list[tuple[int, ...]]
    relations: list[list[int]] = field(default_factory=list)
    coordinate_words: list[list[int]] = field(default_factory=list)  # each new generator as a word in the old ones
    t0_dim: int | None = None

    @property
    def moduli(self) -> list[int]:
        return self.invariants + [0] * self.free_rank

    @property
    def two_rank(self) -> int:
        return elementary_divisors(self.invariants).count(2)

    @property
    def four_rank(self) -> int:
        return elementary_divisors(self.invariants).count(4)

    @property
    def is_two_four(self) -> bool:
        return all(d in (2, 4) for d in elementary_divisors(self.invariants))

    def reduce(self, coords) -> tuple[int, ...]:
        return tuple(c % m if m else c for c, m in zip(coords, self.moduli))

    def image(self, word: list[int]) -> tuple[int, ...]:
        """Coordinates of a word given as exponents of the original generators."""
        total = [0] * len(self.moduli)
        for x, g in zip(word, self.generator_images):
            for idx, v in enumerate(g):
                total[idx] += x * v
        return self.reduce(total)

    def to_model(self) -> PresentationModel:
        extra = [] if self.is_two_four else self.invariants
        return PresentationModel(Z2=self.two_rank, Z4=self.four_rank, Z=self.free_rank, invariants=extra)


def word(algebra: GradedMatrixAlgebra, i: int, j: int, t: TorsionElement) -> list[int]:
    """Exponents of z_{i,j,t} on the generators (T-basis, y_1, ..., y_{k-1})."""
    y = [0] * (algebra.k - 1)
    if i < j:
        for a in range(i, j):
            y[a - 1] += 1
    else:
        for a in range(j, i):
            y[a - 1] -= 1
    return list(t) + y


def relation_matrix(algebra: GradedMatrixAlgebra) -> list[list[int]]:
    group = algebra.group
    width = group.rank + algebra.k - 1
    rows = []
    for idx, m in enumerate(group.moduli):
        row = [0] * width
        row[idx] = m
        rows.append(row)
    if algebra.spec.is_phi:
        e = group.identity
        for i in range(1, algebra.k + 1):
            for j in range(1, algebra.k + 1):
                if i == j:
                    continue
                pi, pj, pt = algebra.partner(i, j, e)
                row = [a - b for a, b in zip(word(algebra, i, j, e), word(algebra, pi, pj, pt))]
                if any(row):
                    rows.append(row)
    return rows


def reduce_presentation(rows: list[list[int]], width: int, names: list[str]) -> UniversalPresentation:
    """Abelian group Z^width / rowspace(rows) via S R T = D."""
    if width == 0:
        return UniversalPresentation([], 0, names, [], rows)
    padded = rows + [[0] * width]
    d, _s, t = smith_normal_decomp(Matrix(padded), domain=ZZ)
    diag = [abs(int(d[i, i])) if i < d.rows else 0 for i in range(width)]
    keep = [i for i, v in enumerate(diag) if v != 1]
    torsion = [i for i in keep if diag[i] > 1]
    free = [i for i in keep if diag[i] == 0]
    order = torsion + free
    t_inv = t.inv()
    words = [[int(t_inv[i, j]) for j in range(width)] for i in order]
    images = []
    for j in range(width):
        coords = []
        for i in order:
            v = int(t[j, i])
            coords.append(v % diag[i] if diag[i] else v)
        images.append(tuple(coords))
    return UniversalPresentation([diag[i] for i in torsion], len(free), names, images, rows, words)


def presentation_from_relations(algebra: GradedMatrixAlgebra) -> UniversalPresentation:
    group = algebra.group
    names = [("a" if idx % 2 == 0 else "b") + str(idx // 2 + 1) for idx in range(group.rank)]
    names += [f"y{i}" for i in range(1, algebra.k)]
    return reduce_presentation(relation_matrix(algebra), len(names), names)


def t0_dimension(spec: GradingSpec) -> int:
    group = spec.group
    tau = spec.tau_elements
    rows = [list(group.mul(tau[i], tau[i + 1])) for i in range(len(tau) - 1)]
    return gf2_rank(rows)


def closed_form(spec: GradingSpec) -> tuple[list[int], int]:
    """(elementary divisors, free rank) from the closed formulas."""
    group = spec.group
    if not spec.is_phi:
        return sorted(group.moduli), spec.k - 1
    dim_t0 = t0_dimension(spec)
    twos = group.rank - 2 * dim_t0 + max(0, spec.q - 1)
    return sorted([2] * twos + [4] * dim_t0), spec.s


def universal_group(spec: GradingSpec, algebra: GradedMatrixAlgebra | None = None) -> UniversalPresentation:
    algebra = algebra or GradedMatrixAlgebra(spec)
    reduced = presentation_from_relations(algebra)
    divisors, free = closed_form(spec)
    if elementary_divisors(reduced.invariants) != divisors or reduced.free_rank != free:
        raise VerificationError(
            f"universal group of {spec.label()}: normal form gives "
            f"{reduced.invariants} x Z^{reduced.free_rank}, closed form gives {divisors} x Z^{free}"
        )
    if spec.is_phi:
        reduced.t0_dim = t0_dimension(spec)
    logger.info("universal group of %s: %s x Z^%d", spec.label(), reduced.invariants, reduced.free_rank)
    return reduced


def support_coordinates(algebra: GradedMatrixAlgebra, presentation: UniversalPresentation) -> dict:
    """Coordinates in U(Gamma) of every canonical support element."""
    return {g: presentation.image(word(algebra, g.i, g.j, g.t)) for g in algebra.support}
