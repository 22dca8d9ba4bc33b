"""Generalized Pauli matrices realizing the graded division algebra F^sigma T."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

from algebra.cyclotomic import ONE, Cyclotomic, root_of_unity
from algebra.exact_matrix import ExactMatrix, rank
from algebra.symplectic import SymplecticMap
from algebra.torsion import TorsionElement, TorsionGroup
from errors import VerificationError

logger = logging.getLogger(__name__)


def _clock(ell: int) -> ExactMatrix:
    # diag(eps^(l-1), ..., eps, 1)
    return ExactMatrix(ell, {(r, r): root_of_unity(ell, ell - 1 - r) for r in range(ell)})


def _shift(ell: int) -> ExactMatrix:
    entries = {(r, r + 1): ONE for r in range(ell - 1)}
    entries[(ell - 1, 0)] = ONE
    return ExactMatrix(ell, entries)


class GradedDivisionAlgebra:
    """D = span{X_t : t in T} inside M_l(F), l = sqrt|T|."""

    def __init__(self, group: TorsionGroup):
        self.group = group
        self.size = group.degree
        self.generators = self._place_generators()
        self.basis: dict[TorsionElement, ExactMatrix] = {t: self._monomial(t) for t in group.elements()}
        self._inverse: dict[TorsionElement, ExactMatrix] = {}
        self._sigma: dict[tuple[TorsionElement, TorsionElement], Cyclotomic] = {}

    def _place_generators(self) -> list[ExactMatrix]:
        gens = []
        for k, ell in enumerate(self.group.pairs):
            for factor in (_clock(ell), _shift(ell)):
                m = ExactMatrix.identity(1)
                for j, other in enumerate(self.group.pairs):
                    m = m.kron(factor if j == k else ExactMatrix.identity(other))
                gens.append(m)
        return gens

    def _monomial(self, t: TorsionElement) -> ExactMatrix:
        m = ExactMatrix.identity(self.size)
        for x, g in zip(t, self.generators):
            for _ in range(x):
                m = m @ g
        return m

    def X(self, t: TorsionElement) -> ExactMatrix:
        return self.basis[t]

    def X_inverse(self, t: TorsionElement) -> ExactMatrix:
        if t not in self._inverse:
            self._inverse[t] = self.basis[t].inverse()
        return self._inverse[t]

    def sigma(self, u: TorsionElement, v: TorsionElement) -> Cyclotomic:
        """sigma(u, v) with X_u X_v = sigma(u, v) X_uv."""
        key = (u, v)
        if key not in self._sigma:
            c = (self.basis[u] @ self.basis[v]).ratio_to(self.basis[self.group.mul(u, v)])
            if c is None:
                raise VerificationError("product of Pauli matrices is not homogeneous")
            self._sigma[key] = c
        return self._sigma[key]

    def decompose(self, block: ExactMatrix) -> dict[TorsionElement, Cyclotomic]:
        """Coefficients c_t with block = sum c_t X_t, via c_t = tr(X_t^-1 block) / l."""
        out = {}
        if block.is_zero():
            return out
        for t in self.basis:
            c = (self.X_inverse(t) @ block).trace()
            if c:
                out[t] = c / self.size
        return out

    def homogeneous_degree(self, block: ExactMatrix) -> tuple[TorsionElement, Cyclotomic] | None:
        """(t, c) with block = c X_t, or None when block is not a nonzero homogeneous element."""
        parts = self.decompose(block)
        if len(parts) != 1:
            return None
        ((t, c),) = parts.items()
        return t, c

    def transpose_sign(self, t: TorsionElement) -> int:
        c = self.basis[t].transpose().ratio_to(self.basis[t])
        if c is None or c.as_rational() not in (1, -1):
            raise VerificationError(f"X_{self.group.format(t)} is neither symmetric nor skew")
        return int(c.as_rational())

    def basis_rank(self) -> int:
        n = self.size
        vectors = [[m[i, j] for i in range(n) for j in range(n)] for m in self.basis.values()]
        return rank(vectors)


@lru_cache(maxsize=None)
def build_pauli(group: TorsionGroup) -> GradedDivisionAlgebra:
    logger.debug("building Pauli matrices for %s", group.describe())
    return GradedDivisionAlgebra(group)


def transpose_signs(division: GradedDivisionAlgebra) -> dict[TorsionElement, int]:
    division.group.require_elementary()
    return {t: division.transpose_sign(t) for t in division.basis}


# ── Automorphisms of D ──


@dataclass
class DivisionMap:
    """psi_0(X_t) = c_t X_alpha(t)."""

    alpha: SymplecticMap
    scalars: dict[TorsionElement, Cyclotomic] = field(default_factory=dict)

    def image(self, t: TorsionElement) -> tuple[TorsionElement, Cyclotomic]:
        return self.alpha(t), self.scalars[t]

    def apply(self, division: GradedDivisionAlgebra, block: ExactMatrix) -> ExactMatrix:
        out = ExactMatrix(division.size)
        for t, c in division.decompose(block).items():
            out = out + division.X(self.alpha(t)).scale(c * self.scalars[t])
        return out

    def is_identity(self) -> bool:
        return self.alpha.is_identity() and all(c == ONE for c in self.scalars.values())


def identity_division_map(group: TorsionGroup) -> DivisionMap:
    return DivisionMap(SymplecticMap.identity(group), {t: ONE for t in group.elements()})


def realize_division_map(division: GradedDivisionAlgebra, alpha: SymplecticMap) -> DivisionMap:
    """Lift alpha to an algebra automorphism of D.

    The generator X_{e_k} goes to c X_{alpha(e_k)} with c chosen so that the
    image still has order l_k; the rest follows by ordered products.
    """
    group = division.group
    images = []
    for k, e in enumerate(group.basis()):
        target = division.X(alpha(e))
        power = ExactMatrix.identity(division.size)
        for _ in range(group.moduli[k]):
            power = power @ target
        s = power.ratio_to(ExactMatrix.identity(division.size))
        big, exp = s.inverse().root_of_unity_log()
        images.append(target.scale(root_of_unity(big * group.moduli[k], exp)))

    scalars = {}
    for t in group.elements():
        m = ExactMatrix.identity(division.size)
        for x, y in zip(t, images):
            for _ in range(x):
                m = m @ y
        c = m.ratio_to(division.X(alpha(t)))
        if c is None:
            raise VerificationError("lifted division map is not homogeneous")
        scalars[t] = c
    psi0 = DivisionMap(alpha, scalars)
    _check_division_map(division, psi0)
    return psi0


def _check_division_map(division: GradedDivisionAlgebra, psi0: DivisionMap):
    group = division.group
    for u in group.elements():
        for v in group.elements():
            lhs = psi0.scalars[u] * psi0.scalars[v] * division.sigma(psi0.alpha(u), psi0.alpha(v))
            rhs = division.sigma(u, v) * psi0.scalars[group.mul(u, v)]
            if lhs != rhs:
                raise VerificationError("lifted division map is not multiplicative")
