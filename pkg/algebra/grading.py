"""Graded matrix algebras Gamma_M(T, k) and Gamma_M(T, q, s, tau).

The basis element E_ij (x) X_t has degree z_{i,j,t} = g_i t g_j^-1.  For the
phi-series the generators satisfy g_i^2 t_i = g_{q+2j-1} g_{q+2j} = c, so
g_i^-1 = g_dual(i) s_i c^-1 and every off-diagonal symbol has exactly one
partner (i, j, t) ~ (dual(j), dual(i), t s_i s_j).  Indices are 1-based.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Protocol

from algebra.cyclotomic import ONE, Cyclotomic
from algebra.exact_matrix import ExactMatrix
from algebra.pauli import GradedDivisionAlgebra, build_pauli
from algebra.torsion import TorsionElement, TorsionGroup
from config import settings
from errors import DomainError, ResourceBoundError, VerificationError
from models import GradingSpec, Series

logger = logging.getLogger(__name__)

BasisKey = tuple[int, int, TorsionElement]


@dataclass(frozen=True, order=True)
class SupportElement:
    """Canonical symbol z_{i,j,t}; the diagonal symbols z_{i,i,t} = t are stored as (1, 1, t)."""

    i: int
    j: int
    t: TorsionElement


class MatrixMap(Protocol):
    def apply(self, x: ExactMatrix) -> ExactMatrix: ...


@dataclass
class InnerAutomorphism:
    """X -> M X M^-1."""

    matrix: ExactMatrix

    @cached_property
    def inverse_matrix(self) -> ExactMatrix:
        return self.matrix.inverse()

    def apply(self, x: ExactMatrix) -> ExactMatrix:
        return self.matrix @ x @ self.inverse_matrix


class GradedMatrixAlgebra:
    def __init__(self, spec: GradingSpec):
        self.spec = spec
        self.group: TorsionGroup = spec.group
        self.division: GradedDivisionAlgebra = build_pauli(self.group)
        self.k = spec.blocks
        self.width = self.group.degree
        self.size = spec.n
        self.tau = spec.tau_elements if spec.is_phi else []
        if self.size > settings.matrix_size_bound:
            raise ResourceBoundError(f"matrix algebra of size {self.size}", settings.matrix_size_bound)
        self.degree_map: dict[BasisKey, SupportElement] = {}
        self.components: dict[SupportElement, list[BasisKey]] = {}
        for i in range(1, self.k + 1):
            for j in range(1, self.k + 1):
                for t in self.group.elements():
                    g = self.canonical(i, j, t)
                    self.degree_map[(i, j, t)] = g
                    self.components.setdefault(g, []).append((i, j, t))
        logger.debug("%s: %d components", spec.label(), len(self.components))

    # ── Support ──

    def dual(self, i: int) -> tuple[int, TorsionElement]:
        """(dual index, shift) with g_i^-1 = g_dual s c^-1."""
        q = self.spec.q
        if i <= q:
            return i, self.tau[i - 1]
        p = i - q
        return (i + 1 if p % 2 else i - 1), self.group.identity

    def partner(self, i: int, j: int, t: TorsionElement) -> BasisKey:
        di, si = self.dual(i)
        dj, sj = self.dual(j)
        return dj, di, self.group.mul(self.group.mul(t, si), sj)

    def canonical(self, i: int, j: int, t: TorsionElement) -> SupportElement:
        if i == j:
            return SupportElement(1, 1, t)
        if not self.spec.is_phi:
            return SupportElement(i, j, t)
        return min(SupportElement(i, j, t), SupportElement(*self.partner(i, j, t)))

    @property
    def support(self) -> list[SupportElement]:
        return sorted(self.components)

    def dimension(self, g: SupportElement) -> int:
        return len(self.components[g])

    def product_degree(self, g: SupportElement, h: SupportElement) -> SupportElement | None:
        """Degree of R_g R_h read off from any nonzero product of basis representatives."""
        for i, j, u in self.components[g]:
            for k, l, v in self.components[h]:
                if j == k:
                    return self.canonical(i, l, self.group.mul(u, v))
        return None

    # ── Matrices ──

    def basis_matrix(self, key: BasisKey) -> ExactMatrix:
        i, j, t = key
        return ExactMatrix.from_blocks({(i - 1, j - 1): self.division.X(t)}, self.k, self.width)

    def block(self, x: ExactMatrix, i: int, j: int) -> ExactMatrix:
        return x.block(i - 1, j - 1, self.width)

    def decompose(self, x: ExactMatrix) -> dict[BasisKey, Cyclotomic]:
        blocks = {((a // self.width) + 1, (b // self.width) + 1) for a, b in x.entries}
        out = {}
        for i, j in sorted(blocks):
            for t, c in self.division.decompose(self.block(x, i, j)).items():
                out[(i, j, t)] = c
        return out

    def degree_of(self, x: ExactMatrix) -> SupportElement | None:
        """Degree of a nonzero homogeneous matrix, None if x is zero or not homogeneous."""
        degrees = {self.degree_map[key] for key in self.decompose(x)}
        return degrees.pop() if len(degrees) == 1 else None

    def check_grading_axiom(self) -> bool:
        """R_g R_h in R_gh by exact multiplication of all basis pairs with matching inner index."""
        for g, keys in self.components.items():
            for h, other in self.components.items():
                expected = None
                for ki in keys:
                    for kj in other:
                        if ki[1] != kj[0]:
                            continue
                        prod = self.basis_matrix(ki) @ self.basis_matrix(kj)
                        degree = self.degree_of(prod)
                        if degree is None:
                            return False
                        if expected is None:
                            expected = degree
                        elif degree != expected:
                            return False
        return True

    def support_table(self) -> list[dict]:
        return [
            {"i": g.i, "j": g.j, "t": self.group.format(g.t), "dim": self.dimension(g)}
            for g in self.support
        ]


def build_M(group: TorsionGroup, k: int) -> GradedMatrixAlgebra:
    spec = GradingSpec(series=Series.RAW_M, pairs=list(group.pairs), k=k)
    return GradedMatrixAlgebra(spec)


def build_M_phi(spec: GradingSpec) -> GradedMatrixAlgebra:
    if not spec.is_phi:
        raise DomainError(f"{spec.series.value} is not a phi-series spec")
    return GradedMatrixAlgebra(spec)


def expected_support_size(spec: GradingSpec) -> int:
    """Count from the disjoint-union listing of the support."""
    size_t = spec.group.order
    k = spec.blocks
    if not spec.is_phi:
        return k * (k - 1) * size_t + size_t
    q, s = spec.q, spec.s
    count = size_t                            # degrees t in T
    count += q * (q - 1) // 2 * size_t        # z_{i,j,t}, i < j <= q
    count += 2 * q * s * size_t               # z_{i,q+2j-1,t}, z_{i,q+2j,t}
    count += 2 * s * size_t                   # z_{q+2i-1,q+2i,t} and its mirror
    count += 4 * (s * (s - 1) // 2) * size_t  # pairs of distinct pair-indices
    return count


# ── Diag(Gamma) ──


@dataclass
class DiagElement:
    """Conjugation by diag(lambda_1, ..., lambda_k) (x) X_t."""

    scalars: list[Cyclotomic]
    twist: TorsionElement

    def matrix(self, algebra: GradedMatrixAlgebra) -> ExactMatrix:
        x = algebra.division.X(self.twist)
        return ExactMatrix.from_blocks(
            {(i, i): x.scale(c) for i, c in enumerate(self.scalars)}, algebra.k, algebra.width
        )

    def relation_values(self, algebra: GradingSpec | GradedMatrixAlgebra) -> list[Cyclotomic]:
        """lambda_i^2 beta(t, t_i) for i <= q, then lambda_{q+2j-1} lambda_{q+2j}."""
        if isinstance(algebra, GradedMatrixAlgebra):
            spec, group, tau = algebra.spec, algebra.group, algebra.tau
        else:
            spec, group, tau = algebra, algebra.group, algebra.tau_elements
        if not spec.is_phi:
            return []
        values = [
            self.scalars[i] * self.scalars[i] * group.beta(self.twist, tau[i]) for i in range(spec.q)
        ]
        for j in range(spec.s):
            a = spec.q + 2 * j
            values.append(self.scalars[a] * self.scalars[a + 1])
        return values

    def relations_hold(self, algebra: GradedMatrixAlgebra) -> bool:
        values = self.relation_values(algebra)
        return all(v == values[0] for v in values)


def diag_membership(psi: MatrixMap, algebra: GradedMatrixAlgebra) -> tuple[bool, DiagElement | None]:
    """Decide whether psi acts by a scalar on every component; return the witness when it does."""
    scalar: dict[SupportElement, Cyclotomic] = {}
    for g, keys in algebra.components.items():
        c = None
        for key in keys:
            b = algebra.basis_matrix(key)
            ratio = psi.apply(b).ratio_to(b)
            if ratio is None or (c is not None and ratio != c):
                return False, None
            c = ratio
        scalar[g] = c

    group = algebra.group
    basis = group.basis()
    twist = None
    for t in group.elements():
        if all(group.beta(t, u) == scalar[SupportElement(1, 1, u)] for u in basis):
            twist = t
            break
    if twist is None:
        raise VerificationError("scalars on T-components do not form a character of T")
    lambdas = [ONE]
    for j in range(2, algebra.k + 1):
        lambdas.append(ONE / scalar[algebra.canonical(1, j, group.identity)])
    witness = DiagElement(lambdas, twist)

    if not witness.relations_hold(algebra):
        raise VerificationError("component-scalar automorphism violates the Diag relations")
    conj = InnerAutomorphism(witness.matrix(algebra))
    for key in algebra.degree_map:
        b = algebra.basis_matrix(key)
        if conj.apply(b) != psi.apply(b):
            raise VerificationError("Diag witness does not reproduce the automorphism")
    return True, witness
