"""Anti-automorphisms phi(X) = Phi^-1 (tX) Phi of the phi-series gradings and the deciders built on them."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from algebra.cyclotomic import ONE, Cyclotomic
from algebra.exact_matrix import ExactMatrix
from algebra.grading import GradedMatrixAlgebra, InnerAutomorphism, SupportElement, diag_membership
from algebra.pauli import transpose_signs
from algebra.symplectic import (
    NATURAL,
    TWISTED,
    AffineSymplectic,
    MultisetSigma,
    SymplecticMap,
    canonical_form,
    orbit,
)
from algebra.torsion import TorsionGroup
from config import settings
from errors import DomainError, VerificationError
from models import GradingSpec, InvolutionType, Series

logger = logging.getLogger(__name__)


@dataclass
class PhiMap:
    phi_matrix: ExactMatrix

    @cached_property
    def inverse_matrix(self) -> ExactMatrix:
        return self.phi_matrix.inverse()

    def apply(self, x: ExactMatrix) -> ExactMatrix:
        return self.inverse_matrix @ x.transpose() @ self.phi_matrix

    def square(self) -> InnerAutomorphism:
        """phi^2 is conjugation by Phi^-1 tPhi."""
        return InnerAutomorphism(self.inverse_matrix @ self.phi_matrix.transpose())


@dataclass
class SesquilinearWitness:
    """B(x, y) = tx Phi y, the form whose adjoint is phi; phi0 is the transpose on D."""

    matrix: ExactMatrix
    phi0: dict

    def adjoint_identity_holds(self, phi: PhiMap) -> bool:
        """B(x, phi(r) y) = B(r x, y) on all matrix units r, i.e. Phi phi(r) = tr Phi."""
        n = self.matrix.size
        for a in range(n):
            for b in range(n):
                r = ExactMatrix.unit(n, a, b)
                if self.matrix @ phi.apply(r) != r.transpose() @ self.matrix:
                    return False
        return True


class ComponentScalarMap:
    """Multiplication by a fixed scalar on each homogeneous component."""

    def __init__(self, algebra: GradedMatrixAlgebra, scalars: dict[SupportElement, Cyclotomic]):
        self.algebra = algebra
        self.scalars = scalars

    def apply(self, x: ExactMatrix) -> ExactMatrix:
        out = ExactMatrix(x.size)
        for key, c in self.algebra.decompose(x).items():
            g = self.algebra.degree_map[key]
            out = out + self.algebra.basis_matrix(key).scale(c * self.scalars[g])
        return out


def build_phi(spec: GradingSpec, algebra: GradedMatrixAlgebra | None = None) -> PhiMap:
    """Phi = diag(X_t1, ..., X_tq, [[0, I], [mu_1 I, 0]], ..., [[0, I], [mu_s I, 0]])."""
    if not spec.is_phi:
        raise DomainError(f"{spec.series.value} carries no anti-automorphism")
    algebra = algebra or GradedMatrixAlgebra(spec)
    division = algebra.division
    identity = ExactMatrix.identity(algebra.width)
    blocks = {}
    for i, t in enumerate(algebra.tau):
        blocks[(i, i)] = division.X(t)
    for j, mu in enumerate(spec.mu_values):
        a = spec.q + 2 * j
        blocks[(a, a + 1)] = identity
        blocks[(a + 1, a)] = identity.scale(mu)
    return PhiMap(ExactMatrix.from_blocks(blocks, algebra.k, algebra.width))


def sesquilinear_witness(spec: GradingSpec, phi: PhiMap) -> SesquilinearWitness:
    return SesquilinearWitness(phi.phi_matrix, transpose_signs(GradedMatrixAlgebra(spec).division))


def check_phi_grading(algebra: GradedMatrixAlgebra, phi: PhiMap) -> bool:
    """Every component is phi-stable and phi^2 lies in Diag."""
    for g, keys in algebra.components.items():
        for key in keys:
            image = phi.apply(algebra.basis_matrix(key))
            if any(algebra.degree_map[k] != g for k in algebra.decompose(image)):
                logger.debug("phi moves a basis element of %s out of its component", g)
                return False
    try:
        ok, _ = diag_membership(phi.square(), algebra)
    except VerificationError:
        return False
    return ok


def phi_fourth_is_identity(algebra: GradedMatrixAlgebra, phi: PhiMap) -> bool:
    square = phi.square()
    for key in algebra.degree_map:
        b = algebra.basis_matrix(key)
        if square.apply(square.apply(b)) != b:
            return False
    return True


# ── Involutions ──


def involution_criterion(spec: GradingSpec) -> InvolutionType:
    group = spec.group
    values = {group.quad_sign(t) for t in spec.tau_elements} | set(spec.mu_values)
    if len(values) > 1 or not values <= {1, -1}:
        return InvolutionType.NOT_INVOLUTION
    # q = s = 0 cannot occur
    return InvolutionType.ORTHOGONAL if values == {1} else InvolutionType.SYMPLECTIC


def involution_oracle(spec: GradingSpec, algebra: GradedMatrixAlgebra | None = None) -> InvolutionType:
    """Decide phi^2 = id from the matrix Phi^-1 tPhi, and the sign from tPhi = c Phi."""
    algebra = algebra or GradedMatrixAlgebra(spec)
    phi = build_phi(spec, algebra)
    square = phi.square()
    c = square.matrix.ratio_to(ExactMatrix.identity(algebra.size))
    if algebra.size <= settings.matrix_check_bound:
        literal = all(square.apply(algebra.basis_matrix(k)) == algebra.basis_matrix(k) for k in algebra.degree_map)
        if literal != (c is not None):
            raise VerificationError("phi^2 on the basis disagrees with the scalar test on Phi^-1 tPhi")
    if c is None:
        return InvolutionType.NOT_INVOLUTION
    if c == ONE:
        return InvolutionType.ORTHOGONAL
    if c == -ONE:
        return InvolutionType.SYMPLECTIC
    raise VerificationError(f"tPhi = c Phi with c = {c}, expected +-1")


def involution_type(spec: GradingSpec) -> InvolutionType:
    criterion = involution_criterion(spec)
    oracle = involution_oracle(spec)
    if criterion != oracle:
        raise VerificationError(
            f"{spec.label()}: criterion says {criterion.value}, matrix test says {oracle.value}"
        )
    return criterion


def is_fine_phi(spec: GradingSpec) -> bool:
    tau = spec.tau_elements
    return not (spec.q == 2 and spec.s == 0 and tau[0] == tau[1])


def division_refinement(spec: GradingSpec) -> GradingSpec:
    """The graded-division phi-grading refining Gamma_M(T, 2, 0, (t, t)).

    M_2(D) is regraded by Z2^2 x T through P_c (x) X_t with the new Pauli pair
    placed first, so Phi = I (x) X_t is the basis element of degree (00, t).
    """
    if not spec.is_phi or is_fine_phi(spec):
        raise DomainError(f"{spec.label()} is already a fine grading")
    group = TorsionGroup.elementary(spec.r + 1)
    t = (0, 0) + spec.tau_elements[0]
    return GradingSpec(series=Series.RAW_MPHI, r=spec.r + 1, q=1, s=0, tau=[group.format(t)], mu=[])


def check_division_refinement(spec: GradingSpec, refined: GradingSpec) -> bool:
    """refined is a phi-grading by one-dimensional components, each inside a component of spec, with the same Phi."""
    coarse = GradedMatrixAlgebra(spec)
    fine = GradedMatrixAlgebra(refined)
    if fine.size != coarse.size or len(fine.support) <= len(coarse.support):
        return False
    if any(fine.dimension(g) != 1 for g in fine.support):
        return False
    if any(coarse.degree_of(fine.basis_matrix(key)) is None for key in fine.degree_map):
        return False
    phi = build_phi(refined, fine)
    if phi.phi_matrix != build_phi(spec, coarse).phi_matrix:
        return False
    return check_phi_grading(fine, phi)


# ── Equivalence ──


def _sigma(spec: GradingSpec) -> MultisetSigma:
    return MultisetSigma.from_tau(spec.tau_elements)


def _same_shape(spec1: GradingSpec, spec2: GradingSpec) -> bool:
    if not (spec1.is_phi and spec2.is_phi):
        raise DomainError("equivalence deciders take phi-series specs")
    return (spec1.r, spec1.q, spec1.s) == (spec2.r, spec2.q, spec2.s)


def weak_equivalence_witness(spec1: GradingSpec, spec2: GradingSpec) -> AffineSymplectic | None:
    """(u, alpha) carrying Sigma(tau1) onto Sigma(tau2) under the natural action, if any."""
    if not _same_shape(spec1, spec2):
        return None
    return orbit(spec1.group, _sigma(spec1), NATURAL).get(_sigma(spec2))


def weakly_equivalent(spec1: GradingSpec, spec2: GradingSpec) -> bool:
    if not _same_shape(spec1, spec2):
        return False
    group = spec1.group
    same = canonical_form(group, _sigma(spec1), NATURAL) == canonical_form(group, _sigma(spec2), NATURAL)
    logger.debug("weak equivalence %s ~ %s: %s", spec1.label(), spec2.label(), same)
    return same


def involution_equivalence_witness(spec1: GradingSpec, spec2: GradingSpec) -> SymplecticMap | None:
    if not _involutions_match(spec1, spec2):
        return None
    return orbit(spec1.group, _sigma(spec1), TWISTED).get(_sigma(spec2))


def _involutions_match(spec1: GradingSpec, spec2: GradingSpec) -> bool:
    if not _same_shape(spec1, spec2):
        return False
    kind1, kind2 = involution_type(spec1), involution_type(spec2)
    return kind1 == kind2 != InvolutionType.NOT_INVOLUTION


def equivalent_involution(spec1: GradingSpec, spec2: GradingSpec) -> bool:
    if not _involutions_match(spec1, spec2):
        return False
    group = spec1.group
    return canonical_form(group, _sigma(spec1), TWISTED) == canonical_form(group, _sigma(spec2), TWISTED)


def format_witness(witness: AffineSymplectic | SymplecticMap | None) -> dict | None:
    if witness is None:
        return None
    if isinstance(witness, AffineSymplectic):
        group = witness.map.group
        return {"u": group.format(witness.shift), "alpha": [group.format(x) for x in witness.map.images]}
    return {"alpha": [witness.group.format(x) for x in witness.images]}
