"""Automorphisms of the graded matrix algebras in symbolic form, and the Weyl generators built from them.

An automorphism is X -> Psi psi_0(X) Psi^-1 with Psi = P D, where P moves
block i to block pi(i), D = diag(lambda_i X_{u_i}) and psi_0 acts on every
D-block.  With the antiflag the result is negated and transposed.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from algebra.cyclotomic import ONE, Cyclotomic, root_of_unity
from algebra.exact_matrix import ExactMatrix
from algebra.grading import DiagElement, GradedMatrixAlgebra, SupportElement, diag_membership
from algebra.involutions import ComponentScalarMap, PhiMap, build_phi
from algebra.pauli import DivisionMap, identity_division_map, realize_division_map
from algebra.presentation import gf2_rank
from algebra.symplectic import (
    NATURAL,
    TWISTED,
    MultisetSigma,
    aut_group,
    as_point_map,
    restriction,
    sigma_stabilizer,
    t_alpha,
)
from algebra.torsion import TorsionElement
from config import settings
from errors import DomainError, VerificationError
from models import GradingSpec, Series

logger = logging.getLogger(__name__)

ZETA4 = root_of_unity(4, 1)


@dataclass
class SymbolicAutomorphism:
    algebra: GradedMatrixAlgebra
    perm: tuple[int, ...]                  # perm[i - 1] = pi(i), 1-based
    units: list[TorsionElement]            # d_i = scalars[i] X_{units[i]}
    scalars: list[Cyclotomic]
    division_map: DivisionMap
    antiflag: bool = False
    role: str = ""
    xi: DiagElement | None = None          # psi phi psi^-1 phi^-1, filled by verification
    d0_degree: TorsionElement | None = None

    @cached_property
    def matrix(self) -> ExactMatrix:
        """Psi = P D."""
        division = self.algebra.division
        blocks = {
            (self.perm[i] - 1, i): division.X(u).scale(c)
            for i, (u, c) in enumerate(zip(self.units, self.scalars))
        }
        return ExactMatrix.from_blocks(blocks, self.algebra.k, self.algebra.width)

    @cached_property
    def inverse_matrix(self) -> ExactMatrix:
        return self.matrix.inverse()

    def blockwise(self, x: ExactMatrix) -> ExactMatrix:
        """psi_0 applied to every D-block of x."""
        if self.division_map.is_identity():
            return x
        algebra = self.algebra
        blocks = {((a // algebra.width), (b // algebra.width)) for a, b in x.entries}
        out = {}
        for bi, bj in blocks:
            out[(bi, bj)] = self.division_map.apply(algebra.division, x.block(bi, bj, algebra.width))
        return ExactMatrix.from_blocks(out, algebra.k, algebra.width)

    def apply(self, x: ExactMatrix) -> ExactMatrix:
        y = self.matrix @ self.blockwise(x) @ self.inverse_matrix
        return -y.transpose() if self.antiflag else y

    def support_image(self, g: SupportElement) -> SupportElement:
        """z_{i,j,t} -> z_{pi(i), pi(j), u_i alpha(t) u_j^-1}, transposed under the antiflag."""
        algebra = self.algebra
        group = algebra.group
        t = group.mul(group.mul(self.units[g.i - 1], self.division_map.alpha(g.t)), group.inv(self.units[g.j - 1]))
        i, j = self.perm[g.i - 1], self.perm[g.j - 1]
        if self.antiflag:
            i, j, t = j, i, transpose_degree(algebra, t)
        return algebra.canonical(i, j, t)


def transpose_degree(algebra: GradedMatrixAlgebra, t: TorsionElement) -> TorsionElement:
    found = algebra.division.homogeneous_degree(algebra.division.X(t).transpose())
    if found is None:
        raise VerificationError("transpose of a Pauli matrix is not homogeneous")
    return found[0]


# ── Verification ──


def induced_support_permutation(
    psi: SymbolicAutomorphism, algebra: GradedMatrixAlgebra | None = None
) -> dict[SupportElement, SupportElement]:
    """The permutation g -> deg psi(R_g), computed symbolically and checked on the matrices."""
    algebra = algebra or psi.algebra
    mapping = {}
    for g, keys in algebra.components.items():
        images = {psi.support_image(SupportElement(*key)) for key in keys}
        if len(images) != 1:
            raise VerificationError(f"{psi.role or 'automorphism'} splits the component {g}")
        image = images.pop()
        literal = algebra.degree_of(psi.apply(algebra.basis_matrix((g.i, g.j, g.t))))
        if literal != image:
            raise VerificationError(f"{psi.role or 'automorphism'}: symbolic image {image} of {g}, matrix gives {literal}")
        mapping[g] = image
    if len(set(mapping.values())) != len(mapping):
        raise VerificationError("induced map on the support is not a bijection")
    return mapping


def check_multiplicative(psi: SymbolicAutomorphism) -> bool:
    """psi(xy) = psi(x) psi(y) (reversed under the antiflag) on a generating set of M_n."""
    algebra = psi.algebra
    group = algebra.group
    keys = [(i, j, group.identity) for i in range(1, algebra.k + 1) for j in range(1, algebra.k + 1) if i != j]
    keys += [(1, 1, b) for b in group.basis()]
    mats = [algebra.basis_matrix(key) for key in keys]
    images = [psi.apply(m) for m in mats]
    for x, px in zip(mats, images):
        for y, py in zip(mats, images):
            expected = py @ px if psi.antiflag else px @ py
            if psi.apply(x @ y) != expected:
                return False
    return True


def xi_of(psi: SymbolicAutomorphism, phi: PhiMap) -> DiagElement:
    """The Diag element xi with psi phi = xi phi psi, read off basis element by basis element."""
    algebra = psi.algebra
    scalars: dict[SupportElement, Cyclotomic] = {}
    for key in algebra.degree_map:
        x = algebra.basis_matrix(key)
        a = psi.apply(phi.apply(x))
        b = phi.apply(psi.apply(x))
        ratio = a.ratio_to(b)
        g = algebra.degree_of(b)
        if ratio is None or g is None:
            raise VerificationError(f"{psi.role}: psi phi and phi psi differ by more than a scalar")
        if scalars.setdefault(g, ratio) != ratio:
            raise VerificationError(f"{psi.role}: psi phi psi^-1 phi^-1 is not scalar on {g}")
    ok, witness = diag_membership(ComponentScalarMap(algebra, scalars), algebra)
    if not ok:
        raise VerificationError(f"{psi.role}: psi phi psi^-1 phi^-1 is not in Diag")
    return witness


def transported_form(psi: SymbolicAutomorphism, phi: PhiMap, dprime: ExactMatrix) -> TorsionElement:
    """Check tPsi Phi D'^-1 Psi = (I x d0) psi_0(Phi) with d0 a multiple of X_{t_alpha}; return deg d0."""
    algebra = psi.algebra
    division = algebra.division
    left = psi.matrix.transpose() @ phi.phi_matrix @ dprime.inverse() @ psi.matrix
    right = psi.blockwise(phi.phi_matrix)
    found = division.homogeneous_degree((left @ right.inverse()).block(0, 0, algebra.width))
    if found is None:
        raise VerificationError(f"{psi.role}: transported form is not a homogeneous multiple of psi_0(Phi)")
    t, c = found
    d0 = ExactMatrix.block_diagonal([division.X(t).scale(c)] * algebra.k)
    if left != d0 @ right:
        raise VerificationError(f"{psi.role}: transported form differs from d0 psi_0(Phi)")
    group = algebra.group
    if t != t_alpha(group, psi.division_map.alpha):
        raise VerificationError(f"{psi.role}: deg d0 = {group.format(t)} is not t_alpha")
    if group.quad_sign(t) != 1:
        raise VerificationError(f"{psi.role}: deg d0 has quadratic sign -1")
    return t


def verify(psi: SymbolicAutomorphism, phi: PhiMap | None = None, dprime: ExactMatrix | None = None, strict: bool = False):
    """Exact checks on one generator; strict demands psi phi = phi psi."""
    algebra = psi.algebra
    if algebra.size <= settings.matrix_check_bound and not check_multiplicative(psi):
        raise VerificationError(f"{psi.role}: not multiplicative")
    induced_support_permutation(psi)
    if phi is None:
        return
    psi.xi = xi_of(psi, phi)
    witness = psi.xi.matrix(algebra)
    if strict and witness.ratio_to(ExactMatrix.identity(algebra.size)) is None:
        raise VerificationError(f"{psi.role}: does not commute with phi")
    if dprime is not None and witness.ratio_to(dprime) is None:
        raise VerificationError(f"{psi.role}: xi differs from the prescribed diagonal")
    psi.d0_degree = transported_form(psi, phi, witness)


# ── Construction ──


def _automorphism(
    algebra: GradedMatrixAlgebra,
    perm=None,
    units=None,
    scalars=None,
    division_map: DivisionMap | None = None,
    antiflag: bool = False,
    role: str = "",
) -> SymbolicAutomorphism:
    k = algebra.k
    group = algebra.group
    return SymbolicAutomorphism(
        algebra=algebra,
        perm=tuple(perm or range(1, k + 1)),
        units=list(units or [group.identity] * k),
        scalars=list(scalars or [ONE] * k),
        division_map=division_map or identity_division_map(group),
        antiflag=antiflag,
        role=role,
    )


def _solve_scalars(psi: SymbolicAutomorphism, phi: PhiMap, dprime: ExactMatrix) -> SymbolicAutomorphism:
    """Choose lambda_i so that tPsi Phi D'^-1 Psi = (I x X_{t_alpha}) psi_0(Phi) blockwise."""
    algebra = psi.algebra
    spec = algebra.spec
    width = algebra.width
    base = psi.matrix
    left = base.transpose() @ phi.phi_matrix @ dprime.inverse() @ base
    shift = ExactMatrix.block_diagonal([algebra.division.X(t_alpha(algebra.group, psi.division_map.alpha))] * algebra.k)
    right = shift @ psi.blockwise(phi.phi_matrix)

    scalars = []
    for i in range(spec.q):
        ratio = right.block(i, i, width).ratio_to(left.block(i, i, width))
        if ratio is None or ratio.root_of_unity_log() is None:
            raise VerificationError(f"{psi.role}: no scalar solves block {i + 1}")
        scalars.append(ratio.sqrt_unit())
    for j in range(spec.s):
        a = spec.q + 2 * j
        ratio = right.block(a, a + 1, width).ratio_to(left.block(a, a + 1, width))
        if ratio is None:
            raise VerificationError(f"{psi.role}: no scalar solves pair {j + 1}")
        scalars.extend([ONE, ratio])
    solved = SymbolicAutomorphism(
        algebra, psi.perm, psi.units, scalars, psi.division_map, psi.antiflag, psi.role
    )
    check = solved.matrix.transpose() @ phi.phi_matrix @ dprime.inverse() @ solved.matrix
    if check != right:
        raise VerificationError(f"{psi.role}: solved scalars do not transport the form")
    return solved


def _transposition(k: int, a: int, b: int) -> list[int]:
    perm = list(range(1, k + 1))
    perm[a - 1], perm[b - 1] = b, a
    return perm


def _pair_generators(algebra: GradedMatrixAlgebra) -> list[SymbolicAutomorphism]:
    """W(s): the flip of the first pair and swaps of adjacent pairs."""
    spec = algebra.spec
    k = algebra.k
    out = []
    for j in range(spec.s):
        a = spec.q + 2 * j + 1
        if j == 0:
            out.append(_automorphism(algebra, _transposition(k, a, a + 1), role="W(s)"))
        if j + 1 < spec.s:
            perm = list(range(1, k + 1))
            perm[a - 1], perm[a], perm[a + 1], perm[a + 2] = a + 2, a + 3, a, a + 1
            out.append(_automorphism(algebra, perm, role="W(s)"))
    return out


def _sym_sigma_generators(algebra: GradedMatrixAlgebra) -> list[SymbolicAutomorphism]:
    tau = algebra.tau
    return [
        _automorphism(algebra, _transposition(algebra.k, i + 1, i + 2), role="SymSigma")
        for i in range(len(tau) - 1)
        if tau[i] == tau[i + 1]
    ]


def _shift_generators(algebra: GradedMatrixAlgebra) -> list[SymbolicAutomorphism]:
    """Homogeneous diagonal X_b in one slot, or in both slots of a pair."""
    spec = algebra.spec
    group = algebra.group
    out = []
    slots = [[i] for i in range(spec.q)] + [[spec.q + 2 * j, spec.q + 2 * j + 1] for j in range(spec.s)]
    for slot in slots:
        for b in group.basis():
            units = [group.identity] * algebra.k
            for i in slot:
                units[i] = b
            out.append(_automorphism(algebra, units=units, role="K"))
    return out


def _stabilizer_perm(algebra: GradedMatrixAlgebra, kind: str, g) -> list[int]:
    pi = restriction(as_point_map(kind, g), algebra.tau)
    return [p + 1 for p in pi] + list(range(algebra.spec.q + 1, algebra.k + 1))


def _twisted_generators(algebra: GradedMatrixAlgebra) -> list[SymbolicAutomorphism]:
    """psi_alpha for generators alpha of the twisted stabilizer of Sigma."""
    spec = algebra.spec
    group = algebra.group
    stab = sigma_stabilizer(group, MultisetSigma.from_tau(algebra.tau), TWISTED)
    out = []
    for alpha in stab.generators:
        shift = t_alpha(group, alpha)
        units = [group.identity] * algebra.k
        for j in range(spec.s):
            units[spec.q + 2 * j + 1] = shift
        psi0 = realize_division_map(algebra.division, alpha)
        out.append(
            _automorphism(algebra, _stabilizer_perm(algebra, TWISTED, alpha), units, division_map=psi0, role="AutSigma")
        )
    return out


def natural_dprime(algebra: GradedMatrixAlgebra, u: TorsionElement) -> ExactMatrix:
    """diag(nu_i) (x) X_u with nu_i^2 beta(u, t_i) = nu_{q+2j-1} nu_{q+2j} = beta(u)."""
    spec = algebra.spec
    group = algebra.group
    sign = group.quad_sign(u)
    nus = [Cyclotomic.rational(group.beta_sign(u, t) * sign).sqrt_unit() for t in algebra.tau]
    for _ in range(spec.s):
        nus.extend([Cyclotomic.rational(sign), ONE])
    return DiagElement(nus, u).matrix(algebra)


def _natural_generators(algebra: GradedMatrixAlgebra) -> list[tuple[SymbolicAutomorphism, ExactMatrix]]:
    """psi_{u,alpha} for generators (w, alpha) of the natural stabilizer of Sigma, with u = t_alpha w."""
    spec = algebra.spec
    group = algebra.group
    stab = sigma_stabilizer(group, MultisetSigma.from_tau(algebra.tau), NATURAL)
    out = []
    for g in stab.generators:
        alpha, w = g.map, g.shift
        u = group.mul(t_alpha(group, alpha), w)
        units = [group.identity] * algebra.k
        for j in range(spec.s):
            units[spec.q + 2 * j + 1] = w
        psi0 = realize_division_map(algebra.division, alpha)
        psi = _automorphism(algebra, _stabilizer_perm(algebra, NATURAL, g), units, division_map=psi0, role="Aut*Sigma")
        out.append((psi, natural_dprime(algebra, u)))
    return out


def sign_generators(algebra: GradedMatrixAlgebra) -> list[SymbolicAutomorphism]:
    """zeta_4 on a single slot, -1 on the first slot of a pair; these act trivially on the support."""
    spec = algebra.spec
    out = []
    for i in range(spec.q):
        scalars = [ONE] * algebra.k
        scalars[i] = ZETA4
        out.append(_automorphism(algebra, scalars=scalars, role="N"))
    for j in range(spec.s):
        scalars = [ONE] * algebra.k
        scalars[spec.q + 2 * j] = -ONE
        out.append(_automorphism(algebra, scalars=scalars, role="N"))
    return out


def kernel_rank(generators: list[SymbolicAutomorphism]) -> int:
    """F_2-rank of the xi classes of the sign generators, modulo scalars."""
    rows = []
    for psi in generators:
        if psi.xi is None:
            raise DomainError("kernel rank needs verified generators")
        bits = []
        for nu in psi.xi.scalars:
            if nu == ONE:
                bits.append(0)
            elif nu == -ONE:
                bits.append(1)
            else:
                raise VerificationError(f"xi of a sign generator has entry {nu}")
        rows.append(bits)
    return gf2_rank(rows)


def _commuting_generators(algebra: GradedMatrixAlgebra, phi: PhiMap) -> list[SymbolicAutomorphism]:
    """W(s), SymSigma, AutSigma and K representatives, each commuting with phi."""
    identity = ExactMatrix.identity(algebra.size)
    pool = (
        _pair_generators(algebra)
        + _sym_sigma_generators(algebra)
        + _twisted_generators(algebra)
        + _shift_generators(algebra)
    )
    out = []
    for psi in pool:
        psi = _solve_scalars(psi, phi, identity)
        verify(psi, phi, identity, strict=True)
        out.append(psi)
    return out


def complement_generators(spec: GradingSpec, algebra: GradedMatrixAlgebra | None = None) -> list[SymbolicAutomorphism]:
    """Generators of the subgroup of an AII Weyl group that meets N trivially."""
    if spec.series != Series.AII:
        raise DomainError("the complement of N is built for series AII")
    algebra = algebra or GradedMatrixAlgebra(spec)
    return _commuting_generators(algebra, build_phi(spec, algebra))


def _phi_generators(spec: GradingSpec, algebra: GradedMatrixAlgebra) -> list[SymbolicAutomorphism]:
    phi = build_phi(spec, algebra)
    if spec.series != Series.AII:
        return _commuting_generators(algebra, phi)

    out = []
    identity = ExactMatrix.identity(algebra.size)
    plain = _pair_generators(algebra) + _sym_sigma_generators(algebra) + _shift_generators(algebra)
    for psi in plain:
        psi = _solve_scalars(psi, phi, identity)
        verify(psi, phi, identity)
        out.append(psi)
    for psi, dprime in _natural_generators(algebra):
        psi = _solve_scalars(psi, phi, dprime)
        verify(psi, phi, dprime)
        out.append(psi)
    for psi in sign_generators(algebra):
        verify(psi, phi)
        out.append(psi)
    return out


def _grading_generators(spec: GradingSpec, algebra: GradedMatrixAlgebra) -> list[SymbolicAutomorphism]:
    group = algebra.group
    k = algebra.k
    out = [_automorphism(algebra, _transposition(k, i, i + 1), role="Sym(k)") for i in range(1, k)]
    for i in range(2, k + 1):
        for b in group.basis():
            units = [group.identity] * k
            units[i - 1] = b
            out.append(_automorphism(algebra, units=units, role="K"))
    for alpha in aut_group(group).generators:
        psi0 = realize_division_map(algebra.division, alpha)
        out.append(_automorphism(algebra, division_map=psi0, role="Aut(T,beta)"))
    if spec.series == Series.AI:
        out.append(_automorphism(algebra, antiflag=True, role="flip_map"))
    for psi in out:
        verify(psi)
    return out


def realize_generators(spec: GradingSpec, algebra: GradedMatrixAlgebra | None = None) -> list[SymbolicAutomorphism]:
    """Verified automorphisms whose classes generate the Weyl group."""
    if spec.series == Series.RAW_MPHI:
        raise DomainError("Weyl generators are built for the classified series only")
    algebra = algebra or GradedMatrixAlgebra(spec)
    gens = _phi_generators(spec, algebra) if spec.is_phi else _grading_generators(spec, algebra)
    logger.info("%s: %d verified generators", spec.label(), len(gens))
    return gens

