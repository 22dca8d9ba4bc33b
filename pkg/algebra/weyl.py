"""Weyl groups: closed-form group terms and the brute-force closure on the support."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial, prod

from algebra.automorphisms import (
    complement_generators,
    induced_support_permutation,
    kernel_rank,
    realize_generators,
)
from algebra.grading import GradedMatrixAlgebra, diag_membership
from algebra.permutations import Perm, PermutationClosure, closure, from_mapping
from algebra.symplectic import NATURAL, TWISTED, MultisetSigma, aut_group, sigma_stabilizer
from config import settings
from errors import DomainError, ResourceBoundError, VerificationError
from models import GradingSpec, GroupTerm, Series, WeylResult

logger = logging.getLogger(__name__)


# ── Group terms ──


def named(name: str, order: int) -> GroupTerm:
    return GroupTerm(op="named", name=name, order=str(order))


def direct(*parts: GroupTerm) -> GroupTerm:
    return GroupTerm(op="direct", parts=list(parts), order=str(prod(int(p.order) for p in parts)))


def semidirect(normal: GroupTerm, acting: GroupTerm) -> GroupTerm:
    return GroupTerm(op="semidirect", parts=[normal, acting], order=str(int(normal.order) * int(acting.order)))


def extension(kernel: GroupTerm, quotient: GroupTerm) -> GroupTerm:
    return GroupTerm(op="extension", parts=[kernel, quotient], order=str(int(kernel.order) * int(quotient.order)))


def wreath(s: int) -> GroupTerm:
    """W(s) = Z2^s x| Sym(s)."""
    return GroupTerm(
        op="wreath",
        name="W(s)",
        parts=[named(f"Z2^{s}", 2**s), named(f"Sym({s})", factorial(s))],
        order=str(2**s * factorial(s)),
    )


def _power(name: str, base: int, exponent: int) -> GroupTerm:
    return named(f"{name}^{exponent}", base**exponent)


def _sym_sigma(spec: GradingSpec) -> GroupTerm:
    sigma = MultisetSigma.from_tau(spec.tau_elements)
    return named("SymSigma", prod(factorial(m) for m in sigma.multiplicities))


def _stabilizer_order(spec: GradingSpec, kind: str) -> int:
    return sigma_stabilizer(spec.group, MultisetSigma.from_tau(spec.tau_elements), kind).order


def _quotient_term(spec: GradingSpec, stabilizer: GroupTerm) -> GroupTerm:
    """((T^(q+s-1) x Z2^s) x| (SymSigma x Sym(s))) x| stabilizer."""
    group = spec.group
    q, s = spec.q, spec.s
    translations = direct(_power("T", group.order, q + s - 1), named(f"Z2^{s}", 2**s))
    permutations = direct(_sym_sigma(spec), named(f"Sym({s})", factorial(s)))
    return semidirect(semidirect(translations, permutations), stabilizer)


def cd_closed_form(spec: GradingSpec) -> GroupTerm:
    """The orthogonal/symplectic shape; it also applies to B specs, where T is trivial."""
    return _quotient_term(spec, named("AutSigma", _stabilizer_order(spec, TWISTED)))


def _parts(term: GroupTerm, out: dict[str, str] | None = None) -> dict[str, str]:
    out = {} if out is None else out
    if term.name and term.op in ("named", "wreath", "extension"):
        out.setdefault(term.name, term.order)
    for p in term.parts:
        _parts(p, out)
    return out


def weyl_closed_form(spec: GradingSpec) -> WeylResult:
    group = spec.group
    if spec.series == Series.RAW_MPHI:
        raise DomainError("no closed-form Weyl group for RAW_MPHI; choose AII, B, C or D")

    complement = None
    if spec.series == Series.B:
        term = direct(named(f"Sym({spec.q})", factorial(spec.q)), wreath(spec.s))
    elif spec.series in (Series.C, Series.D):
        term = cd_closed_form(spec)
    elif spec.series == Series.AII:
        kernel = named("N", 2 ** (spec.q + spec.s - 1))
        term = extension(kernel, _quotient_term(spec, named("Aut*Sigma", _stabilizer_order(spec, NATURAL))))
        complement = complement_term(spec).order
    else:
        k = spec.k
        aut = named("Aut(T,beta)", aut_group(group).order)
        translations = _power("T", group.order, k - 1)
        if spec.series == Series.AI:
            acting = direct(named(f"Sym({k})", factorial(k)), semidirect(aut, named("flip_map", 2)))
        else:
            acting = direct(named(f"Sym({k})", factorial(k)), aut)
        term = semidirect(translations, acting)
        if spec.series == Series.RAW_M and spec.n == 2:
            term.name = "Sym(2)" if k == 2 else "Sp_2(2)"

    logger.info("closed-form Weyl group of %s: order %s", spec.label(), term.order)
    return WeylResult(term=term, order=term.order, parts=_parts(term), complement_order=complement)


# ── Brute force ──


@dataclass
class BruteForceWeyl:
    order: int
    support_group: PermutationClosure
    kernel_rank: int | None = None
    complement_order: int | None = None


def _with_blocks(perm: Perm, psi, degree: int) -> Perm:
    """perm extended by the block permutation pi on k extra points."""
    return perm + tuple(degree + p - 1 for p in psi.perm)


def _support_perms(gens, algebra: GradedMatrixAlgebra, with_blocks: bool) -> list[Perm]:
    support = algebra.support
    perms = []
    for psi in gens:
        perm = from_mapping(support, induced_support_permutation(psi, algebra))
        perms.append(_with_blocks(perm, psi, len(support)) if with_blocks else perm)
    return perms


def complement_term(spec: GradingSpec) -> GroupTerm:
    """((T^(q+s-1) x Z2^s) x| (SymSigma x Sym(s))) x| AutSigma inside an AII Weyl group."""
    if spec.series != Series.AII:
        raise DomainError("the complement of N is defined for series AII")
    return cd_closed_form(spec)


def brute_force_weyl(spec: GradingSpec, algebra: GradedMatrixAlgebra | None = None) -> BruteForceWeyl:
    """Close the support permutations of the verified generators."""
    if spec.series == Series.RAW_MPHI:
        raise DomainError("no Weyl group is computed for RAW_MPHI")
    algebra = algebra or GradedMatrixAlgebra(spec)
    support = algebra.support
    if len(support) > settings.support_bound:
        raise ResourceBoundError(f"support of {len(support)} components", settings.support_bound)

    gens = realize_generators(spec, algebra)
    if spec.series != Series.AII:
        perms = _support_perms(gens, algebra, with_blocks=False)
        for psi, perm in zip(gens, perms):
            if perm == tuple(range(len(support))):
                ok, _ = diag_membership(psi, algebra)
                if not ok:
                    raise VerificationError(f"{psi.role} fixes every component but is not in Diag")
        group = closure(perms, len(support))
        return BruteForceWeyl(group.order, group)

    # for q = 2, s = 0 a block swap composed with a shift fixes every component, so pi rides along
    degree = len(support) + algebra.k
    group = closure(_support_perms(gens, algebra, with_blocks=True), degree)
    rank = kernel_rank([psi for psi in gens if psi.role == "N"])
    if rank != spec.q + spec.s - 1:
        raise VerificationError(f"sign generators give kernel rank {rank}, expected {spec.q + spec.s - 1}")

    # these commute with phi, so no nontrivial element of their closure lies in N
    complement = closure(_support_perms(complement_generators(spec, algebra), algebra, with_blocks=True), degree)
    if any(p not in group for p in complement.generators):
        raise VerificationError("a complement generator lies outside the Weyl group closure")
    return BruteForceWeyl(2**rank * group.order, group, rank, complement.order)


def weyl_report(spec: GradingSpec, verify: bool = False) -> WeylResult:
    result = weyl_closed_form(spec)
    if not verify:
        return result
    brute = brute_force_weyl(spec)
    result.brute_force_order = str(brute.order)
    result.kernel_rank = brute.kernel_rank
    if brute.complement_order is not None:
        result.brute_force_complement_order = str(brute.complement_order)
    agree = result.order == result.brute_force_order
    agree = agree and result.complement_order == result.brute_force_complement_order
    result.verdict = "ok" if agree else "mismatch"
    if result.verdict == "mismatch":
        logger.error(
            "%s: closed form %s (complement %s), brute force %s (complement %s)",
            spec.label(), result.order, result.complement_order,
            result.brute_force_order, result.brute_force_complement_order,
        )
    return result
