"""The central extension G of the universal group by <h> for Type II gradings.

phi^2 acts on each component of Gamma by lambda(g) = +-1, a character of the
universal group.  Square roots mu(g) of lambda are chosen on the normal-form
generators (1 or zeta_4) and G is the group of pairs (g, +-1) with cocycle
eps(x, y) = mu(x + y) / (mu(x) mu(y)).  All roots of unity are carried as
exponents of zeta_4.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from algebra.cyclotomic import ONE, Cyclotomic, root_of_unity
from algebra.grading import GradedMatrixAlgebra
from algebra.involutions import PhiMap, build_phi, phi_fourth_is_identity
from algebra.presentation import (
    UniversalPresentation,
    elementary_divisors,
    gf2_solve,
    reduce_presentation,
    universal_group,
)
from errors import DomainError, VerificationError
from models import ExtensionModel, GradingSpec, Series

logger = logging.getLogger(__name__)


@dataclass
class TypeIIExtension:
    base: UniversalPresentation
    lambda_bits: list[int]             # per normal-form generator, 1 where phi^2 acts by -1
    mu_logs: list[int]                 # mu(f_i) = zeta_4^mu_logs[i]
    extended: UniversalPresentation
    h: tuple[int, ...]
    split: bool
    t_criterion: bool
    chi: list[int] = field(default_factory=list)   # +-1 on the generators of G when split, chi(h) = -1
    lambda_on_generators: list[int] = field(default_factory=list)

    def _reduced(self, x) -> tuple[int, ...]:
        return self.base.reduce(x)

    def _mu_log(self, x) -> int:
        return sum(m * c for m, c in zip(self.mu_logs, self._reduced(x))) % 4

    def lam(self, x) -> int:
        bits = sum(b * c for b, c in zip(self.lambda_bits, self._reduced(x))) % 2
        return -1 if bits else 1

    def mu(self, x) -> Cyclotomic:
        return root_of_unity(4, self._mu_log(x))

    def epsilon(self, x, y) -> int:
        total = self._reduced([a + b for a, b in zip(x, y)])
        e = (self._mu_log(total) - self._mu_log(x) - self._mu_log(y)) % 4
        if e % 2:
            raise VerificationError("cocycle value is not a sign")
        return -1 if e else 1

    def to_model(self) -> ExtensionModel:
        return ExtensionModel(
            split=self.split,
            t_criterion=self.t_criterion,
            invariants=self.extended.invariants,
            free_rank=self.extended.free_rank,
            lambda_on_generators=self.lambda_on_generators,
        )


def _phi_square_signs(algebra: GradedMatrixAlgebra, phi: PhiMap) -> list[int]:
    """phi^2 on E_11 (x) X_b for the T-basis, then on E_{i,i+1} (x) I; 1 marks the value -1."""
    group = algebra.group
    keys = [(1, 1, b) for b in group.basis()]
    keys += [(i, i + 1, group.identity) for i in range(1, algebra.k)]
    square = phi.square()
    bits = []
    for key in keys:
        b = algebra.basis_matrix(key)
        c = square.apply(b).ratio_to(b)
        if c == ONE:
            bits.append(0)
        elif c == -ONE:
            bits.append(1)
        else:
            raise VerificationError(f"phi^2 does not act by a sign on the component of {key}")
    return bits


def _extend(base: UniversalPresentation, lambda_bits: list[int], flip: bool) -> tuple[list[int], UniversalPresentation]:
    """mu on the normal-form generators and the presentation of G; h is the last generator."""
    mu_logs = [(b + (2 if flip else 0)) % 4 for b in lambda_bits]
    width = len(base.moduli) + 1
    rows = []
    for i, d in enumerate(base.invariants):
        power = d * mu_logs[i] % 4
        if power % 2:
            raise VerificationError(f"mu(f_{i + 1})^{d} is not a sign")
        row = [0] * width
        row[i] = d
        row[-1] = -1 if power == 2 else 0
        rows.append(row)
    two_h = [0] * width
    two_h[-1] = 2
    rows.append(two_h)
    names = [f"f{i + 1}~" for i in range(width - 1)] + ["h"]
    return mu_logs, reduce_presentation(rows, width, names)


def _lift_character(base: UniversalPresentation, generator_bits: list[int]) -> list[int] | None:
    """zeta_4-exponents c_j on the original generators with c_j = lambda_j mod 2 respecting every relation."""
    rows = base.relations
    width = len(generator_bits)
    rhs = []
    for row in rows:
        total = sum(r * l for r, l in zip(row, generator_bits))
        if total % 2:
            raise VerificationError("phi^2 signs do not define a character of the universal group")
        rhs.append(total // 2)
    d = gf2_solve(rows, rhs, width)
    if d is None:
        return None
    c = [(l + 2 * x) % 4 for l, x in zip(generator_bits, d)]
    for row in rows:
        if sum(r * x for r, x in zip(row, c)) % 4:
            raise VerificationError("lifted character violates a relation")
    return c


def _t_criterion(spec: GradingSpec) -> bool:
    group = spec.group
    tau = spec.tau_elements
    if not tau:
        return True
    for t in group.elements():
        if len({group.quad_sign(group.mul(ti, t)) for ti in tau}) == 1:
            return True
    return False


def _expected_divisors(base: UniversalPresentation, split: bool) -> list[int]:
    divisors = elementary_divisors(base.invariants)
    if split:
        return sorted(divisors + [2])
    if 2 not in divisors:
        raise VerificationError("non-split extension of a group without a Z2 factor")
    divisors.remove(2)
    return sorted(divisors + [4])


def typeII_extension(spec: GradingSpec, algebra: GradedMatrixAlgebra | None = None) -> TypeIIExtension:
    if spec.series != Series.AII:
        raise DomainError("Type II extensions are defined for series AII")
    algebra = algebra or GradedMatrixAlgebra(spec)
    phi = build_phi(spec, algebra)
    if not phi_fourth_is_identity(algebra, phi):
        raise VerificationError(f"{spec.label()}: phi^4 is not the identity")
    base = universal_group(spec, algebra)

    generator_bits = _phi_square_signs(algebra, phi)
    lambda_bits = [sum(w * l for w, l in zip(word, generator_bits)) % 2 for word in base.coordinate_words]
    mu_logs, extended = _extend(base, lambda_bits, flip=False)
    h = extended.generator_images[-1]

    # G / <h> is the universal group again
    quotient_rows = extended.relations + [[0] * (len(base.moduli)) + [1]]
    quotient = reduce_presentation(quotient_rows, len(base.moduli) + 1, extended.generator_names)
    if elementary_divisors(quotient.invariants) != elementary_divisors(base.invariants) or (
        quotient.free_rank != base.free_rank
    ):
        raise VerificationError("G / <h> differs from the universal group")

    lift = _lift_character(base, generator_bits)
    split = lift is not None
    by_t = _t_criterion(spec)
    if split != by_t:
        raise VerificationError(
            f"{spec.label()}: character lift says split={split}, the t-criterion says {by_t}"
        )

    divisors = elementary_divisors(extended.invariants)
    if divisors != _expected_divisors(base, split) or extended.free_rank != base.free_rank:
        raise VerificationError(f"{spec.label()}: G has divisors {divisors}, split={split}")

    _flipped_logs, flipped = _extend(base, lambda_bits, flip=True)
    if elementary_divisors(flipped.invariants) != divisors:
        raise VerificationError("re-choosing mu changes the extension")

    result = TypeIIExtension(
        base=base,
        lambda_bits=lambda_bits,
        mu_logs=mu_logs,
        extended=extended,
        h=h,
        split=split,
        t_criterion=by_t,
        lambda_on_generators=[-1 if b else 1 for b in generator_bits],
    )
    if split:
        result.chi = _split_character(result, lift)
    logger.info("Type II extension of %s: %s, G = %s x Z^%d", spec.label(),
                "split" if split else "non-split", extended.invariants, extended.free_rank)
    return result


def _split_character(ext: TypeIIExtension, lift: list[int]) -> list[int]:
    """chi(f_i~) = chi_bar(f_i) / mu(f_i) on the lifted generators, and chi(h) = -1."""
    base = ext.base
    signs = []
    for i, word in enumerate(base.coordinate_words):
        e = (sum(w * c for w, c in zip(word, lift)) - ext.mu_logs[i]) % 4
        if e % 2:
            raise VerificationError("lifted character and mu differ by more than a sign")
        signs.append(-1 if e else 1)
    for i, d in enumerate(base.invariants):
        c = 1 if d * ext.mu_logs[i] % 4 == 2 else 0
        if signs[i] ** d != (-1) ** c:
            raise VerificationError("splitting character violates a relation of G")
    return signs + [-1]
