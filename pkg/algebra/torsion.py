"""Finite abelian groups T = prod (Z_l x Z_l) with their symplectic bicharacter.

Elements are exponent tuples (i1, j1, ..., ir, jr) with respect to the
symplectic basis a1, b1, ..., ar, br.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from math import lcm, prod

from sympy import factorint

from algebra.cyclotomic import Cyclotomic, root_of_unity
from errors import DomainError

logger = logging.getLogger(__name__)

TorsionElement = tuple[int, ...]


@dataclass(frozen=True)
class TorsionGroup:
    pairs: tuple[int, ...]  # (l_1, ..., l_r), each a prime power

    def __post_init__(self):
        for ell in self.pairs:
            if ell < 2 or len(factorint(ell)) != 1:
                raise DomainError(f"cyclic order {ell} is not a prime power")

    @classmethod
    def elementary(cls, r: int) -> TorsionGroup:
        return cls((2,) * r)

    @classmethod
    def from_invariants(cls, factors: list[int]) -> TorsionGroup:
        """Build T from invariant factors such as [6, 6] or [3, 3]; each prime power must pair up."""
        powers: dict[int, int] = {}
        for f in factors:
            if f < 1:
                raise DomainError(f"invalid invariant factor {f}")
            for p, e in factorint(f).items():
                powers[p**e] = powers.get(p**e, 0) + 1
        pairs = []
        for ell, count in sorted(powers.items()):
            if count % 2:
                raise DomainError(
                    f"Z_{ell} occurs {count} times; T must be a product of squares Z_l x Z_l"
                )
            pairs.extend([ell] * (count // 2))
        return cls(tuple(pairs))

    # ── Shape ──

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def rank(self) -> int:
        return 2 * self.r

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        return tuple(ell for ell in self.pairs for _ in range(2))

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def degree(self) -> int:
        """Size of the Pauli matrices, sqrt |T|."""
        return prod(self.pairs)

    @property
    def exponent(self) -> int:
        return lcm(*self.pairs) if self.pairs else 1

    @property
    def is_elementary_two(self) -> bool:
        return all(ell == 2 for ell in self.pairs)

    @property
    def conductor(self) -> int:
        return lcm(4, self.exponent)

    # ── Elements ──

    @property
    def identity(self) -> TorsionElement:
        return (0,) * self.rank

    def basis(self) -> list[TorsionElement]:
        out = []
        for k in range(self.rank):
            e = [0] * self.rank
            e[k] = 1
            out.append(tuple(e))
        return out

    def elements(self) -> list[TorsionElement]:
        """All elements in lexicographic exponent order."""
        return [tuple(e) for e in itertools.product(*(range(m) for m in self.moduli))]

    def reduce(self, exps) -> TorsionElement:
        if len(exps) != self.rank:
            raise DomainError(f"expected {self.rank} exponents, got {len(exps)}")
        return tuple(int(x) % m for x, m in zip(exps, self.moduli))

    def mul(self, u: TorsionElement, v: TorsionElement) -> TorsionElement:
        return tuple((x + y) % m for x, y, m in zip(u, v, self.moduli))

    def inv(self, u: TorsionElement) -> TorsionElement:
        return tuple(-x % m for x, m in zip(u, self.moduli))

    def power(self, u: TorsionElement, n: int) -> TorsionElement:
        return tuple(x * n % m for x, m in zip(u, self.moduli))

    # ── Bicharacter ──

    def beta_log(self, u: TorsionElement, v: TorsionElement) -> int:
        """Exponent e with beta(u, v) = zeta_L^e, L the exponent of T."""
        big = self.exponent
        e = 0
        for k, ell in enumerate(self.pairs):
            iu, ju = u[2 * k], u[2 * k + 1]
            iv, jv = v[2 * k], v[2 * k + 1]
            e += (iu * jv - ju * iv) * (big // ell)
        return e % big

    def beta(self, u: TorsionElement, v: TorsionElement) -> Cyclotomic:
        return root_of_unity(self.exponent, self.beta_log(u, v))

    def beta_sign(self, u: TorsionElement, v: TorsionElement) -> int:
        """beta(u, v) as +-1 on an elementary 2-group."""
        self.require_elementary()
        return -1 if self.beta_log(u, v) else 1

    def quad_sign(self, t: TorsionElement) -> int:
        """Transpose sign of X_t: (-1)^(sum i_k j_k)."""
        self.require_elementary()
        return -1 if sum(t[2 * k] * t[2 * k + 1] for k in range(self.r)) % 2 else 1

    def plus_part(self) -> list[TorsionElement]:
        return [t for t in self.elements() if self.quad_sign(t) == 1]

    def minus_part(self) -> list[TorsionElement]:
        return [t for t in self.elements() if self.quad_sign(t) == -1]

    def require_elementary(self):
        if not self.is_elementary_two:
            raise DomainError(f"T with cyclic orders {self.pairs} is not an elementary 2-group")

    # ── Text ──

    def format(self, t: TorsionElement) -> str:
        """Exponent string, one two-digit token per pair: "10 01"; the empty group prints "e"."""
        if not self.pairs:
            return "e"
        if max(self.pairs) > 10:
            raise DomainError("textual form supports cyclic orders up to 10")
        return " ".join(f"{t[2 * k]}{t[2 * k + 1]}" for k in range(self.r))

    def parse(self, text: str) -> TorsionElement:
        text = text.strip()
        if text in ("e", ""):
            return self.identity
        digits = text.replace(" ", "").replace("_", "")
        if not digits.isdigit() or len(digits) != self.rank:
            raise DomainError(f"cannot parse {text!r} as an element of T with {self.r} pairs")
        exps = [int(ch) for ch in digits]
        for x, m in zip(exps, self.moduli):
            if x >= m:
                raise DomainError(f"exponent {x} out of range in {text!r}")
        return tuple(exps)

    def describe(self) -> str:
        if not self.pairs:
            return "trivial"
        return " x ".join(f"Z{ell}^2" for ell in self.pairs)


def beta_eval(group: TorsionGroup, u: TorsionElement, v: TorsionElement) -> Cyclotomic:
    return group.beta(u, v)


def quad_sign(group: TorsionGroup, t: TorsionElement) -> int:
    return group.quad_sign(t)
