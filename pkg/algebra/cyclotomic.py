"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is stored in the power basis 1, z, ..., z^(phi(m)-1) of Q(zeta_m),
fully reduced modulo the m-th cyclotomic polynomial.  Values with different
conductors are combined by embedding both into the lcm conductor.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy import Poly, QQ, cyclotomic_poly, symbols
from sympy.ntheory import mobius, totient

from errors import DomainError

_x = symbols("x")


@lru_cache(maxsize=None)
def _modulus(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    return tuple(int(c) for c in reversed(cyclotomic_poly(m, _x, polys=True).all_coeffs()))


@lru_cache(maxsize=None)
def _normalized_trace(m: int, i: int) -> Fraction:
    # Tr(zeta_m^i) / phi(m) = mu(m/g) / phi(m/g), independent of the ambient field
    d = m // gcd(i, m)
    return Fraction(int(mobius(d)), int(totient(d)))


def _reduce(m: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    modulus = _modulus(m)
    deg = len(modulus) - 1
    for d in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[d]
        if c:
            shift = d - deg
            for i in range(deg):
                if modulus[i]:
                    coeffs[shift + i] -= c * modulus[i]
            coeffs[d] = Fraction(0)
    out = coeffs[:deg] + [Fraction(0)] * (deg - len(coeffs))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Cyclotomic:
    conductor: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_coeffs(cls, m: int, coeffs) -> Cyclotomic:
        """Build from arbitrary-length power coefficients, reducing modulo Phi_m."""
        return cls(m, _reduce(m, [Fraction(c) for c in coeffs]))

    @classmethod
    def rational(cls, value) -> Cyclotomic:
        return cls(1, (Fraction(value),))

    # ── Interop ──

    def embed(self, target: int) -> Cyclotomic:
        """Canonical embedding Q(zeta_m) -> Q(zeta_target); m must divide target."""
        m = self.conductor
        if target == m:
            return self
        if target % m:
            raise DomainError(f"cannot embed conductor {m} into {target}")
        step = target // m
        coeffs = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            coeffs[i * step] = c
        return Cyclotomic.from_coeffs(target, coeffs)

    @staticmethod
    def _coerce(other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other)
        return None

    def _align(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        m = lcm(self.conductor, other.conductor)
        return self.embed(m), other.embed(m)

    # ── Field operations ──

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        return Cyclotomic(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic.from_coeffs(a.conductor, prod)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise DomainError("inversion of zero")
        m = self.conductor
        nonzero = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if len(nonzero) == 1:
            i, c = nonzero[0]
            return Cyclotomic.from_coeffs(m, [Fraction(0)] * ((m - i) % m) + [1 / c])
        f = Poly(list(reversed(self.coeffs)), _x, domain=QQ)
        g = Poly(list(reversed(_modulus(m))), _x, domain=QQ)
        inv = f.invert(g)
        return Cyclotomic.from_coeffs(
            m, [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> Cyclotomic:
        base = self if k >= 0 else self.inverse()
        result = Cyclotomic.rational(1)
        for _ in range(abs(k)):
            result = result * base
        return result

    # ── Predicates ──

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def normalized_trace(self) -> Fraction:
        return sum(
            (c * _normalized_trace(self.conductor, i) for i, c in enumerate(self.coeffs) if c),
            Fraction(0),
        )

    def __hash__(self) -> int:
        # both traces are independent of the conductor the value is written in
        return hash((self.normalized_trace(), (self * self).normalized_trace()))

    def as_rational(self) -> Fraction | None:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    # ── Roots of unity ──

    def root_of_unity_log(self) -> tuple[int, int] | None:
        """Return (M, k) with self == zeta_M^k, or None if self is not a root of unity."""
        m = self.conductor
        big = 2 * m if m % 2 else m
        for k in range(big):
            if root_of_unity(big, k) == self:
                return big, k
        return None

    def sqrt_unit(self) -> Cyclotomic:
        """Least-power square root of a root of unity."""
        log = self.root_of_unity_log()
        if log is None:
            raise DomainError(f"{self} is not a root of unity")
        big, k = log
        if k % 2 == 0:
            return root_of_unity(big, k // 2)
        return root_of_unity(2 * big, k)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        return f"{' + '.join(terms) or '0'} [{self.conductor}]"


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


def root_of_unity(m: int, k: int) -> Cyclotomic:
    if m < 1:
        raise DomainError(f"conductor must be positive, got {m}")
    k %= m
    return Cyclotomic.from_coeffs(m, [0] * k + [1])


def cyclo_arith(a: Cyclotomic, b: Cyclotomic | None, op: str):
    """Dispatch one field operation by name; b is ignored for neg and inv."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "eq":
        return a == b
    raise DomainError(f"unknown operation {op!r}")
