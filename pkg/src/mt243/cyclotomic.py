"""
Elements of Q(zeta_(2^n)) in the power basis 1, zeta, ..., zeta^(M-1),
M = 2^(n-1), with zeta^M = -1.  Level 1 is Q itself (zeta = -1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .grpring import format_poly
from .numth import v2


@dataclass(frozen=True)
class CyclotomicNumber:
    level: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, level: int, coeffs: Iterable[Fraction | int]):
        if level < 1:
            raise ValueError(f"cyclotomic level must be >= 1, got {level}")
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != 1 << (level - 1):
            raise ValueError(f"level {level} needs {1 << (level - 1)} coefficients, got {len(cs)}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return 1 << (self.level - 1)

    @classmethod
    def zero(cls, level: int) -> CyclotomicNumber:
        return cls(level, [0] * (1 << (level - 1)))

    @classmethod
    def rational(cls, level: int, c: Fraction | int) -> CyclotomicNumber:
        cs = [0] * (1 << (level - 1))
        cs[0] = c
        return cls(level, cs)

    @classmethod
    def zeta_power(cls, level: int, e: int, coeff: Fraction | int = 1) -> CyclotomicNumber:
        return cls.from_exponent_sums(level, {e: coeff})

    @classmethod
    def from_exponent_sums(cls, level: int, sums: dict[int, Fraction | int] | list) -> CyclotomicNumber:
        """Fold sum c_e zeta^e (any integer e) into the power basis."""
        M = 1 << (level - 1)
        cs = [Fraction(0)] * M
        items = sums.items() if isinstance(sums, dict) else enumerate(sums)
        for e, c in items:
            if not c:
                continue
            e %= 2 * M
            if e >= M:
                cs[e - M] -= c
            else:
                cs[e] += c
        return cls(level, cs)

    def lift(self, level: int) -> CyclotomicNumber:
        """Image under Q(zeta_(2^n)) -> Q(zeta_(2^level)), zeta_(2^n) = zeta^(2^(level-n))."""
        if level < self.level:
            raise ValueError(f"cannot lift level {self.level} down to {level}")
        step = 1 << (level - self.level)
        return CyclotomicNumber.from_exponent_sums(
            level, {j * step: c for j, c in enumerate(self.coeffs)})

    def _common(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(self.level, other)
        lv = max(self.level, other.level)
        return self.lift(lv), other.lift(lv)

    def __add__(self, other) -> CyclotomicNumber:
        a, b = self._common(other)
        return CyclotomicNumber(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other) -> CyclotomicNumber:
        a, b = self._common(other)
        return CyclotomicNumber(a.level, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other) -> CyclotomicNumber:
        return (-self) + other

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber(self.level, [-x for x in self.coeffs])

    def __mul__(self, other) -> CyclotomicNumber:
        if not isinstance(other, CyclotomicNumber):
            return CyclotomicNumber(self.level, [x * other for x in self.coeffs])
        a, b = self._common(other)
        M = a.degree
        out = [Fraction(0)] * M
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    k = i + j
                    if k >= M:
                        out[k - M] -= x * y
                    else:
                        out[k] += x * y
        return CyclotomicNumber(a.level, out)

    __rmul__ = __mul__

    def conj(self) -> CyclotomicNumber:
        """Complex conjugation zeta -> zeta^-1."""
        return CyclotomicNumber.from_exponent_sums(
            self.level, {-j: c for j, c in enumerate(self.coeffs)})

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"{self} is not in Z[zeta]")
        return [int(c) for c in self.coeffs]

    def congruent(self, other, modulus: int) -> bool:
        """Coordinatewise congruence in the power basis (Z[zeta] is free on it)."""
        diff = self - other
        return all(c.denominator == 1 and int(c) % modulus == 0 for c in diff.coeffs)

    def __str__(self) -> str:
        return format_poly(self.coeffs, "z")


def _denominator_lcm(a: CyclotomicNumber) -> int:
    den = 1
    for c in a.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return den


def norm(a: CyclotomicNumber) -> Fraction:
    """Field norm down to Q, i.e. the resultant of the coefficient polynomial
    with x^M + 1, by repeated relative norms f(x) f(-x) = g(x^2)."""
    den = _denominator_lcm(a)
    f = [int(c * den) for c in a.coeffs]
    M = len(f)
    while M > 1:
        g = [-c if j % 2 else c for j, c in enumerate(f)]
        prod = [0] * M
        for i, x in enumerate(f):
            if not x:
                continue
            for j, y in enumerate(g):
                if y:
                    k = i + j
                    if k >= M:
                        prod[k - M] -= x * y
                    else:
                        prod[k] += x * y
        # f(x) f(-x) is even in x; keep the y = x^2 coefficients
        f = prod[::2]
        M //= 2
    return Fraction(f[0], den ** a.degree)


def val2(a: CyclotomicNumber) -> Fraction | float:
    """Valuation with v(2) = 1, from the 2-adic size of the norm.

    2 is totally ramified in Q(zeta_(2^n)), so v(a) = v_2(N(a)) / [K:Q].
    Returns math.inf for 0.
    """
    if a.is_zero():
        return math.inf
    n = norm(a)
    return Fraction(v2(n.numerator) - v2(n.denominator), a.degree)


def val2_by_division(a: CyclotomicNumber) -> Fraction | float:
    """Same valuation, counting exact divisions by the uniformiser zeta - 1."""
    if a.is_zero():
        return math.inf
    den = _denominator_lcm(a)
    ints = [int(c * den) for c in a.coeffs]
    content = min(v2(c) for c in ints if c)
    ints = [c >> content for c in ints]
    M = a.degree
    steps = 0
    # 1/(zeta - 1) = -(1 + zeta + ... + zeta^(M-1)) / 2
    while True:
        if M == 1:
            break
        prod = [0] * M
        for i, x in enumerate(ints):
            if not x:
                continue
            for j in range(M):
                k = i + j
                if k >= M:
                    prod[k - M] -= x
                else:
                    prod[k] += x
        if any(c % 2 for c in prod):
            break
        ints = [-(c // 2) for c in prod]
        steps += 1
    return content - v2(den) + Fraction(steps, M)
