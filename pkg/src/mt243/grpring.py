"""
Group algebras Q[G_n] for the cyclic group G_n of order 2^n.

Elements are stored in the power basis of the fixed generator gamma
(= sigma_5 on the cyclotomic side): coefficient j belongs to gamma^j.
The mu and lambda invariants are those of Z_2[G_n] and need integral
coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .numth import v2


@dataclass(frozen=True)
class GroupRingElement:
    level: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, level: int, coeffs: Iterable[Fraction | int]):
        if level < 0:
            raise ValueError(f"negative level {level}")
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != 1 << level:
            raise ValueError(f"level {level} needs {1 << level} coefficients, got {len(cs)}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, level: int) -> GroupRingElement:
        return cls(level, [0] * (1 << level))

    @classmethod
    def monomial(cls, level: int, exponent: int, coeff: Fraction | int = 1) -> GroupRingElement:
        cs = [0] * (1 << level)
        cs[exponent % (1 << level)] = coeff
        return cls(level, cs)

    @property
    def order(self) -> int:
        return 1 << self.level

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("element has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def _check(self, other: GroupRingElement) -> None:
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        return GroupRingElement(self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        return GroupRingElement(self.level, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement(self.level, [-a for a in self.coeffs])

    def scale(self, c: Fraction | int) -> GroupRingElement:
        return GroupRingElement(self.level, [c * a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_poly(self.coeffs, "g")


def format_poly(coeffs: Iterable[Fraction | int], var: str) -> str:
    """Ascending-exponent text form, e.g. '-g^2-g^3' or '1+2*z'."""
    parts = []
    for j, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(sign + body)
    return "".join(parts) or "0"


def multiply(f: GroupRingElement, g: GroupRingElement) -> GroupRingElement:
    f._check(g)
    size = f.order
    out = [Fraction(0)] * size
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if b:
                out[(i + j) % size] += a * b
    return GroupRingElement(f.level, out)


def mu_invariant(g: GroupRingElement) -> int:
    if g.is_zero():
        raise ValueError("mu of the zero element is infinite")
    return min(v2(c) for c in g.int_coeffs() if c)


def lambda_invariant(g: GroupRingElement) -> int:
    """Lowest degree of 2^-mu g mod 2, written in u = gamma - 1."""
    mu = mu_invariant(g)
    bits = [(c >> mu) & 1 for c in g.int_coeffs()]
    # (1+u)^j = sum over bit-subsets i of j of u^i mod 2 (Lucas), so the
    # u-expansion is the superset-sum transform of the gamma-coefficients
    size = len(bits)
    h = 1
    while h < size:
        for j in range(size):
            if j & h:
                bits[j ^ h] ^= bits[j]
        h <<= 1
    for i, b in enumerate(bits):
        if b:
            return i
    raise AssertionError("nonzero mod 2 reduction has no leading term")


def project(g: GroupRingElement) -> GroupRingElement:
    """pi_n: gamma_n -> gamma_(n-1)."""
    if g.level == 0:
        raise ValueError("cannot project from level 0")
    half = g.order // 2
    cs = g.coeffs
    return GroupRingElement(g.level - 1, [cs[j] + cs[j + half] for j in range(half)])


def norm_lift(f: GroupRingElement) -> GroupRingElement:
    """nu: gamma_(n-1)^j -> gamma_n^j + gamma_n^(j + 2^(n-1))."""
    return GroupRingElement(f.level + 1, f.coeffs + f.coeffs)


def d_element(n: int) -> GroupRingElement:
    """Sum of the elements of order dividing 2: 1 + gamma^(2^(n-1))."""
    if n < 1:
        raise ValueError("d_element needs n >= 1")
    return GroupRingElement.monomial(n, 0) + GroupRingElement.monomial(n, 1 << (n - 1))


def trace_element(n: int) -> GroupRingElement:
    return GroupRingElement(n, [1] * (1 << n))
