"""
Mazur-Tate elements of E along the cyclotomic Z_2-extension, their twists by
the quadratic character of Q(sqrt(m)), and specialisations at Dirichlet
characters.

G_n = (Z/2^(n+2))^x / {+-1} is cyclic of order 2^n, generated by the class
of 5; psi_n sends that class to zeta_(2^n).
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CyclotomicNumber, val2
from .grpring import GroupRingElement
from .modsym import SymbolEngine, default_engine
from .numth import a_p, discrete_log_pm5, factorize, is_in_S, kronecker


def _class_exponent(x: int, n: int) -> int:
    """Exponent j with x = +-5^j mod 2^(n+2), reduced mod 2^n."""
    if n == 0:
        if x % 2 == 0:
            raise ValueError(f"{x} is even")
        return 0
    return discrete_log_pm5(x, n + 2)


@dataclass(frozen=True)
class Character:
    """psi_n (kind 'psi'), chi_m (kind 'chi'), their product (kind 'rho'),
    or the trivial character."""

    kind: str
    n: int = 0
    m: int = 1

    def __post_init__(self):
        if self.kind not in ("psi", "chi", "rho", "trivial"):
            raise ValueError(f"unknown character kind {self.kind!r}")
        if self.kind in ("psi", "rho") and self.n < 1:
            raise ValueError("psi_n needs n >= 1")
        if self.kind in ("chi", "rho") and (self.m % 4 != 1 or self.m == 1):
            raise ValueError(f"twist {self.m} must be = 1 mod 4 and > 1")

    @classmethod
    def psi(cls, n: int) -> Character:
        return cls("psi", n=n)

    @classmethod
    def chi(cls, m: int) -> Character:
        return cls("chi", m=m)

    @classmethod
    def rho(cls, n: int, m: int) -> Character:
        return cls("rho", n=n, m=m)

    @classmethod
    def trivial(cls) -> Character:
        return cls("trivial")

    @property
    def modulus(self) -> int:
        two = 1 << (self.n + 2)
        return {"psi": two, "chi": self.m, "rho": two * self.m, "trivial": 1}[self.kind]

    @property
    def order(self) -> int:
        return {"psi": 1 << self.n, "chi": 2, "rho": 1 << self.n, "trivial": 1}[self.kind]

    @property
    def value_level(self) -> int:
        """Cyclotomic level that holds the values."""
        return self.n if self.kind in ("psi", "rho") else 1

    def exponent_form(self, x: int) -> tuple[int, int] | None:
        """(sign, e) with value sign * zeta_(2^level)^e, or None off the units."""
        if math.gcd(x, self.modulus) != 1:
            return None
        sign, e = 1, 0
        if self.kind in ("chi", "rho"):
            sign = kronecker(x, self.m)
        if self.kind in ("psi", "rho"):
            e = discrete_log_pm5(x, self.n + 2)
        return sign, e


def char_eval(c: Character, x: int) -> CyclotomicNumber:
    form = c.exponent_form(x)
    if form is None:
        return CyclotomicNumber.zero(c.value_level)
    sign, e = form
    return CyclotomicNumber.zeta_power(c.value_level, e, sign)


@dataclass(frozen=True)
class MTElement:
    level: int
    twist: int = 1
    element: GroupRingElement | None = None


def xi_cyclotomic(engine: SymbolEngine, n: int) -> MTElement:
    """xi_(Q_n): coefficient of gamma^j is 2 S(5^j / 2^(n+2))."""
    if n < 0:
        raise ValueError(f"negative level {n}")
    t = 1 << (n + 2)
    coeffs = []
    x = 1
    for _ in range(1 << n):
        coeffs.append(engine.two_s(x, t))
        x = x * 5 % t
    return MTElement(level=n, element=GroupRingElement(n, coeffs))


def specialize_element(g: GroupRingElement, j: int) -> CyclotomicNumber:
    """gamma -> zeta_(2^j); j = 0 is the trivial character."""
    if j > g.level:
        raise ValueError(f"character of order 2^{j} does not factor through G_{g.level}")
    if j == 0:
        return CyclotomicNumber.rational(1, sum(g.coeffs))
    return CyclotomicNumber.from_exponent_sums(j, dict(enumerate(g.coeffs)))


def specialize(e: MTElement, j: int | None = None) -> CyclotomicNumber:
    if e.element is None:
        raise ValueError("twisted elements are only available through specialize_twisted")
    return specialize_element(e.element, e.level if j is None else j)


def validate_twist(m: int) -> tuple[int, int]:
    """Factor m = p q with p != q both in S."""
    fac = factorize(m) if m >= 1 else {}
    ps = sorted(fac)
    if len(ps) != 2 or any(fac[p] != 1 for p in ps) or not all(is_in_S(p) for p in ps):
        raise ValueError(f"{m} is not a product of two distinct primes in S")
    return ps[0], ps[1]


def _twisted_partial(args) -> list[int]:
    n, m, lo, hi = args
    return _twisted_sums(default_engine(), n, m, lo, hi)


def _twisted_sums(engine: SymbolEngine, n: int, m: int, lo: int, hi: int) -> list[int]:
    M = (1 << (n + 2)) * m
    chi = [kronecker(r, m) for r in range(m)]
    acc = [0] * (1 << n)
    start = lo | 1
    for x in range(start, hi, 2):
        s = chi[x % m]
        if not s:
            continue
        acc[discrete_log_pm5(x, n + 2)] += s * engine.two_s(x, M)
    return acc


def specialize_twisted(engine: SymbolEngine, n: int, m: int, workers: int = 1) -> CyclotomicNumber:
    """rho_n(xi_(2^(n+2))(m)) = sum_x chi(x) psi_n(x) S(x / 2^(n+2) m).

    rho_n is even, so pairing x with -x gives the sum over 0 < x < M/2 of
    chi psi_n(x) * 2S(x/M), which is integral.
    """
    if n < 1:
        raise ValueError("specialize_twisted needs n >= 1")
    validate_twist(m)
    half = (1 << (n + 1)) * m
    if workers <= 1:
        acc = _twisted_sums(engine, n, m, 1, half)
    else:
        step = -(-half // workers)
        chunks = [(n, m, lo, min(lo + step, half)) for lo in range(1, half, step)]
        acc = [0] * (1 << n)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_twisted_partial, chunks):
                acc = [a + b for a, b in zip(acc, part)]
    out = CyclotomicNumber.from_exponent_sums(n, acc)
    if not out.is_integral():
        raise AssertionError("twisted specialisation is not integral")
    return out


def p_psi_M(engine: SymbolEngine, c: Character, M: int) -> CyclotomicNumber:
    """sum over x in (Z/M)^x of c(x) S(x/M)."""
    if M % 3 == 0:
        raise ValueError(f"M = {M} is divisible by 3")
    if M % c.modulus:
        raise ValueError(f"character modulus {c.modulus} does not divide {M}")
    acc: dict[int, int] = {}
    for x in range(1, M + 1):
        form = c.exponent_form(x) if math.gcd(x, M) == 1 else None
        if form is None:
            continue
        sign, e = form
        acc[e] = acc.get(e, 0) + sign * engine.two_s(x, M)
    total = CyclotomicNumber.from_exponent_sums(c.value_level, acc)
    return total * Fraction(1, 2)


def euler_factor(ell: int, n: int) -> CyclotomicNumber:
    """a_l - psi_n(l) - conj(psi_n(l))."""
    v = char_eval(Character.psi(n), ell)
    return CyclotomicNumber.rational(n, a_p(ell)) - v - v.conj()


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))


__all__ = [
    "Character", "MTElement", "char_eval", "xi_cyclotomic", "specialize",
    "specialize_element", "specialize_twisted", "p_psi_M", "euler_factor",
    "validate_twist", "val2",
]
