"""
Integer arithmetic for the curve E: y^2 + y = x^3 + 2 (conductor 243).

Fourier coefficients come from point counts, class numbers from reduced
binary quadratic forms.  Everything here is a pure function of its inputs.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class CurveConstants:
    a1: int = 0
    a2: int = 0
    a3: int = 1
    a4: int = 0
    a6: int = 2
    conductor: int = 243
    bad_prime: int = 3
    # L(E,1)/Omega_E; the Manin constant is 1 for this optimal curve
    l_ratio: Fraction = Fraction(1, 3)


CURVE = CurveConstants()


@dataclass(frozen=True)
class PairReport:
    m: int
    a_m: int
    p: int
    q: int
    h_q: int
    h_6pq: int

    def as_row(self) -> tuple[int, ...]:
        return (self.m, self.a_m, self.p, self.q, self.h_q, self.h_6pq)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_below(bound: int) -> list[int]:
    if bound <= 2:
        return []
    sieve = bytearray([1]) * bound
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(abs(n)).values())


def v2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("v2(0) is infinite")
    return (n & -n).bit_length() - 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise ValueError(f"kronecker symbol needs n >= 1, got {n}")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@functools.lru_cache(maxsize=None)
def a_p(p: int) -> int:
    """Trace of Frobenius p + 1 - #E(F_p); 0 at the additive prime 3."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 3:
        return 0
    if p == 2:
        affine = sum(1 for x in range(2) for y in range(2)
                     if (y * y + y - x ** 3 - 2) % 2 == 0)
        return p - affine
    # (2y+1)^2 = 4x^3 + 9, so each x contributes 1 + (4x^3+9 / p) points
    squares = bytearray(p)
    for y in range(p):
        squares[y * y % p] = 1
    total = 0
    for x in range(p):
        r = (4 * x * x * x + 9) % p
        if r:
            total += 1 if squares[r] else -1
    return -total


@functools.lru_cache(maxsize=None)
def _a_prime_power(p: int, k: int) -> int:
    if k == 0:
        return 1
    ap = a_p(p)
    if p == CURVE.bad_prime:
        return ap ** k
    if k == 1:
        return ap
    return ap * _a_prime_power(p, k - 1) - p * _a_prime_power(p, k - 2)


def a_n(n: int) -> int:
    """Fourier coefficient a_n of the newform attached to E."""
    if n < 1:
        raise ValueError(f"a_n needs n >= 1, got {n}")
    out = 1
    for p, k in factorize(n).items():
        out *= _a_prime_power(p, k)
    return out


def sigma(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def fundamental_discriminant(t: int) -> int:
    return t if t % 4 == 1 else 4 * t


def class_number(t: int) -> int:
    """Class number of Q(sqrt(t)) for squarefree t < 0, by counting reduced forms."""
    if t >= 0:
        raise ValueError(f"class_number needs t < 0, got {t}")
    if not is_squarefree(t):
        raise ValueError(f"{t} is not squarefree")
    D = fundamental_discriminant(t)
    count = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            count += 1
        a += 1
    return count


@functools.lru_cache(maxsize=None)
def _powers_of_5(k: int) -> dict[int, int]:
    mod = 1 << k
    table = {}
    x = 1
    for e in range(1 << (k - 2)):
        table[x] = e
        table[(-x) % mod] = e
        x = x * 5 % mod
    return table


def discrete_log_pm5(x: int, k: int) -> int:
    """The e in [0, 2^(k-2)) with x = +-5^e mod 2^k."""
    if k < 3:
        raise ValueError(f"modulus 2^{k} too small, need k >= 3")
    if x % 2 == 0:
        raise ValueError(f"{x} is even")
    return _powers_of_5(k)[x % (1 << k)]


def is_in_S(p: int) -> bool:
    """Primes p = 7 mod 12 with a_p odd."""
    return p % 12 == 7 and is_prime(p) and a_p(p) % 2 == 1
