"""
Exact modular symbols for Gamma_0(N), N = 243.

A Manin symbol (c:d) stands for g{0, oo} where g = [[a, b], [c, d]] is in
SL_2(Z).  The plus-quotient is cut out by the 2-term, 3-term and star
relations; the newform of E is isolated by requiring eigenvalue a_l under
the transposed Hecke operators.  Values of the resulting functional on
paths {0, k/t} are the real parts S(k/t), normalised so that the path
{oo, 0} (whose period is L(E,1)) carries L(E,1)/Omega_E = 1/3.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

from .linalg import integral_primitive, nullspace
from .numth import CURVE, a_p

log = logging.getLogger(__name__)

DEFAULT_CUT = (2, 5, 7)
FALLBACK_CUT = (11, 13)


class EngineError(RuntimeError):
    pass


class ManinSymbolSpace:
    """Normalised representatives of P^1(Z/N) with index lookup."""

    def __init__(self, N: int):
        self.N = N
        units = [u for u in range(1, N) if math.gcd(u, N) == 1] if N > 1 else [0]
        self.symbols: list[tuple[int, int]] = []
        # flat lookup c*N + d -> index, -1 where gcd(c, d, N) > 1
        self._index = [-1] * (N * N)
        for c in range(N):
            for d in range(N):
                if self._index[c * N + d] != -1 or math.gcd(math.gcd(c, d), N) != 1:
                    continue
                i = len(self.symbols)
                self.symbols.append((c, d))
                for u in units:
                    self._index[(u * c % N) * N + u * d % N] = i

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, c: int, d: int) -> int:
        N = self.N
        i = self._index[(c % N) * N + d % N]
        if i < 0:
            raise ValueError(f"({c}:{d}) is not in P^1(Z/{N})")
        return i

    def relations(self) -> Iterator[dict[int, int]]:
        """2-term, 3-term and star (plus-part) relations as sparse rows."""
        for i, (c, d) in enumerate(self.symbols):
            j = self.index(d, -c)
            yield _row((i, 1), (j, 1))
            j1 = self.index(d, -c - d)
            j2 = self.index(-c - d, c)
            yield _row((i, 1), (j1, 1), (j2, 1))
            yield _row((i, 1), (self.index(-c, d), -1))


def _row(*entries: tuple[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for j, v in entries:
        out[j] = out.get(j, 0) + v
    return {j: v for j, v in out.items() if v}


def _round_half_away(a: int, b: int) -> int:
    q = Fraction(a, b)
    r = math.floor(abs(q) + Fraction(1, 2))
    return r if q >= 0 else -r


def heilbronn_cremona(p: int) -> list[tuple[int, int, int, int]]:
    """Cremona's Heilbronn matrices (a, b, c, d) of determinant p, p prime."""
    if p == 2:
        return [(1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2)]
    out = [(1, 0, 0, p)]
    for r in range(-(p // 2), p // 2 + 1):
        x1, x2, y1, y2, a, b = p, -r, 0, 1, -p, r
        out.append((x1, x2, y1, y2))
        while b:
            q = _round_half_away(a, b)
            a, b = -b, a - b * q
            x1, x2 = x2, q * x2 - x1
            y1, y2 = y2, q * y2 - y1
            out.append((x1, x2, y1, y2))
    return out


def path_symbols(k: int, t: int) -> Iterator[tuple[int, int]]:
    """Manin symbols (c, d) summing to {0, k/t}, from the convergents of k/t.

    The j-th unimodular piece {p_(j-1)/q_(j-1), p_j/q_j} is the symbol
    ((-1)^(j-1) q_j : q_(j-1)); k/t must be in lowest terms with t > 0.
    """
    q_prev, q_cur = 1, 0
    sign = 1
    yield 0, 1
    a, b = k, t
    while b:
        aq, r = divmod(a, b)
        a, b = b, r
        q_prev, q_cur = q_cur, aq * q_cur + q_prev
        sign = -sign
        yield sign * q_cur, q_prev


@dataclass
class SymbolEngine:
    """Evaluator for S(k/t); immutable apart from the value cache."""

    space: ManinSymbolSpace
    phi: list[Fraction]
    cut_primes: tuple[int, ...]
    plus_dimension: int = 0
    cut_dimension: int = 0
    _weights: list[int] = field(repr=False, default_factory=list)
    _denominator: int = field(repr=False, default=1)
    # dict get/set are atomic under the GIL; a race only recomputes a value
    _cache: dict[tuple[int, int], int] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        den = 1
        for x in self.phi:
            den = den * x.denominator // math.gcd(den, x.denominator)
        self._denominator = den
        self._weights = [int(x * den) for x in self.phi]

    @property
    def N(self) -> int:
        return self.space.N

    def evaluate_symbol(self, c: int, d: int) -> Fraction:
        return self.phi[self.space.index(c, d)]

    def evaluate_path(self, k: int, t: int) -> Fraction:
        """Functional on {0, k/t}, no symmetry shortcuts."""
        g = math.gcd(k, t)
        k, t = k // g, t // g
        if t < 0:
            k, t = -k, -t
        idx = self.space.index
        w = self._weights
        total = sum(w[idx(c, d)] for c, d in path_symbols(k, t))
        return Fraction(total, self._denominator)

    def two_s(self, k: int, t: int) -> int:
        """2*S(k/t) as an integer."""
        if t == 0:
            raise ValueError("denominator t = 0")
        g = math.gcd(k, t)
        k, t = k // g, t // g
        if t < 0:
            k, t = -k, -t
        if math.gcd(t, self.N) != 1:
            raise ValueError(f"denominator {t} is not coprime to the level {self.N}")
        r = k % t
        key = (t, min(r, t - r))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        val = 2 * self.evaluate_path(key[1], t)
        if val.denominator != 1:
            raise EngineError(f"2*S({key[1]}/{t}) = {val} is not an integer")
        out = int(val)
        self._cache[key] = out
        return out

    def s_value(self, k: int, t: int) -> Fraction:
        return Fraction(self.two_s(k, t), 2)

    def hecke_eigenvalue(self, ell: int) -> Fraction:
        """Recover a_l from phi o T_l = a_l * phi on a symbol where phi != 0."""
        hs = heilbronn_cremona(ell)
        idx = self.space.index
        for i, (c, d) in enumerate(self.space.symbols):
            if self.phi[i]:
                image = sum(self.phi[idx(c * a + d * cc, c * b + d * dd)]
                            for a, b, cc, dd in hs)
                return image / self.phi[i]
        raise EngineError("zero functional")

    # on-disk cache: one "t,k,twoS" record per line

    def load_cache(self, path: str | Path) -> int:
        p = Path(path)
        if not p.exists():
            return 0
        n = 0
        with p.open() as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                t, k, two_s = (int(x) for x in line.split(","))
                r = k % t
                key = (t, min(r, t - r))
                old = self._cache.get(key)
                if old is not None and old != two_s:
                    raise EngineError(f"cache conflict at {k}/{t}: {old} vs {two_s}")
                self._cache[key] = two_s
                n += 1
        return n

    def dump_cache(self, path: str | Path) -> int:
        items = sorted(self._cache.items())
        with Path(path).open("w") as fh:
            for (t, k), two_s in items:
                fh.write(f"{t},{k},{two_s}\n")
        return len(items)


def _hecke_images(space: ManinSymbolSpace, ell: int) -> list[list[int]]:
    hs = heilbronn_cremona(ell)
    idx = space.index
    return [[idx(c * a + d * cc, c * b + d * dd) for a, b, cc, dd in hs]
            for c, d in space.symbols]


def _eigen_cut(space: ManinSymbolSpace, basis: list[list[int]],
               primes: Iterable[int]) -> list[list[Fraction]]:
    """Combinations y of the basis functionals with (sum y_k b_k) o T_l = a_l (sum y_k b_k)."""
    dim = len(basis)
    rows = []
    for ell in primes:
        al = a_p(ell)
        images = _hecke_images(space, ell)
        for i, img in enumerate(images):
            row = {}
            for k, b in enumerate(basis):
                v = sum(b[j] for j in img) - al * b[i]
                if v:
                    row[k] = v
            if row:
                rows.append(row)
    return nullspace(rows, dim)


def build_engine(N: int = CURVE.conductor, cut: tuple[int, ...] = DEFAULT_CUT) -> SymbolEngine:
    space = ManinSymbolSpace(N)
    log.info("P^1(Z/%d) has %d symbols", N, len(space))
    plus_dual = [integral_primitive(v) for v in nullspace(space.relations(), len(space))]
    log.info("plus quotient has dimension %d", len(plus_dual))

    primes = [ell for ell in cut if N % ell]
    ys = _eigen_cut(space, plus_dual, primes)
    if len(ys) != 1:
        log.warning("cut by %s leaves dimension %d, adding %s", primes, len(ys), FALLBACK_CUT)
        primes += [ell for ell in FALLBACK_CUT if N % ell]
        ys = _eigen_cut(space, plus_dual, primes)
    if len(ys) != 1:
        raise EngineError(f"Hecke-cut eigenspace has dimension {len(ys)}, expected 1")

    y = ys[0]
    phi = [sum((y[k] * b[i] for k, b in enumerate(plus_dual)), Fraction(0))
           for i in range(len(space))]
    # the path {oo, 0} is minus the identity symbol (0:1) and pairs to L(E,1)
    on_infinity_to_zero = -phi[space.index(0, 1)]
    if on_infinity_to_zero == 0:
        raise EngineError("functional vanishes on {oo, 0}; cannot normalise")
    scale = CURVE.l_ratio / on_infinity_to_zero
    phi = [x * scale for x in phi]
    return SymbolEngine(space=space, phi=phi, cut_primes=tuple(primes),
                        plus_dimension=len(plus_dual), cut_dimension=len(ys))


_DEFAULT: SymbolEngine | None = None


def default_engine() -> SymbolEngine:
    """Process-wide engine for level 243, built on first use."""
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = build_engine()
    return _DEFAULT
