"""
Registry of reference checks run by ``mt243 verify-paper``.

Each check compares a computed quantity with a published or independently
derived value and reports both, so a failing line shows what went wrong.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import analysis, numth
from .cyclotomic import CyclotomicNumber, val2
from .grpring import (GroupRingElement, d_element, lambda_invariant, mu_invariant,
                      norm_lift, project, trace_element)
from .mazur_tate import (Character, char_eval, specialize, specialize_twisted,
                         xi_cyclotomic)
from .modsym import SymbolEngine

MODULES = ("numth", "modsym", "grpring", "mazur_tate", "analysis")


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    expected: Any
    compute: Callable[[SymbolEngine, int], Any]
    level: int = 0  # cyclotomic level the check needs; 0 if none


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    expected: str
    actual: str
    passed: bool

    def as_dict(self) -> dict:
        return {"module": self.module, "name": self.name, "expected": self.expected,
                "actual": self.actual, "passed": self.passed}


def _fmt(x: Any) -> str:
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _sides_equal(pair: tuple) -> bool:
    lhs, rhs = pair
    return lhs == rhs


def _parity_row(r: analysis.TwistLReport) -> tuple[str, bool]:
    return r.parity, r.euler_identity_holds


def _registry() -> list[Check]:
    out: list[Check] = []

    def add(module, name, expected, compute, level=0):
        out.append(Check(module, name, expected, compute, level))

    # numth
    add("numth", "kronecker(-62, 7)", 1, lambda e, w: numth.kronecker(-62, 7))
    add("numth", "kronecker(2, 7)", 1, lambda e, w: numth.kronecker(2, 7))
    add("numth", "a_2", 0, lambda e, w: numth.a_p(2))
    add("numth", "a_3", 0, lambda e, w: numth.a_p(3))
    add("numth", "a_7", 5, lambda e, w: numth.a_p(7))
    add("numth", "a_4", -2, lambda e, w: numth.a_n(4))
    add("numth", "a_217", -35, lambda e, w: numth.a_n(217))
    for q, h in ((7, 1), (43, 1), (103, 5), (127, 5), (631, 13)):
        add("numth", f"h(-{q})", h, lambda e, w, q=q: numth.class_number(-q))
    add("numth", "h(-1302)", 16, lambda e, w: numth.class_number(-1302))
    add("numth", "h(-31)", 3, lambda e, w: numth.class_number(-31))
    add("numth", "dlog_5(7 mod 16)", 2, lambda e, w: numth.discrete_log_pm5(7, 4))
    add("numth", "7, 31 in S; 13 not", (True, True, False),
        lambda e, w: tuple(numth.is_in_S(p) for p in (7, 31, 13)))

    # modsym
    add("modsym", "#P^1(Z/243)", 324, lambda e, w: len(e.space))
    add("modsym", "functional on {oo,0}", Fraction(1, 3), lambda e, w: -e.evaluate_symbol(0, 1))
    add("modsym", "T_2 eigenvalue", 0, lambda e, w: e.hecke_eigenvalue(2))
    add("modsym", "S(0)", 0, lambda e, w: e.s_value(0, 1))
    add("modsym", "S(1/2)", -1, lambda e, w: e.s_value(1, 2))
    add("modsym", "S(1/4), S(3/4)", (Fraction(-1, 2),) * 2,
        lambda e, w: (e.s_value(1, 4), e.s_value(3, 4)))
    add("modsym", "S(x/8), x odd", (0, 0, 0, 0),
        lambda e, w: tuple(e.s_value(x, 8) for x in (1, 3, 5, 7)))
    add("modsym", "S(x/16), x = 1,3,5,7", (0, Fraction(-1, 2), 0, Fraction(-1, 2)),
        lambda e, w: tuple(e.s_value(x, 16) for x in (1, 3, 5, 7)))
    h = Fraction(-1, 2)
    add("modsym", "S(x/32), x = 1..15 odd", (0, h, 0, h, h, -1, h, -1),
        lambda e, w: tuple(e.s_value(x, 32) for x in range(1, 16, 2)))
    for M in (2, 4, 5, 7, 35):
        add("modsym", f"divisor-sum identity, M={M}", True,
            lambda e, w, M=M: _sides_equal(analysis.divisor_sum_identity(e, M)))

    # grpring
    xi2 = lambda e: xi_cyclotomic(e, 2).element
    xi3 = lambda e: xi_cyclotomic(e, 3).element
    add("grpring", "mu, lambda of xi_(Q_2)", (0, 1),
        lambda e, w: (mu_invariant(xi2(e)), lambda_invariant(xi2(e))), 2)
    add("grpring", "mu, lambda of xi_(Q_3)", (0, 5),
        lambda e, w: (mu_invariant(xi3(e)), lambda_invariant(xi3(e))), 3)
    add("grpring", "lambda(d_n), n = 1..6", tuple(1 << (n - 1) for n in range(1, 7)),
        lambda e, w: tuple(lambda_invariant(d_element(n)) for n in range(1, 7)))
    add("grpring", "project(xi_(Q_2))", "-1-g", lambda e, w: str(project(xi2(e))), 2)
    add("grpring", "project(trace_3) = 2 trace_2", True,
        lambda e, w: project(trace_element(3)) == trace_element(2).scale(2))
    add("grpring", "norm_lift(-1)", "-1-g",
        lambda e, w: str(norm_lift(GroupRingElement(0, [-1]))))

    # mazur_tate
    add("mazur_tate", "xi_(Q_1)", "0", lambda e, w: str(xi_cyclotomic(e, 1).element), 1)
    add("mazur_tate", "xi_(Q_2)", "-g^2-g^3", lambda e, w: str(xi_cyclotomic(e, 2).element), 2)
    add("mazur_tate", "xi_(Q_3)", "-g^2-g^3-2*g^4-2*g^5-g^6-g^7",
        lambda e, w: str(xi_cyclotomic(e, 3).element), 3)
    add("mazur_tate", "psi_3(5)", "z", lambda e, w: str(char_eval(Character.psi(3), 5)))
    add("mazur_tate", "psi_2(xi_(Q_2))", "1+z", lambda e, w: str(specialize(xi_cyclotomic(e, 2))), 2)

    def psi3_closed_form(e, w):
        z = CyclotomicNumber.zeta_power(3, 1)
        one = CyclotomicNumber.rational(3, 1)
        rhs = -(z * z) * (one + z) * (one + z * z) * (one + z * z)
        return specialize(xi_cyclotomic(e, 3)) == rhs

    add("mazur_tate", "psi_3(xi_(Q_3)) = -z^2(1+z)(1+z^2)^2", True, psi3_closed_form, 3)
    for n in range(2, 7):
        add("mazur_tate", f"v(psi_{n}(xi_(Q_{n})))", analysis.expected_valuation(n),
            lambda e, w, n=n: val2(specialize(xi_cyclotomic(e, n))), n)
        add("mazur_tate", f"lambda(xi_(Q_{n})) = q_{n}", analysis.q_sequence(n),
            lambda e, w, n=n: lambda_invariant(xi_cyclotomic(e, n).element), n)
    for m in (217, 721):
        add("mazur_tate", f"rho_1 specialisation, m={m}", "0",
            lambda e, w, m=m: str(specialize_twisted(e, 1, m, w)), 1)
        for n in (2, 3, 4):
            add("mazur_tate", f"v(rho_{n}), m={m}", analysis.expected_valuation(n),
                lambda e, w, n=n, m=m: val2(specialize_twisted(e, n, m, w)), n)

    # analysis
    add("analysis", "q_1..q_6", (1, 1, 5, 5, 13, 21),
        lambda e, w: tuple(analysis.q_sequence(n) for n in range(1, 7)))
    for M in (2, 5, 7, 35, 217):
        add("analysis", f"P_(1,{M}) squarefree formula", analysis.squarefree_trivial_formula(M),
            lambda e, w, M=M: analysis.trivial_character_sum(e, M))
    for M in (4, 8, 16, 25, 49):
        add("analysis", f"P_(1,{M}) prime-power formula", analysis.prime_power_trivial_formula(M),
            lambda e, w, M=M: analysis.trivial_character_sum(e, M))
    for row in analysis.REFERENCE_PAIRS:
        m = row[0]
        add("analysis", f"L(E^({m}),1)/Omega odd, mod-2 identity", ("odd", True),
            lambda e, w, m=m: _parity_row(analysis.algebraic_L_quadratic(e, m)))
        add("analysis", f"rho_1 vanishes, m={m}", True,
            lambda e, w, m=m: specialize_twisted(e, 1, m, w).is_zero(), 1)
    add("analysis", "level-3 congruences and v = 5/4, m=217", True,
        lambda e, w: analysis.appendix_a_report(e, 217, w).all_hold, 3)
    add("analysis", "k-table over x = +-5k, +-15k", True, lambda e, w: analysis.lemma_ap3_check(e))
    add("analysis", "pair search < 300", [(217, -35, 31, 7, 1, 16)],
        lambda e, w: [r.as_row() for r in analysis.search_pairs(300, w)])
    add("analysis", "pair search < 5000 contains reference rows", [],
        lambda e, w: analysis.compare_with_reference(analysis.search_pairs(5000, w))[0])
    return out


def run_checks(engine: SymbolEngine, only: str | None = None, max_level: int = 12,
               workers: int = 1) -> list[CheckResult]:
    if only is not None and only not in MODULES:
        raise ValueError(f"unknown module {only!r}; choose from {', '.join(MODULES)}")
    results = []
    for chk in _registry():
        if only and chk.module != only:
            continue
        if chk.level > max_level:
            continue
        try:
            actual = chk.compute(engine, workers)
            ok = actual == chk.expected
        except Exception as exc:  # a crashing check is a failing check
            actual, ok = f"error: {exc}", False
        results.append(CheckResult(chk.module, chk.name, _fmt(chk.expected), _fmt(actual), ok))
    return results


def extra_pairs(workers: int = 1) -> list[tuple]:
    """Qualifying rows below 5000 that the reference table does not list."""
    return analysis.compare_with_reference(analysis.search_pairs(5000, workers))[1]
