from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from mt243.grpring import (GroupRingElement, d_element, format_poly, lambda_invariant,
                           multiply, mu_invariant, norm_lift, project, trace_element)


@st.composite
def elements(draw, min_level=0, max_level=6, level=None):
    n = level if level is not None else draw(st.integers(min_level, max_level))
    cs = draw(st.lists(st.integers(-20, 20), min_size=1 << n, max_size=1 << n))
    return GroupRingElement(n, cs)


@st.composite
def element_pairs(draw):
    n = draw(st.integers(0, 6))
    return draw(elements(level=n)), draw(elements(level=n))


def G(*cs):
    n = len(cs).bit_length() - 1
    return GroupRingElement(n, cs)


def test_construction_checks_length():
    with pytest.raises(ValueError):
        GroupRingElement(2, [1, 2, 3])
    with pytest.raises(ValueError):
        GroupRingElement(-1, [])


def test_mu_examples():
    assert mu_invariant(G(2, 2)) == 1
    assert mu_invariant(G(0, 0, 0, 4)) == 2
    assert mu_invariant(d_element(3)) == 0


def test_mu_lambda_reject_zero_and_fractions():
    with pytest.raises(ValueError):
        mu_invariant(GroupRingElement.zero(2))
    with pytest.raises(ValueError):
        lambda_invariant(GroupRingElement.zero(2))
    with pytest.raises(ValueError):
        mu_invariant(GroupRingElement(1, [Fraction(1, 2), 1]))


def test_lambda_of_d():
    for n in range(1, 8):
        assert lambda_invariant(d_element(n)) == 1 << (n - 1)


def test_lambda_of_trace_is_top_degree():
    # sum of all gamma^j = u^(2^n - 1) mod 2
    for n in range(0, 7):
        assert lambda_invariant(trace_element(n)) == (1 << n) - 1


def test_lambda_by_binomial_expansion():
    # reference: expand sum c_j (1+u)^j with exact binomials, then reduce mod 2
    from math import comb
    g = G(0, 0, -1, -1, -2, -2, -1, -1)
    size = g.order
    u = [sum(int(c) * comb(j, i) for j, c in enumerate(g.coeffs)) % 2 for i in range(size)]
    assert lambda_invariant(g) == u.index(1) == 5


def test_d_and_trace():
    assert d_element(1) == G(1, 1)
    assert trace_element(2) == G(1, 1, 1, 1)
    with pytest.raises(ValueError):
        d_element(0)


def test_project_examples():
    assert project(G(0, 0, -1, -1)) == G(-1, -1)
    for n in range(1, 6):
        assert project(trace_element(n)) == trace_element(n - 1).scale(2)
    assert project(G(1, 0)) == G(1)
    with pytest.raises(ValueError):
        project(G(1))


def test_norm_lift_example():
    assert norm_lift(G(-1)) == G(-1, -1)


def test_multiply_examples():
    for n in range(1, 6):
        g = GroupRingElement.monomial(n, 1)
        ginv = GroupRingElement.monomial(n, (1 << n) - 1)
        assert g * ginv == GroupRingElement.monomial(n, 0)
        assert multiply(d_element(n), d_element(n)) == d_element(n).scale(2)
    with pytest.raises(ValueError):
        multiply(G(1, 1), G(1))


def test_format():
    assert str(G(0, 0, -1, -1)) == "-g^2-g^3"
    assert str(G(0, 0, 0, 0)) == "0"
    assert format_poly([1, 2], "z") == "1+2*z"
    assert str(G(0, 0, 0, 0, 2, 0, 0, 0)) == "2*g^4"


@settings(max_examples=150, deadline=None)
@given(element_pairs())
def test_mu_lambda_of_product(pair):
    f, g = pair
    assume(not f.is_zero() and not g.is_zero())
    fg = f * g
    if fg.is_zero():
        return
    assert mu_invariant(fg) >= mu_invariant(f) + mu_invariant(g)
    if mu_invariant(fg) == 0:
        assert lambda_invariant(fg) == lambda_invariant(f) + lambda_invariant(g)


@settings(max_examples=150, deadline=None)
@given(elements(min_level=1))
def test_projection_laws(g):
    assume(not g.is_zero())
    pg = project(g)
    if pg.is_zero():
        return
    assert mu_invariant(pg) >= mu_invariant(g)
    if mu_invariant(pg) == mu_invariant(g):
        assert lambda_invariant(pg) == lambda_invariant(g)


@settings(max_examples=150, deadline=None)
@given(elements(max_level=5))
def test_norm_lift_laws(f):
    assume(not f.is_zero())
    nf = norm_lift(f)
    assert mu_invariant(nf) == mu_invariant(f)
    assert lambda_invariant(nf) == (1 << f.level) + lambda_invariant(f)


@settings(max_examples=150, deadline=None)
@given(elements(max_level=5))
def test_project_after_lift_doubles(f):
    assert project(norm_lift(f)) == f.scale(2)


@settings(max_examples=150, deadline=None)
@given(elements(min_level=1))
def test_lift_after_project_multiplies_by_d(g):
    assert norm_lift(project(g)) == d_element(g.level) * g
