import random
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logtev.blowup import (
    Blp2Status,
    ExcessRecord,
    closed_formula_blp2,
    closed_formula_conflict,
    excess_contribution,
    excess_corrected_logtev,
    integral_blp2,
    matches_excess_pattern,
    status_blp2,
    symbolic_integral_blp2,
)
from logtev.errors import ConfigurationError
from logtev.gamma import GammaBlp2, validate_blp2
from logtev.nilring import NilPoly
from logtev.sweep import enumerate_blp2
from logtev.tower import ZetaPoly
from oracles import poly_binom, sympy_integral_blp2

THEOREM = GammaBlp2(d=6, mu=[(1,), (1,), (1, 1, 1, 1), (5,), (5,)])
CONFLICT = GammaBlp2(d=3, mu=[(), (3,), (), (1, 1, 1), ()])

POOL = list(enumerate_blp2(8, 3))


def swap(g):
    mu = g.mu
    return GammaBlp2(d=g.d, mu=[mu[1], mu[0], mu[2], mu[4], mu[3]])


def generalized_product(g):
    d = validate_blp2(g)
    m1, m2, _, m4, m5 = d.m_parts
    mult = prod(factorial(len(p)) for p in g.mu) * prod(x for p in g.mu for x in p)
    return mult * poly_binom(d.n - 1 - m5, m1) * poly_binom(d.n - 1 - m4, m2)


def test_theorem_data():
    assert integral_blp2(THEOREM) == 5400
    assert closed_formula_blp2(THEOREM) == 24 * 25 * 3 * 3
    assert sympy_integral_blp2(THEOREM) == 5400


def test_theorem_data_is_uncertified():
    rep = status_blp2(THEOREM)
    assert rep.status is Blp2Status.UNCERTIFIED
    assert rep.logtev is None
    assert "m_1+m_3 <= n-1" in rep.diagnostics["failed"]
    assert "warning" in rep.diagnostics


def test_excess_correction():
    rep = excess_corrected_logtev(THEOREM)
    assert rep.status is Blp2Status.EXCESS_CORRECTED
    assert rep.integral == 5400
    assert rep.excess == ExcessRecord(component_count=120, per_component=25, corrected=2400)
    assert rep.logtev == 2400
    assert rep.diagnostics["uncorrected_status"] == "UNCERTIFIED"


def test_excess_correction_is_fan_symmetric():
    assert excess_corrected_logtev(swap(THEOREM)) == excess_corrected_logtev(THEOREM)


def test_excess_pattern_is_a_single_gamma():
    # m_3 = n - 1 together with m = m_3 + 4 forces m_3 = 4, n = 5, d = 6
    matches = [g for g in enumerate_blp2(8, 5) if matches_excess_pattern(g)]
    assert matches == [THEOREM]


def test_excess_pattern_rejects_other_data():
    for g in (CONFLICT, GammaBlp2(d=2, mu=[(1,), (1,), (), (1,), (1,)])):
        assert not matches_excess_pattern(g)
        with pytest.raises(ConfigurationError):
            excess_corrected_logtev(g)


def test_per_component_series():
    # coefficient of H_a H_b in 1/((1 - 5 H_a)(1 - 5 H_b)) over two generators
    one = ZetaPoly.one(2)
    factors = [one - ZetaPoly.from_nil(NilPoly.linear({0: 5}, 2)),
               one - ZetaPoly.from_nil(NilPoly.linear({1: 5}, 2))]
    assert excess_contribution(one, factors, [0, 1]) == 25


def test_nonvanishing_gate_examples():
    g = GammaBlp2(d=2, mu=[(1, 1), (), (), (), (1, 1)])
    d = validate_blp2(g)
    m1, _, _, _, m5 = d.m_parts
    assert m1 + m5 > d.n - 1
    assert integral_blp2(g) == closed_formula_blp2(g) == 0
    assert status_blp2(g).status is Blp2Status.CERTIFIED_ZERO
    g = GammaBlp2(d=2, mu=[(), (1, 1), (), (1, 1), ()])
    assert closed_formula_blp2(g) == 0
    assert status_blp2(g).logtev == 0


def test_empty_side_partitions():
    # m_1 = 0 turns one binomial factor into C(n-1-m_5, 0) = 1
    g = GammaBlp2(d=2, mu=[(), (1,), (1,), (2,), (1,)])
    d = validate_blp2(g)
    assert d.m_parts[0] == 0
    expect = prod(factorial(len(p)) for p in g.mu) * prod(x for p in g.mu for x in p)
    assert closed_formula_blp2(g) == expect * poly_binom(d.n - 1 - d.m_parts[3], d.m_parts[1]) == 2
    # m_1 = m_5 = 0 forces mu_3 empty and m_2 + m_4 = m > n - 1, so the value is 0
    g = GammaBlp2(d=2, mu=[(), (1, 1), (), (1, 1), ()])
    assert closed_formula_blp2(g) == integral_blp2(g) == 0


def test_certified_equal():
    g = GammaBlp2(d=2, mu=[(1,), (1,), (), (1,), (1,)])
    rep = status_blp2(g)
    assert rep.status is Blp2Status.CERTIFIED_EQUAL
    assert rep.logtev == rep.integral == closed_formula_blp2(g) == 1


def test_degenerate():
    g = GammaBlp2(d=1, mu=[(1,), (), (), (), (1,)])
    rep = status_blp2(g)
    assert validate_blp2(g).n == 2
    assert rep.status is Blp2Status.DEGENERATE
    assert rep.logtev is None


# the closed formula's zero branch


def test_conflict_example():
    d = validate_blp2(CONFLICT)
    assert d.m_parts == (0, 1, 0, 3, 0) and d.n == 3
    assert closed_formula_conflict(d)
    assert closed_formula_blp2(CONFLICT) == 0
    # the integral itself is -18; an independent sympy computation agrees
    assert integral_blp2(CONFLICT) == -18
    assert sympy_integral_blp2(CONFLICT) == -18
    rep = status_blp2(CONFLICT)
    assert rep.status is Blp2Status.CERTIFIED_ZERO
    assert rep.logtev == 0
    assert not rep.diagnostics["integral_matches_closed_formula"]
    assert "known range" in rep.diagnostics["cross_check"]


def test_integral_is_generalized_product_everywhere():
    for g in POOL:
        assert integral_blp2(g) == generalized_product(g)


def test_closed_formula_agrees_outside_conflict_range():
    conflicts = 0
    for g in POOL:
        d = validate_blp2(g)
        if closed_formula_conflict(d):
            conflicts += 1
            # never affects the certified value
            assert status_blp2(g).status in (Blp2Status.CERTIFIED_ZERO, Blp2Status.DEGENERATE)
        else:
            assert integral_blp2(g) == closed_formula_blp2(g)
    assert conflicts > 0


def test_fused_route_matches_pushforward():
    rng = random.Random(8)
    for g in rng.sample(POOL, 60):
        assert symbolic_integral_blp2(g, fused=False) == symbolic_integral_blp2(g)


def test_random_instances_match_sympy():
    rng = random.Random(9)
    small = [g for g in POOL if validate_blp2(g).m <= 6]
    for g in rng.sample(small, 12):
        assert sympy_integral_blp2(g) == integral_blp2(g)


def test_certified_equal_matches_product():
    for g in POOL:
        rep = status_blp2(g)
        d = validate_blp2(g)
        m1, m2, _, m4, m5 = d.m_parts
        if rep.status is Blp2Status.CERTIFIED_EQUAL and m1 + m5 <= d.n - 1 and m2 + m4 <= d.n - 1:
            assert rep.logtev == closed_formula_blp2(g)


# symmetries


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POOL), st.randoms(use_true_random=False))
def test_fan_relabeling_and_part_order(g, rnd):
    other = swap(g)
    assert integral_blp2(other) == integral_blp2(g)
    assert closed_formula_blp2(other) == closed_formula_blp2(g)
    assert status_blp2(other) == status_blp2(g)
    shuffled = GammaBlp2(d=g.d, mu=[tuple(rnd.sample(p, len(p))) for p in g.mu])
    assert integral_blp2(shuffled) == integral_blp2(g)
