import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logtev import nilring
from logtev.errors import ContextError, RankError, TruncationError, ValidationError
from logtev.gamma import GammaXrsa
from logtev.nilring import NilPoly
from logtev.tower import (
    BundleData,
    ZetaPoly,
    base_classes,
    collapse_zeta,
    pushforward_zeta,
    segre_e2_xrsa,
    segre_factors,
    segre_from_roots,
)
from oracles import random_nil

SAMPLE = GammaXrsa(r=1, s=1, a=1, b=1, c=2, mu=[(1,), (1,), (1,), (2,)])


def H(i, ngens):
    return NilPoly.generator(i, ngens)


def test_rank_one_segre():
    b = segre_from_roots([-H(0, 3)])
    assert b.rank == 1
    assert b.segre_class(0) == 1
    assert b.segre_class(1) == H(0, 3)
    assert b.segre_class(2) == 0


def test_rank_two_segre():
    b = segre_from_roots([-H(0, 2), -H(1, 2)])
    assert b.segre_class(1) == H(0, 2) + H(1, 2)
    assert b.segre_class(2) == NilPoly.monomial([0, 1], 2)


def test_sample_first_bundle_lives_on_four_generators():
    ngens, layout, classes = base_classes(SAMPLE.mu)
    assert ngens == 4
    assert layout == [[0], [1], [2], [3]]
    assert classes[3] == 2 * H(3, 4)
    b = segre_from_roots([-classes[1], -classes[2]])
    assert b.ngens == 4
    expect = nilring.invert_unit((1 - classes[1]) * (1 - classes[2]))
    assert sum(b.segre, NilPoly.zero(4)) == expect


def test_segre_errors():
    with pytest.raises(RankError):
        segre_from_roots([])
    with pytest.raises(RankError):
        segre_factors([])
    with pytest.raises(ValueError):
        segre_from_roots([NilPoly.one(2)])


def test_segre_beyond_computed_range():
    b = segre_from_roots([-H(0, 4), -H(1, 4)], max_degree=1)
    with pytest.raises(TruncationError):
        b.segre_class(2)
    # beyond the base dimension a piece is zero without being computed
    assert b.segre_class(5) == 0
    assert b.segre_class(-1) == 0


def test_e2_pieces_for_sample():
    pieces = segre_e2_xrsa(SAMPLE, 2)
    ngens, _, classes = base_classes(SAMPLE.mu)
    h0, h3 = classes[0], classes[3]
    assert pieces[0] == ZetaPoly.one(ngens)
    # degree-2 piece of 1/((1 - H0 - z)(1 - H3)) is (H0 + z)^2 + (H0 + z) H3 + H3^2
    assert pieces[2].coefficient(2) == 1
    assert pieces[2].coefficient(1) == 2 * h0 + h3
    assert pieces[2].coefficient(0) == nilring.pow(h0, 2) + h0 * h3 + nilring.pow(h3, 2)
    for t, piece in enumerate(pieces):
        assert piece.is_homogeneous(t)


def test_e2_s_equal_one_matches_binomial_expansion():
    g = GammaXrsa(r=2, s=1, a=2, b=1, c=3, mu=[(1,), (1,), (1,), (1,), (2, 1)])
    ngens, _, classes = base_classes(g.mu)
    shifted = ZetaPoly.from_nil(classes[0]) + ZetaPoly.zeta(ngens, 1, g.a)
    last = ZetaPoly.from_nil(classes[g.r + 2])
    for t, piece in enumerate(segre_e2_xrsa(g, 4)):
        expect = ZetaPoly.zero(ngens)
        for k0 in range(t + 1):
            expect = expect + shifted.pow(k0) * last.pow(t - k0)
        assert piece == expect


def test_e2_without_twist_is_zeta_free():
    g = GammaXrsa(r=1, s=2, a=0, b=2, c=2, mu=[(2,), (2,), (2,), (2,), (1, 1)])
    ngens, _, classes = base_classes(g.mu)
    pieces = segre_e2_xrsa(g, ngens)
    plain = segre_from_roots([-classes[0], -classes[3], -classes[4]])
    for t, piece in enumerate(pieces):
        assert piece.zeta_degree() <= 0
        assert piece.at_zeta_zero() == plain.segre_class(t)


def test_e2_rejects_invalid_gamma():
    with pytest.raises(ValidationError):
        segre_e2_xrsa(GammaXrsa(r=1, s=1, a=1, b=1, c=2, mu=[(1,), (1,), (1,), (1, 1)]), 2)


def test_pushforward_examples():
    ngens = 3
    b = segre_from_roots([-H(0, ngens), -H(1, ngens), -H(2, ngens)])
    assert pushforward_zeta(ZetaPoly.zeta(ngens, b.rank - 1), b) == 1
    assert pushforward_zeta(ZetaPoly.zeta(ngens, b.rank - 2), b) == 0
    p = ZetaPoly.from_nil(H(0, ngens)) * ZetaPoly.zeta(ngens, b.rank)
    assert pushforward_zeta(p, b) == H(0, ngens) * b.segre_class(1)


def test_pushforward_context_mismatch():
    b = segre_from_roots([-H(0, 2)])
    with pytest.raises(ContextError):
        pushforward_zeta(ZetaPoly.zeta(3, 1), b)


def test_pushforward_truncation_is_reported():
    b = segre_from_roots([-H(0, 4), -H(1, 4)], max_degree=1)
    with pytest.raises(TruncationError):
        pushforward_zeta(ZetaPoly.zeta(4, 3), b)


def test_segre_factors_multiply_to_segre_class():
    rng = random.Random(2)
    for _ in range(40):
        ngens = rng.randint(1, 8)
        roots = [
            NilPoly.linear({i: rng.randint(-3, 3) for i in range(ngens)}, ngens)
            for _ in range(rng.randint(1, 3))
        ]
        roots = [r for r in roots if not r.is_zero()] or [-H(0, ngens)]
        total = NilPoly.one(ngens)
        for f in segre_factors(roots):
            total = total * f
        assert total == sum(segre_from_roots(roots).segre, NilPoly.zero(ngens))


def test_collapse_zeta_matches_pushforward():
    rng = random.Random(3)
    for _ in range(40):
        ngens = rng.randint(1, 6)
        rank = rng.randint(1, 3)
        roots = [NilPoly.linear({i: rng.randint(-2, 2) for i in range(ngens)}, ngens) for _ in range(rank)]
        roots = [r if not r.is_zero() else -H(0, ngens) for r in roots]
        bundle = segre_from_roots(roots)
        cls = ZetaPoly.zero(ngens)
        for u in range(ngens + rank):
            coeff = nilring.graded_part(random_nil(rng, ngens, 6), ngens + rank - 1 - u)
            cls = cls + ZetaPoly.from_nil(coeff).shift(u)
        full = nilring.top_coefficient(pushforward_zeta(cls, bundle))
        collapsed = collapse_zeta(cls, rank)
        assert full == nilring.top_coefficient(collapsed * sum(bundle.segre, NilPoly.zero(ngens)))


def test_collapse_zeta_requires_top_degree():
    with pytest.raises(ValueError):
        collapse_zeta(ZetaPoly.zeta(2, 1), 2)


# properties


@st.composite
def bundles(draw):
    ngens = draw(st.integers(min_value=1, max_value=7))
    rank = draw(st.integers(min_value=1, max_value=3))
    coeffs = st.integers(min_value=-3, max_value=3)
    roots = []
    for _ in range(rank):
        weights = draw(st.lists(coeffs, min_size=ngens, max_size=ngens))
        root = NilPoly.linear(dict(enumerate(weights)), ngens)
        roots.append(root if not root.is_zero() else -H(0, ngens))
    return ngens, roots


@st.composite
def zetapolys(draw, ngens):
    seed = draw(st.integers(min_value=0, max_value=10**6))
    rng = random.Random(seed)
    return ZetaPoly([random_nil(rng, ngens, 5, coeff=3) for _ in range(rng.randint(0, ngens + 3))], ngens)


@settings(max_examples=80, deadline=None)
@given(bundles(), st.data())
def test_pushforward_linearity_and_projection_formula(bundle_data, data):
    ngens, roots = bundle_data
    bundle = segre_from_roots(roots)
    p = data.draw(zetapolys(ngens))
    q = data.draw(zetapolys(ngens))
    base = random_nil(random.Random(data.draw(st.integers(0, 10**6))), ngens, 5, coeff=3)
    assert pushforward_zeta(p + q, bundle) == pushforward_zeta(p, bundle) + pushforward_zeta(q, bundle)
    lifted = ZetaPoly.from_nil(base)
    assert pushforward_zeta(lifted * p, bundle) == base * pushforward_zeta(p, bundle)


@settings(max_examples=80, deadline=None)
@given(bundles(), st.integers(min_value=0, max_value=8))
def test_segre_inverts_chern_class(bundle_data, max_degree):
    ngens, roots = bundle_data
    bundle = segre_from_roots(roots, max_degree)
    chern = NilPoly.one(ngens)
    for root in roots:
        chern = chern * (1 + root)
    total = sum(bundle.segre, NilPoly.zero(ngens))
    assert nilring.truncate(chern * total, max_degree) == 1
    for t, piece in enumerate(bundle.segre):
        assert piece.is_homogeneous(t)


def test_bundle_data_is_frozen():
    b = BundleData(rank=1, segre=(NilPoly.one(1),))
    with pytest.raises(AttributeError):
        b.rank = 2
