from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from quandlekit.abelian import AbelianGroup
from quandlekit.errors import InvalidParameter, ParseError

GROUPS = [AbelianGroup(f) for f in [(), (2,), (4,), (2, 2), (2, 4), (3, 3), (6,)]]


@pytest.mark.parametrize("text,factors", [("Z4", (4,)), ("4", (4,)), ("2x4", (2, 4)),
                                          ("Z2xZ4", (2, 4)), ("1", ()), ("Z1xZ3", (3,))])
def test_parse(text, factors):
    assert AbelianGroup.parse(text).factors == factors


@pytest.mark.parametrize("text", ["Zx", "Z0", "four", ""])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        AbelianGroup.parse(text)


def test_nonpositive_factor_rejected():
    with pytest.raises(InvalidParameter):
        AbelianGroup((0,))


def test_rank_is_lexicographic():
    g = AbelianGroup((2, 3))
    els = g.elements()
    assert els == sorted(els)
    assert [g.rank(a) for a in els] == list(range(6))
    assert all(g.unrank(g.rank(a)) == a for a in els)


def test_cyclic_automorphisms_are_units():
    assert len(AbelianGroup.cyclic(4).automorphisms()) == 2
    assert len(AbelianGroup.cyclic(5).automorphisms()) == 4
    assert len(AbelianGroup((2, 2)).automorphisms()) == 6


def test_quotient_of_z4_by_two():
    g = AbelianGroup.cyclic(4)
    q, proj = g.quotient([(2,)])
    assert q.factors == (2,)
    assert {proj(a) for a in g.elements()} == {(0,), (1,)}
    assert proj((2,)) == (0,)


def test_subgroup_of_z2xz4():
    g = AbelianGroup((2, 4))
    sub, emb = g.subgroup([(1, 2)])
    assert sub.order == 2
    assert emb((1,)) == (1, 2)
    sub, emb = g.subgroup([(1, 0), (0, 1)])
    assert sub.order == 8
    assert len(emb.inverse_map()) == 8


def test_tables():
    g = AbelianGroup((2, 3))
    add, neg = g.add_table, g.neg_table
    for a in g.elements():
        assert g.unrank(int(neg[g.rank(a)])) == g.neg(a)
        for b in g.elements():
            assert g.unrank(int(add[g.rank(a), g.rank(b)])) == g.add(a, b)


groups = st.sampled_from(GROUPS)


@given(groups, st.data())
def test_group_laws(g, data):
    el = st.sampled_from(g.elements())
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert g.add(a, b) == g.add(b, a)
    assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))
    assert g.add(a, g.neg(a)) == g.zero
    assert g.scale(g.element_order(a), a) == g.zero
    assert g.exponent % g.element_order(a) == 0


@given(groups, st.data())
def test_automorphisms_are_homomorphisms(g, data):
    auts = g.automorphisms()
    f = data.draw(st.sampled_from(auts))
    for a in g.elements():
        for b in g.elements():
            assert f[g.add(a, b)] == g.add(f[a], f[b])


@given(groups, st.data())
def test_quotient_order_times_subgroup_order(g, data):
    gens = data.draw(st.lists(st.sampled_from(g.elements()), max_size=2))
    sub, emb = g.subgroup(gens)
    q, proj = g.quotient(gens)
    assert sub.order * q.order == g.order
    for c in sub.elements():
        assert proj(emb(c)) == q.zero
