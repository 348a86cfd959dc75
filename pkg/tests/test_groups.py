from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from twisted_clifford.errors import CapacityError, StructuralError
from twisted_clifford.groups import FinAbGroup, GroupElement, enumerate_group, mul


def test_small_products():
    V = FinAbGroup.elementary2(2)
    assert mul(V, V.element((1, 0)), V.element((0, 1))) == V.element((1, 1))
    assert mul(V, V.element((1, 1)), V.element((1, 1))) == V.element((0, 0))
    C4 = FinAbGroup([4])
    assert mul(C4, C4.element((3,)), C4.element((2,))) == C4.element((1,))


def test_enumeration_examples():
    assert [g.exponents for g in enumerate_group(FinAbGroup([2]))] == [(0,), (1,)]
    V = list(enumerate_group(FinAbGroup.elementary2(2)))
    assert len(V) == 4 and V[0].is_identity()
    els = list(enumerate_group(FinAbGroup([2, 4])))
    assert len(els) == 8 and len(set(els)) == 8


def test_enumeration_is_lexicographic():
    G = FinAbGroup([2, 3, 4])
    exps = [g.exponents for g in G]
    assert exps == sorted(exps) == list(itertools.product(range(2), range(3), range(4)))
    assert all(G.index(g) == i for i, g in enumerate(G))


def test_dimension_mismatch_is_structural():
    G, H = FinAbGroup([2, 2]), FinAbGroup([2])
    with pytest.raises(StructuralError):
        G.mul(G.identity(), H.identity())
    with pytest.raises(StructuralError):
        FinAbGroup([1, 2])


def test_too_large_to_enumerate():
    with pytest.raises(CapacityError):
        next(iter(FinAbGroup.elementary2(33)))


@pytest.mark.parametrize("orders", [(2,), (2, 2, 2), (4, 2), (3, 4), (2, 2, 2, 2, 2, 2, 2, 2, 2, 2), (4, 4, 4, 4, 4)])
def test_group_laws_exhaustive(orders):
    G = FinAbGroup(orders)
    table = G.mul_table()
    n = G.size
    assert n <= 1 << 10
    e = G.index(G.identity())
    assert (table == table.T).all()
    assert (table[e] == range(n)).all()
    for a in range(n):
        assert table[a, G.inv_index(a)] == e
        # associativity row by row: (a b) c == a (b c)
        assert (table[table[a]] == table[a][table]).all()
    assert sorted(table[3 % n]) == list(range(n))


def test_elementary2_index_is_xor():
    G = FinAbGroup.elementary2(5)
    for a, b in itertools.product(range(32), repeat=2):
        assert G.mul_index(a, b) == a ^ b
        assert G.index(G.mul(G.from_index(a), G.from_index(b))) == a ^ b
    # coordinate 0 is the most significant bit
    assert G.generator_index(0) == 0b10000


@given(st.lists(st.integers(2, 6), min_size=1, max_size=4), st.data())
def test_power_inverse_order(orders, data):
    G = FinAbGroup(orders)
    idx = data.draw(st.integers(0, G.size - 1))
    g = G.from_index(idx)
    assert G.mul(g, G.inv(g)) == G.identity()
    k = G.order_of(g)
    assert G.power(g, k) == G.identity()
    assert all(not G.power(g, j).is_identity() for j in range(1, k))
    assert G.exponents_of(idx) == g.exponents
    assert isinstance(g, GroupElement)
