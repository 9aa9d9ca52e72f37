import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus
from mdsclass.codes import Code, extend, shorten
from mdsclass.equiv import (
    EquivMap, act_pair, apply, compose, group_order, inverse, lift, restrict, to_graph, transporter_h,
)

nx = pytest.importorskip("networkx")


def maps(n, q):
    return st.integers(0, 2**32).map(lambda s: EquivMap.random(n, q, random.Random(s)))


def test_identity_and_swap():
    C = corpus()["t49"]
    assert apply(EquivMap.identity(4, 3), C) == C
    g = EquivMap(2, 2, (1, 0), ((0, 1), (0, 1)))
    assert list(apply(g, Code.from_words([[0, 1]], 2))) == [(1, 0)]


def test_action_definition():
    # (g c)_{pi(i)} = sigma_{pi(i)}(c_i)
    rng = random.Random(3)
    g = EquivMap.random(5, 4, rng)
    c = [rng.randrange(4) for _ in range(5)]
    img = apply(g, Code.from_words([c], 4)).words[0]
    for i in range(5):
        assert img[g.pi[i]] == g.sigma[g.pi[i]][c[i]]
        assert act_pair(g, (i + 1, c[i])) == (g.pi[i] + 1, int(img[g.pi[i]]))


@settings(max_examples=30, deadline=None)
@given(maps(4, 3), maps(4, 3))
def test_compose_inverse(g, h):
    C = corpus()["t49"]
    assert apply(compose(g, h), C) == apply(g, apply(h, C))
    assert apply(inverse(g), apply(g, C)) == C
    assert compose(g, inverse(g)).is_identity()


def test_h_examples():
    assert transporter_h(1, 0, 3, 4).is_identity()
    C = Code.from_words([[1, 2, 3]], 4)
    assert list(apply(transporter_h(2, 0, 3, 4), C)) == [(2, 1, 3)]
    # h_{2,3}: (a, b, c) -> (swap03(b), a, c)
    assert list(apply(transporter_h(2, 3, 3, 4), C)) == [(2, 1, 3)]
    assert list(apply(transporter_h(2, 3, 3, 4), Code.from_words([[1, 3, 2]], 4))) == [(0, 1, 2)]
    h = transporter_h(2, 3, 3, 4)
    for x in range(4):
        sx = {3: 0, 0: 3}.get(x, x)
        assert act_pair(h, (2, x)) == (1, sx)
    for i in range(1, 5):
        for v in range(4):
            assert act_pair(transporter_h(i, v, 4, 4), (i, v)) == (1, 0)


def test_lift_restrict_basics():
    assert lift(EquivMap.identity(3, 3), 2).is_identity()
    assert restrict(EquivMap.identity(4, 3), 3).is_identity()
    g = EquivMap(3, 2, (1, 0, 2), ((0, 1),) * 3)
    with pytest.raises(ValueError):
        restrict(g, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 5), st.integers(0, 2))
def test_lift_defining_identity(seed, i, v):
    rng = random.Random(seed)
    C = corpus()["t49"]
    g = EquivMap.random(4, 3, rng)
    # e(g, i) e(C, i, v) = e(g C, i, v)
    assert apply(lift(g, i), extend(C, i, v)) == extend(apply(g, C), i, v)
    assert restrict(lift(g, i), i) == g


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 4), st.integers(0, 2))
def test_restrict_defining_identity(seed, i, v):
    rng = random.Random(seed)
    D = extend(corpus()["t49"], i, v)
    g = lift(EquivMap.random(4, 3, rng), i)
    # s(g, i) s(D, i, v) = s(g D, i, v) when g fixes coordinate i pointwise
    assert apply(restrict(g, i), shorten(D, i, v)) == shorten(apply(g, D), i, v)


def test_group_order():
    assert group_order(3, 2) == 48


def test_graph_counts():
    G = to_graph(Code.from_words([[0, 0], [1, 1]], 2))
    assert G.num_vertices == 6
    assert len(G.edges) == 2 * 1 + 4
    C = corpus()["lin44"]
    G = to_graph(C)
    n, q, M = 4, 4, 16
    assert G.num_vertices == n * q + M
    assert len(G.edges) == n * q * (q - 1) // 2 + n * M


@pytest.mark.parametrize("name", ["t49", "lin44", "odd"])
def test_graph_isomorphic_under_maps(name):
    C = corpus()[name]
    g = EquivMap.random(C.n, C.q, random.Random(7))
    A, B = to_graph(C).to_networkx(), to_graph(apply(g, C)).to_networkx()
    nm = nx.algorithms.isomorphism.categorical_node_match("color", None)
    assert nx.is_isomorphic(A, B, node_match=nm)
