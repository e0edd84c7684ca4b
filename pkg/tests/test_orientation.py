import pytest
from hypothesis import given, strategies as st

from gcmassey.graphs import automorphisms, enumerate_graphs, no_loops, theta, wheel
from gcmassey.orientation import (Orientation, contraction_orientation, iso_sign, push_forward,
                                  shuffle_sign, vanishes_under_automorphisms)

COM_POOL = [g for genus in (2, 3, 4) for g in enumerate_graphs(genus, 0, max_vertex_genus=0)]


@given(st.sampled_from(COM_POOL), st.data())
def test_iso_sign_multiplicative(g, data):
    auts = automorphisms(g)
    a = data.draw(st.sampled_from(auts))
    b = data.draw(st.sampled_from(auts))
    o = Orientation.standard(g)
    assert iso_sign(a.compose(b), g, g, o) == iso_sign(a, g, g, o) * iso_sign(b, g, g, o)


@given(st.sampled_from(COM_POOL), st.data())
def test_iso_sign_matches_edge_sign(g, data):
    a = data.draw(st.sampled_from(automorphisms(g)))
    assert iso_sign(a, g, g, Orientation.standard(g)) == a.edge_sign(g, g)


@given(st.permutations(range(7)), st.data())
def test_two_step_contraction_sign(order, data):
    order = tuple(order)
    t = data.draw(st.lists(st.sampled_from(order), min_size=2, max_size=5, unique=True))
    cut = data.draw(st.integers(1, len(t) - 1))
    first, second = t[:cut], t[cut:]
    s_one, quotient, nest = contraction_orientation(Orientation(order), t)
    s_a, mid, _ = contraction_orientation(Orientation(order), second)
    s_b, quotient2, _ = contraction_orientation(mid, first)
    assert s_one == s_a * s_b
    assert quotient == quotient2
    assert nest.edge_order == tuple(t)


def test_shuffle_sign_examples():
    assert shuffle_sign((0, 1, 2), (2,)) == 1
    assert shuffle_sign((0, 1, 2), (0,)) == 1   # two transpositions
    assert shuffle_sign((0, 1, 2), (1,)) == -1


@given(st.sampled_from(COM_POOL))
def test_vanishing_iff_odd_automorphism(g):
    # trivial labels: the class dies exactly when some automorphism reverses the orientation
    o = Orientation.standard(g)
    odd = any(a.edge_sign(g, g) == -1 for a in automorphisms(g))
    assert vanishes_under_automorphisms(g, o, lambda phi: 1) == odd


def test_wheels_survive_and_multiple_edges_die():
    for k in (3, 5, 7):
        g, _ = wheel(k)
        assert not vanishes_under_automorphisms(g, Orientation.standard(g), lambda phi: 1)
    # a double edge can be swapped: odd permutation of edges
    from gcmassey.graphs import build_graph
    g = build_graph([0, 0, 0], [(0, 1), (0, 1), (1, 2), (2, 0), (2, 0)])
    assert vanishes_under_automorphisms(g, Orientation.standard(g), lambda phi: 1)


def test_push_forward_identity():
    g = theta(2)
    o = Orientation.standard(g)
    from gcmassey.graphs import GraphIsomorphism
    assert push_forward(GraphIsomorphism.identity(g), g, g, o) == o


def test_orientation_check():
    g, _ = wheel(3)
    with pytest.raises(ValueError):
        Orientation((0,)).check(g)


def test_normalized():
    s, o = Orientation((4, 2, 0)).normalized()
    assert o.edge_order == (0, 2, 4) and s == -1
