from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from gcmassey.graphs import (GraphError, ModularGraph, Nest, StabilityError, automorphisms, build_graph,
                             canonical_form, certificate, contract_nest, corolla, enumerate_graphs,
                             enumerate_nests, find_isomorphism, is_isomorphism, no_loops, no_simple_loops,
                             theta, wheel)

from .conftest import relabel

SMALL_TYPES = [(0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1), (3, 0)]
POOL = [g for t in SMALL_TYPES for g in enumerate_graphs(*t)]


def _shape(g: ModularGraph, vperm):
    edges = Counter(tuple(sorted((vperm[g.flag_vertex[f]], vperm[g.flag_vertex[p]]))) for f, p in g.edges)
    genus = [0] * g.n_vertices
    for v, x in enumerate(g.genus):
        genus[vperm[v]] = x
    return tuple(genus), frozenset(edges.items()), tuple(vperm[g.flag_vertex[l]] for l in g.legs)


def brute_isomorphic(g: ModularGraph, h: ModularGraph) -> bool:
    if g.n_vertices != h.n_vertices or g.n_flags != h.n_flags:
        return False
    target = _shape(h, list(range(h.n_vertices)))
    return any(_shape(g, p) == target for p in permutations(range(g.n_vertices)))


@st.composite
def relabelled(draw):
    g = draw(st.sampled_from(POOL))
    vperm = draw(st.permutations(range(g.n_vertices)))
    fperm = draw(st.permutations(range(g.n_flags)))
    return g, relabel(g, vperm, fperm)


# M_{0,n}-bar strata counts 4, 26, 236 (Schroeder's fourth problem), and
# the standard small counts 2, 5 (genus one) and 7 (genus two).
@pytest.mark.parametrize("genus,legs,count", [(0, 3, 1), (0, 4, 4), (0, 5, 26), (0, 6, 236),
                                              (1, 1, 2), (1, 2, 5), (2, 0, 7)])
def test_enumeration_counts(genus, legs, count):
    assert len(enumerate_graphs(genus, legs)) == count


@pytest.mark.parametrize("t", [(0, 5), (1, 2), (1, 3), (2, 0), (2, 1)])
def test_enumeration_pairwise_distinct(t):
    gs = enumerate_graphs(*t)
    for i, g in enumerate(gs):
        for h in gs[i + 1:]:
            assert not brute_isomorphic(g, h)


@pytest.mark.parametrize("t", [(1, 3), (2, 1), (3, 0)])
def test_enumeration_complete_by_expansion(t):
    # every one-edge contraction of an enumerated graph is enumerated again
    gs = enumerate_graphs(*t)
    certs = {certificate(g) for g in gs}
    for g in gs:
        if g.n_edges == 1 and g.n_legs == 0:
            continue  # the whole graph is not a proper nest; its contraction is the corolla
        for f, p in g.edges:
            c = contract_nest(g, Nest.from_edges(g, [(f, p)]))
            assert certificate(c.quotient) in certs


@given(relabelled())
def test_canonical_form_invariant(pair):
    g, h = pair
    assert canonical_form(g)[0] == canonical_form(h)[0]
    assert brute_isomorphic(g, h)


@given(relabelled())
def test_canonical_form_idempotent_and_isomorphic(pair):
    _, h = pair
    c, phi = canonical_form(h)
    assert canonical_form(c)[0] == c
    assert is_isomorphism(phi, h, c)


@given(relabelled())
def test_find_isomorphism(pair):
    g, h = pair
    phi = find_isomorphism(g, h)
    assert phi is not None and is_isomorphism(phi, g, h)


@given(st.sampled_from(POOL))
def test_automorphisms_form_a_group(g):
    auts = automorphisms(g)
    keys = {a.flag_map for a in auts}
    assert len(keys) == len(auts)
    for a in auts:
        assert is_isomorphism(a, g, g)
        assert a.inverse().flag_map in keys
        for b in auts[:4]:
            assert a.compose(b).flag_map in keys


@pytest.mark.parametrize("j,order", [(1, 6), (2, 48), (3, 2304)])
def test_theta_automorphism_count(j, order):
    # 3! on the three edges, 2 per loop flip, (2j-2)! on the loops
    assert len(automorphisms(theta(j))) == order


@pytest.mark.parametrize("k,order", [(3, 24), (5, 10), (7, 14)])
def test_wheel_automorphisms(k, order):
    # W_3 is K_4; larger wheels only have the dihedral symmetry of the rim
    g, _ = wheel(k)
    assert len(automorphisms(g)) == order


@given(st.sampled_from(POOL), st.data())
def test_contraction_preserves_type(g, data):
    nests = enumerate_nests(g)
    if not nests:
        return
    n = data.draw(st.sampled_from(nests))
    c = contract_nest(g, n)
    assert c.quotient.type == g.type
    assert c.quotient.n_edges == g.n_edges - len(n.flags) // 2


@pytest.mark.parametrize("genus", [2, 3, 4])
def test_degree_euler_relation(genus):
    for g in enumerate_graphs(genus, 0, filter=no_loops, max_vertex_genus=0):
        e, v = g.n_edges, g.n_vertices
        assert e - 2 * v + 2 == 2 * genus - e


def test_unstable_vertex_rejected():
    with pytest.raises(StabilityError):
        build_graph([0, 0], [(0, 1)], [0, 1])


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        build_graph([1, 1], [], [0, 1])


def test_filters():
    loop = build_graph([0], [(0, 0)], [0])
    assert not no_loops(loop) and not no_simple_loops(loop)
    # a loop at a 4-valent vertex is not simple
    g = build_graph([0, 0], [(0, 0), (0, 1), (0, 1)], [1])
    assert not no_loops(g) and no_simple_loops(g)


def test_json_roundtrip():
    for g in POOL:
        assert ModularGraph.from_json(g.to_json()) == g


def test_corolla():
    c = corolla(1, 3)
    assert c.n_edges == 0 and c.type == (1, 3)
