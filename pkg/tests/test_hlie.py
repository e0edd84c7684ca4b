from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from gcmassey.graphs import build_graph
from gcmassey.hlie import (ArityError, Commutative, GenusOneClass, Zero, alpha, compose_edge, contract_self,
                           hook_dimension, hook_model_dimension, massey_polygon, massey_polygon_blowup, mu,
                           polygon_value, subsets, wedge_of, x_class, x_class_by_composition)
from gcmassey.orientation import Orientation

coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def classes(draw, max_n=7):
    n = draw(st.integers(3, max_n))
    i = draw(st.sampled_from([d for d in range(0, n, 2)]))
    keys = subsets(n, i)
    vec = {k: draw(coeffs) for k in draw(st.lists(st.sampled_from(keys), max_size=4, unique=True))}
    return GenusOneClass.from_wedge(n, {k: x for k, x in vec.items() if x}, i)


@pytest.mark.parametrize("n", range(1, 10))
def test_hook_model_dimensions(n):
    for i in range(0, n, 2):
        assert hook_model_dimension(n, i) == comb(n - 1, i) == hook_dimension(n, i)


@given(classes(), st.data())
def test_compose_edge_equivariant(a, data):
    b = Commutative(data.draw(st.integers(2, 4)))
    ia = data.draw(st.integers(1, a.n))
    ib = data.draw(st.integers(1, b.n))
    pa = data.draw(st.permutations(range(1, a.n + 1)))
    sa = {l: pa[l - 1] for l in range(1, a.n + 1)}
    lhs = compose_edge(a.permute(sa), b, sa[ia], ib)
    # induced permutation on the result's legs (a's survivors first, then b's)
    old = {l: (l if l < ia else l - 1) for l in range(1, a.n + 1) if l != ia}
    new = {l: (l if l < sa[ia] else l - 1) for l in range(1, a.n + 1) if l != sa[ia]}
    sigma = {old[l]: new[sa[l]] for l in old}
    for k in range(a.n, a.n + b.n - 1):
        sigma[k] = k
    assert lhs == compose_edge(a, b, ia, ib).permute(sigma)


@given(classes(), st.integers(2, 4), st.data())
def test_compose_edge_sides_agree(a, m, data):
    # gluing a genus-0 vertex on the left or on the right only reorders legs
    ia = data.draw(st.integers(1, a.n))
    left = compose_edge(Commutative(m), a, 1, ia)
    right = compose_edge(a, Commutative(m), ia, 1)
    n_com, n_cls = m - 1, a.n - 1
    sigma = {l: l + n_cls for l in range(1, n_com + 1)}
    sigma.update({n_com + l: l for l in range(1, n_cls + 1)})
    assert left.permute(sigma) == right


def test_genus_two_is_zero():
    a = alpha(1)
    assert isinstance(compose_edge(a, a, 1, 1), Zero)
    assert isinstance(contract_self(a, 1, 2), Zero)


def test_loop_contraction_gives_unit():
    u = contract_self(Commutative(4), 1, 2)
    assert u == GenusOneClass.from_wedge(2, {(): Fraction(1)}, 0)


def test_arity_checks():
    with pytest.raises(ArityError):
        compose_edge(Commutative(3), Commutative(3), 4, 1)
    with pytest.raises(ArityError):
        GenusOneClass.from_wedge(3, wedge_of([1, 5]), 2)
    with pytest.raises(ValueError):
        GenusOneClass.from_wedge(3, wedge_of([1]), 1)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_alpha_and_x_nonzero(j):
    assert not alpha(j).is_zero()
    assert not x_class(j).is_zero()
    assert x_class(j) == x_class_by_composition(j)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_alpha_spans_the_sign_representation(j):
    a = alpha(j)
    swap = {1: 2, 2: 1}
    assert a.permute(swap) == a.scale(-1)
    cyc = {l: l % (2 * j + 1) + 1 for l in range(1, 2 * j + 2)}
    assert a.permute(cyc) == a   # odd-length cycle is even


@pytest.mark.parametrize("t,j", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)])
def test_relation_vector_is_killed_by_gluing(t, j):
    glued = compose_edge(Commutative(t + 1), alpha(j), t + 1, 2 * j + 1)
    z = glued
    for i in range(1, t + 1):
        z = z + glued.permute({i: t + 1, t + 1: i})
    assert z.is_zero()
    assert not glued.is_zero()


@st.composite
def polygons(draw):
    k = draw(st.sampled_from([3, 5]))
    sizes = [draw(st.integers(1, 3)) for _ in range(k)]
    labels = draw(st.permutations(range(1, sum(sizes) + 1)))
    slots, pos = [], 0
    for s in sizes:
        slots.append(sorted(labels[pos:pos + s]))
        pos += s
    return slots


@given(polygons(), st.data())
def test_polygon_blowup_order_independent(slots, data):
    order = data.draw(st.permutations(range(len(slots))))
    direct = massey_polygon(slots)
    assert massey_polygon_blowup(slots, 1, order) == direct
    assert massey_polygon_blowup(slots, 1, list(reversed(order))) == direct


@given(polygons())
def test_polygon_rotation(slots):
    rotated = slots[1:] + slots[:1]
    assert massey_polygon(rotated) == massey_polygon(slots)


def test_standard_polygon_is_alpha():
    for j in (1, 2, 3):
        assert massey_polygon([[i] for i in range(1, 2 * j + 2)]) == alpha(j)


def test_even_polygon_vanishes():
    assert polygon_value([[1], [2], [3], [4]]) == {}
    assert massey_polygon([[1], [2], [3], [4]]).is_zero()


def test_mu_on_triangle_and_tree():
    tri = build_graph([0, 0, 0], [(0, 1), (1, 2), (2, 0)], [0, 1, 2])
    labels = {v: Commutative(3) for v in range(3)}
    val = mu(tri, labels, Orientation.standard(tri))
    assert isinstance(val, GenusOneClass) and val.i == 2
    assert val.ratio(alpha(1)) in (1, -1)
    tree = build_graph([0, 0], [(0, 1)], [0, 0, 1, 1])
    assert mu(tree, {0: Commutative(3), 1: Commutative(3)}, Orientation.standard(tree)) == Commutative(4)


def test_serialize_roundtrip():
    x = x_class(2)
    assert GenusOneClass.deserialize(x.n, x.i, x.serialize()) == x
