from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gcmassey.linalg import (BoundaryError, ChainComplexSlice, DimensionError, Echelon, RationalMatrix,
                             dense_rank, homology_rank, in_span, kernel_basis, permutation_sign, rank,
                             sort_sign)

entries = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def matrices(draw, max_side=6):
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    # sparse-ish: many zeros so rank deficiency actually shows up
    cell = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), entries)
    rows = [[draw(cell) for _ in range(c)] for _ in range(r)]
    return RationalMatrix.from_dense(rows) if r else RationalMatrix(0, c)


@given(matrices())
def test_rank_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(matrices())
def test_rank_agrees_with_dense(m):
    assert rank(m) == dense_rank(m.to_dense())


@given(matrices(), st.randoms())
def test_rank_permutation_invariant(m, rnd):
    rows, cols = list(range(m.rows)), list(range(m.cols))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    p = RationalMatrix(m.rows, m.cols, {(rows[r], cols[c]): x for (r, c), x in m.entries.items()})
    assert rank(p) == rank(m)


@given(matrices())
def test_kernel_annihilated(m):
    ker = kernel_basis(m)
    assert len(ker) == m.cols - rank(m)
    for v in ker:
        assert not m.apply(v)


@given(matrices(), st.data())
def test_image_vectors_in_span(m, data):
    coeffs = {c: data.draw(entries) for c in range(m.cols)}
    assert in_span(m.apply(coeffs), m)


def test_rank_examples():
    assert rank(RationalMatrix.identity(4)) == 4
    assert rank(RationalMatrix(3, 5)) == 0
    assert rank(RationalMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(RationalMatrix.from_dense([[Fraction(1, 3), 1], [1, 3]])) == 1


def test_bad_entries_rejected():
    with pytest.raises(DimensionError):
        RationalMatrix(2, 2, {(2, 0): Fraction(1)})


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionError):
        RationalMatrix(2, 3) @ RationalMatrix(2, 3)


def test_echelon_contains():
    e = Echelon([{0: Fraction(1), 1: Fraction(1)}])
    assert e.contains({0: Fraction(2), 1: Fraction(2)})
    assert not e.contains({0: Fraction(1)})
    assert not e.add({0: Fraction(-1), 1: Fraction(-1)})
    assert len(e) == 1


def test_coo_roundtrip():
    m = RationalMatrix.from_dense([[0, Fraction(1, 2)], [3, 0]])
    assert RationalMatrix.from_coo_text(m.to_coo_text(), 2, 2) == m


def test_homology_of_a_circle():
    # two vertices, two edges: C_1 -> C_0 with d(e1) = v1 - v0, d(e2) = v0 - v1
    d1 = RationalMatrix.from_dense([[-1, 1], [1, -1]])
    c = ChainComplexSlice({0: 2, 1: 2}, {1: d1})
    assert homology_rank(c, 0) == 1
    assert homology_rank(c, 1) == 1


def test_nonzero_square_raises():
    a = RationalMatrix.from_dense([[1]])
    c = ChainComplexSlice({0: 1, 1: 1, 2: 1}, {2: a, 1: a})
    with pytest.raises(BoundaryError):
        homology_rank(c, 1)


@given(st.permutations(range(6)))
def test_permutation_sign_matches_sort_sign(p):
    s, out = sort_sign(list(p))
    assert out == tuple(range(6))
    assert s == permutation_sign(list(p))


def test_sort_sign_repeats():
    assert sort_sign([1, 1])[0] == 0
