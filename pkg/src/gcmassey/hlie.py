"""Genus <= 1 operations: the commutative products and the hook-quotient model.

The degree ``i`` homology of the genus-one moduli space with ``n`` legs is
modelled as ``wedge^i(Q^n / u)`` with ``u = e_1 + ... + e_n``.  The relation
span ``u ^ wedge^{i-1}`` is exactly the orbit span of the kernel vector of
the one-edge composition ``m_t o_e alpha``, so composition becomes a
relabelling of wedge coordinates followed by reduction.

Wedges are dicts ``{sorted tuple of labels: Fraction}``; labels are any
sortable hashables (leg numbers here, flag indices in :mod:`feynman`).
The normal form eliminates the largest label: ``e_max = -(sum of the others)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .graphs import ModularGraph
from .linalg import Echelon, add_into, sort_sign
from .orientation import Orientation

Wedge = Dict[tuple, Fraction]

ONE: Wedge = {(): Fraction(1)}


class ArityError(ValueError):
    pass


# --------------------------------------------------------------- wedge algebra

def wedge_of(seq: Sequence, coeff=1) -> Wedge:
    s, key = sort_sign(seq)
    return {key: Fraction(coeff) * s} if s else {}


def wedge_product(a: Mapping[tuple, Fraction], b: Mapping[tuple, Fraction]) -> Wedge:
    out: Wedge = {}
    for ka, xa in a.items():
        for kb, xb in b.items():
            s, key = sort_sign(ka + kb)
            if s:
                add_into(out, {key: xa * xb * s})
    return out


def substitute(vec: Mapping[tuple, Fraction], images: Mapping[object, Mapping[object, Fraction]]) -> Wedge:
    """Apply the linear map ``e_l -> images[l]`` (identity on other labels) to every wedge factor."""
    out: Wedge = {}
    for key, x in vec.items():
        choices = [list(images[l].items()) if l in images else [(l, Fraction(1))] for l in key]
        for pick in product(*choices):
            s, k = sort_sign([p[0] for p in pick])
            if not s:
                continue
            c = x * s
            for _, y in pick:
                c *= y
            add_into(out, {k: c})
    return out


def relabel(vec: Mapping[tuple, Fraction], mapping: Mapping) -> Wedge:
    """Push a wedge through an injective relabelling."""
    out: Wedge = {}
    for key, x in vec.items():
        s, k = sort_sign([mapping[l] for l in key])
        add_into(out, {k: x * s})
    return out


def reduce_mod_sum(vec: Mapping[tuple, Fraction], labels: Iterable) -> Wedge:
    """Normal form in ``wedge(Q^labels / sum)``: replace ``e_max`` by minus the other labels."""
    labels = sorted(labels)
    if not labels:
        return {k: x for k, x in vec.items() if x}
    top = labels[-1]
    others = labels[:-1]
    out: Wedge = {}
    for key, x in vec.items():
        if not x:
            continue
        if not key or key[-1] != top:
            add_into(out, {key: x})
            continue
        rest = key[:-1]
        present = set(rest)
        for l in others:
            if l in present:
                continue
            s, k = sort_sign(rest + (l,))
            add_into(out, {k: -x * s})
    return out


def wedge_degree(vec: Mapping[tuple, Fraction]) -> Optional[int]:
    degs = {len(k) for k in vec}
    if len(degs) > 1:
        raise ValueError("inhomogeneous wedge")
    return degs.pop() if degs else None


# ----------------------------------------------------------- the hook model

def subsets(n: int, i: int) -> List[Tuple[int, ...]]:
    """Wedge basis of degree ``i`` on legs ``1..n``, lexicographic."""
    return list(combinations(range(1, n + 1), i))


@lru_cache(maxsize=None)
def _relation_echelon(n: int, i: int) -> Tuple[Tuple[Tuple[int, ...], ...], Echelon]:
    basis = tuple(subsets(n, i))
    index = {k: a for a, k in enumerate(basis)}
    u = {(l,): Fraction(1) for l in range(1, n + 1)}
    ech = Echelon()
    if i >= 1:
        for b in subsets(n, i - 1):
            rel = wedge_product(u, {b: Fraction(1)})
            ech.add({index[k]: x for k, x in rel.items()})
    return basis, ech


def relation_basis(n: int, i: int) -> Echelon:
    """Echelon basis of the relation span ``u ^ wedge^{i-1}`` in the wedge coordinates on ``1..n``.

    Columns index :func:`subsets` ``(n, i)``.  The quotient has dimension ``C(n-1, i)``.
    """
    if i < 0 or i > n:
        raise ValueError(f"degree {i} out of range for arity {n}")
    return _relation_echelon(n, i)[1]


def hook_model_dimension(n: int, i: int) -> int:
    basis, ech = _relation_echelon(n, i)
    return len(basis) - len(ech)


def hook_dimension(n: int, i: int) -> int:
    """Dimension of the hook irreducible ``(n - i, 1^i)``."""
    return comb(n - 1, i) if 0 <= i < n else 0


@dataclass(frozen=True)
class GenusOneClass:
    """A homology class of genus one with legs ``1..n`` in reduced wedge coordinates."""

    n: int
    i: int
    coords: Tuple[Tuple[Tuple[int, ...], Fraction], ...] = ()

    @classmethod
    def from_wedge(cls, n: int, vec: Mapping[tuple, Fraction], i: Optional[int] = None) -> "GenusOneClass":
        d = wedge_degree(vec)
        if i is None:
            if d is None:
                raise ValueError("cannot infer the degree of the zero wedge")
            i = d
        elif d is not None and d != i:
            raise ValueError(f"wedge of degree {d} given for degree {i}")
        if i % 2:
            raise ValueError("genus-one homology is concentrated in even degrees")
        for k in vec:
            if any(not 1 <= l <= n for l in k):
                raise ArityError(f"label outside 1..{n} in {k}")
        red = reduce_mod_sum(vec, range(1, n + 1))
        return cls(n, i, tuple(sorted((k, Fraction(x)) for k, x in red.items())))

    @property
    def wedge(self) -> Wedge:
        return dict(self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "GenusOneClass") -> "GenusOneClass":
        if (self.n, self.i) != (other.n, other.i):
            raise ArityError("adding classes of different type")
        return GenusOneClass.from_wedge(self.n, add_into(self.wedge, other.wedge), self.i)

    def __neg__(self) -> "GenusOneClass":
        return self.scale(-1)

    def __sub__(self, other: "GenusOneClass") -> "GenusOneClass":
        return self + (-other)

    def scale(self, c) -> "GenusOneClass":
        c = Fraction(c)
        return GenusOneClass(self.n, self.i, tuple((k, x * c) for k, x in self.coords if x * c))

    def permute(self, sigma: Mapping[int, int]) -> "GenusOneClass":
        """Act by the leg permutation ``l -> sigma[l]``; legs missing from ``sigma`` stay put."""
        full = {l: sigma.get(l, l) for l in range(1, self.n + 1)}
        if sorted(full.values()) != list(range(1, self.n + 1)):
            raise ArityError("not a permutation of the legs")
        return GenusOneClass.from_wedge(self.n, relabel(self.wedge, full), self.i)

    def ratio(self, other: "GenusOneClass") -> Optional[Fraction]:
        """``c`` with ``self = c * other`` if it exists (``other`` nonzero), else None."""
        if other.is_zero():
            raise ZeroDivisionError("ratio against the zero class")
        k0, x0 = other.coords[0]
        c = self.wedge.get(k0, Fraction(0)) / x0
        return c if self == other.scale(c) else None

    def serialize(self) -> List[str]:
        return [f"{{{','.join(map(str, k))}}}: {x.numerator}/{x.denominator}" for k, x in self.coords]

    @classmethod
    def deserialize(cls, n: int, i: int, lines: Iterable[str]) -> "GenusOneClass":
        vec: Wedge = {}
        for line in lines:
            key, val = line.split(":")
            key = key.strip()[1:-1]
            k = tuple(int(t) for t in key.split(",")) if key else ()
            add_into(vec, {k: Fraction(val.strip())})
        return cls.from_wedge(n, vec, i)


@dataclass(frozen=True)
class Commutative:
    """``coeff`` times the commutative product with ``n`` legs (genus zero, degree zero)."""

    n: int
    coeff: Fraction = Fraction(1)

    def is_zero(self) -> bool:
        return self.coeff == 0


@dataclass(frozen=True)
class Zero:
    """The zero element; used for everything of genus two or more."""

    genus: int
    n: int

    def is_zero(self) -> bool:
        return True


OperadElement = Union[Commutative, GenusOneClass, Zero]


def genus_of(x: OperadElement) -> int:
    if isinstance(x, Commutative):
        return 0
    if isinstance(x, GenusOneClass):
        return 1
    return x.genus


def arity_of(x: OperadElement) -> int:
    return x.n


# -------------------------------------------------------------- compositions

def genus_one_into(vec: Mapping[tuple, Fraction], glued, fan: Sequence) -> Wedge:
    """Glue a genus-zero vertex onto label ``glued``: ``e_glued -> sum of fan``."""
    return substitute(vec, {glued: {t: Fraction(1) for t in fan}})


def compose_edge(a: OperadElement, b: OperadElement, ia: int, ib: int) -> OperadElement:
    """Glue leg ``ia`` of ``a`` to leg ``ib`` of ``b``.

    The result's legs are the remaining legs of ``a`` in order, followed by
    the remaining legs of ``b`` in order.
    """
    for x, i in ((a, ia), (b, ib)):
        if not 1 <= i <= x.n:
            raise ArityError(f"leg {i} outside 1..{x.n}")
    n = a.n + b.n - 2
    g = genus_of(a) + genus_of(b)
    if g >= 2 or isinstance(a, Zero) or isinstance(b, Zero):
        return Zero(g, n)
    if isinstance(a, Commutative) and isinstance(b, Commutative):
        return Commutative(n, a.coeff * b.coeff)
    a_map = {l: (l if l < ia else l - 1) for l in range(1, a.n + 1) if l != ia}
    b_map = {l: a.n - 1 + (l if l < ib else l - 1) for l in range(1, b.n + 1) if l != ib}
    if isinstance(a, GenusOneClass):
        cls, com, glued, own, other = a, b, ia, a_map, b_map
    else:
        cls, com, glued, own, other = b, a, ib, b_map, a_map
    images = {l: {own[l]: Fraction(1)} for l in own}
    images[glued] = {t: Fraction(1) for t in other.values()}
    vec = substitute(cls.wedge, images)
    return GenusOneClass.from_wedge(n, {k: x * com.coeff for k, x in vec.items()}, cls.i)


def contract_self(a: OperadElement, i: int, j: int) -> OperadElement:
    """Glue two legs of the same element (a loop).  Genus zero goes to the unit class."""
    if i == j or not (1 <= i <= a.n and 1 <= j <= a.n):
        raise ArityError("self-gluing needs two distinct legs")
    if isinstance(a, Commutative):
        return GenusOneClass.from_wedge(a.n - 2, {(): a.coeff}, 0)
    return Zero(genus_of(a) + 1, a.n - 2)


# ------------------------------------------------------------- polygons

def polygon_value(slots: Sequence[Sequence], sign: int = 1) -> Wedge:
    """Massey product of an odd polygon, unreduced.

    ``slots[i]`` holds the non-cycle labels at the ``i``-th cycle vertex;
    edge ``c_i`` joins vertex ``i`` to vertex ``i+1`` and ``sign`` compares
    the orientation with ``c_1 ^ ... ^ c_k``.  The value is the sum over
    one label from each of the first ``k-1`` slots of their wedge.
    """
    k = len(slots)
    if k < 3 or k % 2 == 0:
        return {}
    out: Wedge = {}
    for pick in product(*slots[:-1]):
        s, key = sort_sign(pick)
        if s:
            add_into(out, {key: Fraction(sign * s)})
    return out


def alpha(j: int) -> GenusOneClass:
    """The generator of the sign representation in degree ``2j``, arity ``2j+1``."""
    if j < 1:
        raise ValueError("j >= 1")
    return GenusOneClass.from_wedge(2 * j + 1, wedge_of(range(1, 2 * j + 1)), 2 * j)


def standard_polygon_slots(j: int) -> List[List[int]]:
    return [[i] for i in range(1, 2 * j + 2)]


def massey_polygon(slots: Sequence[Sequence[int]], sign: int = 1, n: Optional[int] = None) -> OperadElement:
    """Massey product of an odd polygon whose vertices carry the leg sets ``slots``."""
    k = len(slots)
    labels = [l for s in slots for l in s]
    n = n if n is not None else len(labels)
    if k % 2 == 0:
        return Zero(1, n)  # odd degree: nothing there
    return GenusOneClass.from_wedge(n, polygon_value(slots, sign), k - 1)


def massey_polygon_blowup(slots: Sequence[Sequence[int]], sign: int = 1, order: Optional[Sequence[int]] = None,
                          n: Optional[int] = None) -> OperadElement:
    """The same class computed by blowing up non-trivalent vertices one at a time.

    Each blow-up separates a vertex's legs onto a new genus-zero vertex,
    evaluates the smaller-valence polygon on a fresh label and composes the
    result back along the new edge.  ``order`` fixes which vertices go first.
    """
    k = len(slots)
    labels = [l for s in slots for l in s]
    n = n if n is not None else len(labels)
    if k % 2 == 0:
        return Zero(1, n)  # odd degree: nothing there
    order = list(order) if order is not None else list(range(k))
    work = [list(s) for s in slots]
    fresh = max(labels) + 1
    subs = []
    for v in order:
        if len(work[v]) > 1:
            subs.append((fresh, work[v]))
            work[v] = [fresh]
            fresh += 1
    val = relabel(_trivalent_value(k, sign), {i + 1: work[i][0] for i in range(k)})
    legs = {s[0] for s in work}
    val = reduce_mod_sum(val, legs)
    for f, fan in reversed(subs):
        legs = (legs - {f}) | set(fan)
        val = reduce_mod_sum(genus_one_into(val, f, fan), legs)
    return GenusOneClass.from_wedge(n, val, k - 1)


def _trivalent_value(k: int, sign: int) -> Wedge:
    # the defining value on the standard trivalent polygon, by equivariance
    return {k2: x * sign for k2, x in alpha((k - 1) // 2).wedge.items()}


def x_class(j: int) -> GenusOneClass:
    """alpha with ``m_2`` glued onto legs ``4..2j+1``; leg ``k >= 4`` becomes the pair ``2k-4, 2k-3``."""
    n = 4 * j - 1
    images = {k: {k: Fraction(1)} for k in (1, 2, 3)}
    for k in range(4, 2 * j + 2):
        images[k] = {2 * k - 4: Fraction(1), 2 * k - 3: Fraction(1)}
    vec = substitute(wedge_of(range(1, 2 * j + 1)), images)
    return GenusOneClass.from_wedge(n, vec, 2 * j)


def x_class_by_composition(j: int) -> GenusOneClass:
    """``(...(alpha o_{2j+1} m_2) o_{2j} m_2 ...) o_4 m_2`` with the right-hand legs renumbered into loop pairs."""
    x: OperadElement = alpha(j)
    for leg in range(2 * j + 1, 3, -1):
        x = compose_edge(x, Commutative(3), leg, 1)
        # the two new legs sit at the end; move them next to the slot they replace
        n = x.n
        perm = {}
        tail = [n - 1, n]
        for l in range(1, n + 1):
            if l < leg:
                perm[l] = l
            elif l <= n - 2:
                perm[l] = l + 2
        perm[tail[0]] = leg
        perm[tail[1]] = leg + 1
        x = x.permute(perm)
    return x


# --------------------------------------------------------------- dispatch

def cycle_structure(g: ModularGraph) -> Optional[Tuple[List[int], List[Tuple[int, int]]]]:
    """If ``g`` minus legs is one simple cycle, the vertex order and (out, in) flag pairs of its edges."""
    if g.betti != 1 or len(g.edges) != len(g.genus) or len(g.genus) < 3:
        return None
    if any(len([f for f in g.flags_at(v) if g.partner[f] != f]) != 2 for v in range(len(g.genus))):
        return None
    verts, pairs = [0], []
    f = next(f for f in g.flags_at(0) if g.partner[f] != f)
    while True:
        h = g.partner[f]
        pairs.append((f, h))
        w = g.flag_vertex[h]
        if w == 0:
            break
        verts.append(w)
        f = next(x for x in g.flags_at(w) if g.partner[x] != x and x != h)
    return verts, pairs


def _leg_number(g: ModularGraph) -> Dict[int, int]:
    return {f: i + 1 for i, f in enumerate(g.legs)}


def mu(g: ModularGraph, labels: Mapping[int, OperadElement], o: Orientation) -> OperadElement:
    """The operation indexed by ``g`` on vertex labels ``labels``.

    A label at ``v`` has its legs identified with the flags at ``v`` in
    increasing order.  The result's legs are ``g``'s legs.
    """
    n = len(g.legs)
    legno = _leg_number(g)
    total = g.total_genus
    if total >= 2:
        return Zero(total, n)
    vertex_wedges: Dict[int, Wedge] = {}
    coeff = Fraction(1)
    for v in range(len(g.genus)):
        lab = labels[v]
        if lab.is_zero():
            return Zero(total, n)
        flags = sorted(g.flags_at(v))
        if lab.n != len(flags) or genus_of(lab) != g.genus[v]:
            raise ArityError(f"label at vertex {v} has the wrong type")
        if isinstance(lab, GenusOneClass):
            vertex_wedges[v] = relabel(lab.wedge, {i + 1: f for i, f in enumerate(flags)})
        else:
            coeff *= lab.coeff
    if g.n_edges == 1:
        f, h = g.edges[0]
        if total == 0:
            return Commutative(n, coeff)
        v, w = g.flag_vertex[f], g.flag_vertex[h]
        if v == w:
            vec = {(): coeff}
        else:
            if g.genus[v] == 1:
                v, w, f, h = w, v, h, f
            fan = [x for x in g.flags_at(v) if x != f]
            vec = genus_one_into(vertex_wedges[w], h, fan)
            vec = {k: x * coeff for k, x in vec.items()}
        return GenusOneClass.from_wedge(n, relabel(vec, legno), wedge_degree(vec) or 0)
    cyc = cycle_structure(g)
    if cyc is None or any(g.genus):
        return Zero(total, n)
    verts, pairs = cyc
    k = len(verts)
    if k % 2 == 0:
        return Zero(1, n)
    cycle_flags = {x for p in pairs for x in p}
    slots = [[legno[f] for f in sorted(g.flags_at(v)) if f not in cycle_flags] for v in verts]
    cyc_order = Orientation(tuple(min(p) for p in pairs), o.dual)
    sign = o.sign_against(cyc_order)
    return massey_polygon(slots, sign, n).scale(coeff)
