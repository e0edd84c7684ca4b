"""The co-Feynman transform of Com and of the genus <= 1 Lie-graph operad as based complexes.

A summand is a canonical graph together with an internal degree ``s``.  Its
labels are tensor products, over the genus-one vertices, of wedges in the
flags at that vertex, in the normal form that eliminates the vertex's
largest flag.  Labels are paired with the standard edge order of the
canonical graph, and the summand is the quotient by the twisted
automorphism action: for each generator ``phi`` the vector
``x - sgn_E(phi) phi_* x`` is a relation.  Basis vectors are the label keys
that are not pivots of the relation echelon, so ``coordinates`` is a
reduction followed by a lookup.

The differential sums, over every nest whose operation is nonzero (single
edges, and odd cycles through genus-zero vertices), the contracted graph
with the composed label, with the nest's edges moved to the end of the
edge order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .graphs import (GraphIsomorphism, ModularGraph, Nest, _canonical_unchecked, all_genus_zero,
                     automorphism_generators, canonical_form, contract_nest, enumerate_graphs,
                     no_loops, no_simple_loops, theta, wheel)
from .hlie import Wedge, genus_one_into, polygon_value, reduce_mod_sum, relabel, x_class
from .linalg import ChainComplexSlice, Echelon, RationalMatrix, add_into, sort_sign
from .orientation import Orientation, shuffle_sign

LabelKey = Tuple[Tuple[int, ...], ...]


class Operad(str, Enum):
    COM = "com"
    HLIE = "hlie"


class ClosureError(RuntimeError):
    """A differential term landed on a graph outside a filtered complex."""


@dataclass(frozen=True)
class ComplexOptions:
    no_loops: bool = False
    no_simple_loops: bool = False

    def accepts(self, g: ModularGraph) -> bool:
        if self.no_loops and not no_loops(g):
            return False
        if self.no_simple_loops and not no_simple_loops(g):
            return False
        return True


# ------------------------------------------------------------------ labels

def genus_one_vertices(g: ModularGraph) -> List[int]:
    return [v for v, x in enumerate(g.genus) if x == 1]


def label_keys(g: ModularGraph, operad: Operad, s: int) -> List[LabelKey]:
    """Normal-form label monomials of internal degree ``s``."""
    if operad is Operad.COM:
        return [()] if s == 0 and all_genus_zero(g) else []
    if any(x >= 2 for x in g.genus):
        return []
    per_vertex = []
    for v in genus_one_vertices(g):
        free = sorted(g.flags_at(v))[:-1]
        per_vertex.append([c for d in range(0, len(free) + 1, 2) for c in combinations(free, d)])
    return [k for k in product(*per_vertex) if sum(map(len, k)) == s]


def max_internal_degree(g: ModularGraph, operad: Operad) -> int:
    if operad is Operad.COM:
        return 0
    return sum(((len(g.flags_at(v)) - 1) // 2) * 2 for v in genus_one_vertices(g))


def transport_label(parts: Sequence[Mapping[tuple, Fraction]], source_vertices: Sequence[int],
                    phi_vertex: Callable[[int], int], phi_flag: Callable[[int], int],
                    target: ModularGraph) -> Dict[LabelKey, Fraction]:
    """Push per-vertex wedges through an isomorphism and expand the tensor product in normal form.

    ``parts[i]`` lives at ``source_vertices[i]``; the result is keyed by the
    target's genus-one vertices in increasing order.
    """
    by_target: Dict[int, Wedge] = {}
    for vec, v in zip(parts, source_vertices):
        w = phi_vertex(v)
        moved = relabel(vec, {f: phi_flag(f) for k in vec for f in k})
        by_target[w] = reduce_mod_sum(moved, target.flags_at(w))
    order = genus_one_vertices(target)
    if sorted(by_target) != order:
        raise ValueError("genus-one vertices do not match")
    out: Dict[LabelKey, Fraction] = {}
    for pick in product(*(by_target[w].items() for w in order)):
        c = Fraction(1)
        for _, x in pick:
            c *= x
        if c:
            add_into(out, {tuple(k for k, _ in pick): c})
    return out


def act(g: ModularGraph, phi: GraphIsomorphism, key: LabelKey) -> Dict[LabelKey, Fraction]:
    """``phi_*`` on one label monomial of ``g`` (automorphism), without the orientation sign."""
    verts = genus_one_vertices(g)
    parts = [{k: Fraction(1)} for k in key]
    return transport_label(parts, verts, lambda v: phi.vertex_map[v], lambda f: phi.flag_map[f], g)


@dataclass
class SummandBasis:
    """Coinvariant label basis of one canonical graph in one internal degree."""

    graph: ModularGraph
    operad: Operad
    degree: int
    keys: List[LabelKey]
    relations: Echelon
    basis: List[int]

    @property
    def orientation(self) -> Orientation:
        return Orientation.standard(self.graph, dual=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.graph.n_edges, self.degree

    def key_index(self, key: LabelKey) -> int:
        return self._index[key]

    def __post_init__(self):
        self._index = {k: i for i, k in enumerate(self.keys)}
        self._pos = {c: i for i, c in enumerate(self.basis)}

    def coordinates(self, vec: Mapping[LabelKey, Fraction]) -> Dict[int, Fraction]:
        red = self.relations.reduce({self._index[k]: x for k, x in vec.items()})
        return {self._pos[c]: x for c, x in red.items()}

    def representative(self, b: int) -> LabelKey:
        return self.keys[self.basis[b]]

    @classmethod
    def build(cls, g: ModularGraph, operad: Operad, s: int) -> "SummandBasis":
        keys = label_keys(g, operad, s)
        index = {k: i for i, k in enumerate(keys)}
        ech = Echelon()
        if keys:
            edge_index = {}
            for e, (f, p) in enumerate(g.edges):
                edge_index[f] = edge_index[p] = e
            for phi in automorphism_generators(g):
                sgn = phi.edge_sign(g, g)
                for k in keys:
                    rel = {index[k]: Fraction(1)}
                    for k2, x in act(g, phi, k).items():
                        add_into(rel, {index[k2]: -sgn * x})
                    if rel:
                        ech.add(rel)
        basis = [c for c in range(len(keys)) if c not in ech.rows]
        return cls(g, operad, s, keys, ech, basis)

    def averaged_dimension(self) -> int:
        """Rank of the twisted averaging projector; an independent count of ``dim``."""
        from .graphs import automorphisms
        auts = automorphisms(self.graph)
        cols = []
        for k in self.keys:
            col: Dict[int, Fraction] = {}
            for phi in auts:
                sgn = phi.edge_sign(self.graph, self.graph)
                for k2, x in act(self.graph, phi, k).items():
                    add_into(col, {self._index[k2]: sgn * x})
            cols.append(col)
        return len(Echelon(cols))


# ------------------------------------------------------------------ chains

@dataclass
class LabeledChain:
    """A chain: ``{(canonical graph, internal degree, basis index): coefficient}``."""

    g: int
    n: int
    operad: Operad
    terms: Dict[Tuple[ModularGraph, int, int], Fraction] = field(default_factory=dict)

    def add(self, graph: ModularGraph, s: int, b: int, x) -> None:
        add_into(self.terms, {(graph, s, b): Fraction(x)})

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> List[Tuple[int, int]]:
        return sorted({(gr.n_edges, s) for gr, s, _ in self.terms})

    def scale(self, c) -> "LabeledChain":
        return LabeledChain(self.g, self.n, self.operad, {k: x * c for k, x in self.terms.items() if x * c})

    def __add__(self, other: "LabeledChain") -> "LabeledChain":
        out = LabeledChain(self.g, self.n, self.operad, dict(self.terms))
        add_into(out.terms, other.terms)
        return out

    def to_dict(self) -> dict:
        terms = []
        for (gr, s, b), x in sorted(self.terms.items(), key=lambda t: (t[0][0].n_edges, t[0][1], t[0][0].to_json(), t[0][2])):
            terms.append({"graph": gr.to_dict(), "orientation": Orientation.standard(gr, True).to_list(gr),
                          "degree": s, "basis_index": b, "coeff": f"{x.numerator}/{x.denominator}"})
        return {"g": self.g, "n": self.n, "operad": self.operad.value, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "LabeledChain":
        out = cls(d["g"], d["n"], Operad(d.get("operad", "hlie")))
        for t in d["terms"]:
            gr = ModularGraph.from_dict(t["graph"])
            canon, phi = canonical_form(gr)
            if canon != gr:
                raise ValueError("chain terms must be stored on canonical graphs")
            order = tuple(min(p) for p in t["orientation"])
            sign = Orientation(order, True).sign_against(Orientation.standard(gr, True))
            out.add(gr, t.get("degree", 0), t["basis_index"], sign * Fraction(t["coeff"]))
        return out


# -------------------------------------------------------------- contractions

@dataclass(frozen=True)
class NestKind:
    """How the nested piece is evaluated: ``edge`` (one non-loop edge), ``loop`` or ``polygon``."""

    name: str
    data: tuple = ()


@dataclass
class Contraction:
    """Everything label-independent about contracting one nest of one summand graph."""

    nest_edges: Tuple[int, ...]
    kind: NestKind
    target: ModularGraph
    sign: int
    vertex_map: Tuple[int, ...]  # source vertex -> target vertex (nest vertices -> new vertex)
    flag_map: Dict[int, int]     # surviving source flag -> target flag
    new_vertex: int


def simple_odd_cycles(g: ModularGraph, genus_zero_only: bool = True) -> List[List[Tuple[int, int]]]:
    """Odd simple cycles of length >= 3 as lists of directed flag pairs ``(out, in)`` in cyclic order."""
    nv = g.n_vertices
    out_flags: List[List[Tuple[int, int]]] = [[] for _ in range(nv)]
    for f, p in g.edges:
        a, b = g.flag_vertex[f], g.flag_vertex[p]
        if a != b:
            out_flags[a].append((f, p))
            out_flags[b].append((p, f))
    ok = [not genus_zero_only or g.genus[v] == 0 for v in range(nv)]
    found: Dict[frozenset, List[Tuple[int, int]]] = {}

    def dfs(start, v, path, visited):
        for f, p in out_flags[v]:
            w = g.flag_vertex[p]
            if w == start and len(path) >= 2:
                cyc = path + [(f, p)]
                if len(cyc) % 2 == 1:
                    key = frozenset(min(x) for x in cyc)
                    found.setdefault(key, cyc)
            elif w > start and ok[w] and w not in visited:
                visited.add(w)
                dfs(start, w, path + [(f, p)], visited)
                visited.discard(w)

    for s in range(nv):
        if ok[s]:
            dfs(s, s, [], {s})
    return [found[k] for k in sorted(found, key=sorted)]


def operation_nests(g: ModularGraph, operad: Operad, one_edge_only: bool = False
                    ) -> List[Tuple[Tuple[int, ...], NestKind]]:
    """Nests whose operation can be nonzero, as (sorted edge keys, kind)."""
    out = []
    for f, p in g.edges:
        a, b = g.flag_vertex[f], g.flag_vertex[p]
        if a == b:
            if operad is Operad.HLIE and g.genus[a] == 0:
                out.append(((f,), NestKind("loop", (f, p))))
        elif operad is Operad.COM:
            out.append(((f,), NestKind("edge", (f, p))))
        elif g.genus[a] + g.genus[b] <= 1:
            out.append(((f,), NestKind("edge", (f, p))))
    if operad is Operad.HLIE and not one_edge_only:
        for cyc in simple_odd_cycles(g):
            keys = tuple(sorted(min(x) for x in cyc))
            out.append((keys, NestKind("polygon", tuple(cyc))))
    if g.n_legs == 0:
        out = [x for x in out if len(x[0]) < g.n_edges]
    return out


class DifferentialEngine:
    """Caches canonical forms, summands and contractions for one operad."""

    def __init__(self, operad: Operad, options: ComplexOptions = ComplexOptions()):
        self.operad = operad
        self.options = options
        self._summands: Dict[Tuple[ModularGraph, int], SummandBasis] = {}
        self._contractions: Dict[Tuple[ModularGraph, bool], List[Contraction]] = {}

    def summand(self, g: ModularGraph, s: int) -> SummandBasis:
        key = (g, s)
        sb = self._summands.get(key)
        if sb is None:
            sb = SummandBasis.build(g, self.operad, s)
            self._summands[key] = sb
        return sb

    def contractions(self, g: ModularGraph, one_edge_only: bool = False) -> List[Contraction]:
        key = (g, one_edge_only)
        if key in self._contractions:
            return self._contractions[key]
        std = [f for f, _ in g.edges]
        out = []
        for edges, kind in operation_nests(g, self.operad, one_edge_only):
            nest = Nest.from_edges(g, [(f, g.partner[f]) for f in edges])
            nc = contract_nest(g, nest, check=False)
            canon, w = _canonical_unchecked(nc.quotient)
            eps = shuffle_sign(std, edges)
            rest = [e for e in std if e not in set(edges)]
            moved = []
            for e in rest:
                t = w.flag_map[nc.flag_map[e]]
                moved.append(min(t, canon.partner[t]))
            qsign = Orientation(tuple(moved)).sign_against(Orientation.standard(canon))
            vmap = tuple(w.vertex_map[nc.vertex_map[v]] for v in range(g.n_vertices))
            fmap = {f: w.flag_map[t] for f, t in nc.flag_map.items()}
            out.append(Contraction(edges, kind, canon, eps * qsign, vmap, fmap, w.vertex_map[nc.new_vertex]))
        self._contractions[key] = out
        return out

    def apply_to_key(self, g: ModularGraph, key: LabelKey, c: Contraction
                     ) -> Tuple[int, Dict[LabelKey, Fraction]]:
        """Contract one label monomial along ``c``; returns (target degree, label vector on the target)."""
        verts = genus_one_vertices(g)
        parts: Dict[int, Wedge] = {v: {k: Fraction(1)} for v, k in zip(verts, key)}
        kind = c.kind
        nest_verts = {g.flag_vertex[f] for e in c.nest_edges for f in (e, g.partner[e])}
        new_part: Optional[Wedge] = None
        if kind.name == "loop":
            new_part = {(): Fraction(1)}
        elif kind.name == "edge":
            f, p = kind.data
            a, b = g.flag_vertex[f], g.flag_vertex[p]
            if g.genus[a] + g.genus[b] == 1:
                if g.genus[a] == 1:
                    a, b, f, p = b, a, p, f
                fan = [x for x in g.flags_at(a) if x != f]
                new_part = genus_one_into(parts.pop(b), p, fan)
        else:
            cyc = kind.data
            cyc_flags = {x for pair in cyc for x in pair}
            slots = [[x for x in g.flags_at(g.flag_vertex[out]) if x not in cyc_flags] for out, _ in cyc]
            order = Orientation(tuple(sorted(c.nest_edges)))
            sign = order.sign_against(Orientation(tuple(min(x) for x in cyc)))
            new_part = polygon_value(slots, sign)
        src_parts, src_verts = [], []
        for v in verts:
            if v in parts and v not in nest_verts:
                src_parts.append(parts[v])
                src_verts.append(v)
        if new_part is not None:
            if not new_part:
                return 0, {}
            src_parts.append(new_part)
            src_verts.append(-1)
        vmap = lambda v: c.new_vertex if v == -1 else c.vertex_map[v]
        vec = transport_label(src_parts, src_verts, vmap, lambda f: c.flag_map[f], c.target)
        s = sum(len(k) for k in key) + len(c.nest_edges) - 1
        return s, {k: x * c.sign for k, x in vec.items()}

    def differential_of_basis(self, g: ModularGraph, s: int, b: int, one_edge_only: bool = False
                              ) -> Dict[Tuple[ModularGraph, int, int], Fraction]:
        sb = self.summand(g, s)
        key = sb.representative(b)
        out: Dict[Tuple[ModularGraph, int, int], Fraction] = {}
        for c in self.contractions(g, one_edge_only):
            t, vec = self.apply_to_key(g, key, c)
            if not vec:
                continue
            tb = self.summand(c.target, t)
            coords = tb.coordinates(vec)
            if not coords:
                continue
            if not self.options.accepts(c.target):
                raise ClosureError(f"term on a graph outside the filtered complex: {c.target.to_json()}")
            for i, x in coords.items():
                add_into(out, {(c.target, t, i): x})
        return out

    def differential(self, chain: LabeledChain, one_edge_only: bool = False) -> LabeledChain:
        out = LabeledChain(chain.g, chain.n, chain.operad)
        for (g, s, b), x in chain.terms.items():
            add_into(out.terms, self.differential_of_basis(g, s, b, one_edge_only), x)
        return out


_ENGINES: Dict[Tuple[Operad, ComplexOptions], DifferentialEngine] = {}


def engine(operad: Operad, options: ComplexOptions = ComplexOptions()) -> DifferentialEngine:
    key = (Operad(operad), options)
    if key not in _ENGINES:
        _ENGINES[key] = DifferentialEngine(Operad(operad), options)
    return _ENGINES[key]


def differential(c: LabeledChain, options: ComplexOptions = ComplexOptions()) -> LabeledChain:
    """The full differential, Massey terms included."""
    return engine(c.operad, options).differential(c)


def d1(c: LabeledChain, options: ComplexOptions = ComplexOptions()) -> LabeledChain:
    """The one-edge part of the differential."""
    return engine(c.operad, options).differential(c, one_edge_only=True)


# ----------------------------------------------------------------- complexes

@dataclass
class FeynmanComplex:
    operad: Operad
    g: int
    n: int
    options: ComplexOptions
    graphs: List[ModularGraph]
    summands: Dict[Tuple[int, int], List[SummandBasis]]

    @property
    def engine(self) -> DifferentialEngine:
        return engine(self.operad, self.options)

    def basis(self, r: int, s: int) -> List[Tuple[ModularGraph, int, int]]:
        return [(sb.graph, s, b) for sb in self.summands.get((r, s), []) for b in range(sb.dim)]

    def dims(self) -> Dict[Tuple[int, int], int]:
        return {rs: sum(sb.dim for sb in sbs) for rs, sbs in sorted(self.summands.items())}

    def total_basis(self, d: int) -> List[Tuple[ModularGraph, int, int]]:
        out = []
        for (r, s) in sorted(self.summands):
            if r + s == d:
                out += self.basis(r, s)
        return out

    def total_degrees(self) -> List[int]:
        return sorted({r + s for r, s in self.summands})

    def summand_of(self, g: ModularGraph, s: int) -> Optional[SummandBasis]:
        for sb in self.summands.get((g.n_edges, s), []):
            if sb.graph == g:
                return sb
        return None

    def matrix(self, source: Sequence, target: Sequence, one_edge_only: bool = False) -> RationalMatrix:
        """Matrix of the differential from the ``source`` basis into the ``target`` basis.

        Components outside ``target`` are ignored; use :meth:`total_matrix` for the full map.
        """
        tindex = {t: i for i, t in enumerate(target)}
        entries = {}
        eng = self.engine
        for col, (g, s, b) in enumerate(source):
            for t, x in eng.differential_of_basis(g, s, b, one_edge_only).items():
                if t in tindex:
                    entries[(tindex[t], col)] = x
        return RationalMatrix(len(target), len(source), entries)

    def total_matrix(self, d: int, one_edge_only: bool = False) -> RationalMatrix:
        source, target = self.total_basis(d), self.total_basis(d - 1)
        tindex = {t: i for i, t in enumerate(target)}
        entries = {}
        for col, (g, s, b) in enumerate(source):
            for t, x in self.engine.differential_of_basis(g, s, b, one_edge_only).items():
                if t not in tindex:
                    raise ClosureError(f"differential left the complex at {t[0].to_json()}")
                entries[(tindex[t], col)] = x
        return RationalMatrix(len(target), len(source), entries)

    def chain_slice(self, one_edge_only: bool = False) -> ChainComplexSlice:
        dims = {d: len(self.total_basis(d)) for d in self.total_degrees()}
        return ChainComplexSlice(dims, {d: self.total_matrix(d, one_edge_only) for d in dims})


def complex_graphs(operad: Operad, g: int, n: int, options: ComplexOptions = ComplexOptions(),
                   min_edges: int = 0, max_edges: Optional[int] = None) -> List[ModularGraph]:
    operad = Operad(operad)
    cap = 0 if operad is Operad.COM else 1
    gs = enumerate_graphs(g, n, max_vertex_genus=cap, min_edges=min_edges, max_edges=max_edges)
    return [x for x in gs if options.accepts(x)]


def build_complex(operad: Operad, g: int, n: int, options: ComplexOptions = ComplexOptions(),
                  min_edges: int = 0, max_edges: Optional[int] = None,
                  degrees: Optional[Iterable[int]] = None) -> FeynmanComplex:
    """One SummandBasis per contributing (graph, internal degree)."""
    if 2 * g + n < 3:
        raise ValueError(f"no stable graphs of type ({g}, {n})")
    operad = Operad(operad)
    eng = engine(operad, options)
    graphs = complex_graphs(operad, g, n, options, min_edges, max_edges)
    wanted = set(degrees) if degrees is not None else None
    summands: Dict[Tuple[int, int], List[SummandBasis]] = {}
    for gr in graphs:
        for s in range(0, max_internal_degree(gr, operad) + 1, 2):
            if wanted is not None and s not in wanted:
                continue
            sb = eng.summand(gr, s)
            if sb.dim:
                summands.setdefault((gr.n_edges, s), []).append(sb)
    return FeynmanComplex(operad, g, n, options, graphs, summands)


def check_dsquared(cx: FeynmanComplex, one_edge_only: bool = False) -> Optional[Tuple[int, int, int, Fraction]]:
    """First nonzero entry of the square of the differential as (degree, row, col, value), or None."""
    eng = cx.engine
    for d in cx.total_degrees():
        source = cx.total_basis(d)
        for col, (g, s, b) in enumerate(source):
            first = eng.differential_of_basis(g, s, b, one_edge_only)
            acc: Dict[Tuple[ModularGraph, int, int], Fraction] = {}
            for (g2, s2, b2), x in first.items():
                add_into(acc, eng.differential_of_basis(g2, s2, b2, one_edge_only), x)
            if acc:
                (tg, ts, tb), v = min(acc.items(), key=lambda t: (t[0][0].n_edges, t[0][1], t[0][2]))
                return d, col, tb, v
    return None


# ------------------------------------------------------------ named elements

def to_chain(graph: ModularGraph, order: Sequence[int], labels: Mapping[int, Wedge], s: int,
             operad: Operad, coeff=1) -> LabeledChain:
    """Chain of ``graph`` (any layout) with edge order ``order`` (edge keys) and per-vertex wedges."""
    operad = Operad(operad)
    canon, w = canonical_form(graph)
    moved = []
    for e in order:
        t = w.flag_map[e]
        moved.append(min(t, canon.partner[t]))
    sign = Orientation(tuple(moved)).sign_against(Orientation.standard(canon))
    verts = genus_one_vertices(graph)
    vec = transport_label([labels[v] for v in verts], verts, lambda v: w.vertex_map[v],
                          lambda f: w.flag_map[f], canon)
    sb = engine(operad).summand(canon, s)
    out = LabeledChain(graph.total_genus, graph.n_legs, operad)
    for b, x in sb.coordinates({k: x * sign * coeff for k, x in vec.items()}).items():
        out.add(canon, s, b, x)
    return out


def omega(j: int, operad: Operad = Operad.COM) -> LabeledChain:
    """The wheel with ``2j+1`` spokes; edge order spokes first, then rim edges."""
    if j < 1:
        raise ValueError("j >= 1")
    g, edges = wheel(2 * j + 1)
    order = [g.n_legs + 2 * k for k in range(len(edges))]
    return to_chain(g, order, {}, 0, operad)


def theta_graph(j: int) -> ModularGraph:
    return canonical_form(theta(j))[0]


def beta(j: int) -> LabeledChain:
    """The theta graph labelled by ``m_2`` at the genus-0 vertex and ``x_{2j+1}`` at the genus-1 vertex.

    Leg ``a_i`` of ``x`` (i = 1, 2, 3) goes to the i-th connecting edge and
    the loop pair ``2(i+1), 2(i+1)+1`` to the two flags of the i-th loop.
    """
    g = theta(j)
    x = x_class(j)
    # flags at vertex 1: odd flags of the three connecting edges, then loop flags
    conn = [2 * k + 1 for k in range(3)]
    loops = [f for k in range(3, g.n_edges) for f in (2 * k, 2 * k + 1)]
    leg_to_flag = {i + 1: f for i, f in enumerate(conn + loops)}
    label = relabel(x.wedge, leg_to_flag)
    order = [2 * k for k in range(g.n_edges)]
    return to_chain(g, order, {1: label}, 2 * j, Operad.HLIE)


def project(c: LabeledChain, graph: ModularGraph, s: Optional[int] = None) -> Dict[int, Fraction]:
    """Coefficients of ``c`` on the summand of ``graph`` (canonicalized)."""
    canon = canonical_form(graph)[0]
    return {b: x for (g, t, b), x in c.terms.items() if g == canon and (s is None or t == s)}


# ------------------------------------------------------------------ GC2

def gc2_slice(g: int, degrees: Optional[Iterable[int]] = None) -> Tuple[ChainComplexSlice, Dict[int, List[ModularGraph]]]:
    """Loopless genus-0-vertex graphs of loop order ``g``, graded by ``2g - E``.

    The map is edge contraction, which raises the degree by one, so the
    slice has ``step = -1``.  Returns the slice and the graph basis per degree.
    """
    if g < 2:
        raise ValueError("g >= 2")
    cx = build_complex(Operad.COM, g, 0, ComplexOptions(no_loops=True))
    basis: Dict[int, List[Tuple[ModularGraph, int, int]]] = {}
    for (r, s), sbs in sorted(cx.summands.items()):
        basis.setdefault(2 * g - r, []).extend((sb.graph, s, b) for sb in sbs for b in range(sb.dim))
    wanted = set(degrees) if degrees is not None else set(basis)
    dims = {d: len(basis.get(d, [])) for d in wanted | {d + 1 for d in wanted} | {d - 1 for d in wanted}}
    maps = {}
    for d in sorted(dims):
        if dims.get(d) and dims.get(d + 1):
            maps[d] = cx.matrix(basis[d], basis[d + 1])
    graphs = {d: [t[0] for t in basis.get(d, [])] for d in dims}
    return ChainComplexSlice(dims, maps, step=-1), graphs


def check_well_defined(cx: FeynmanComplex, one_edge_only: bool = False) -> Optional[Tuple[ModularGraph, LabelKey]]:
    """Check that the differential kills every automorphism relation ``x - sgn phi_* x``.

    Returns the first (graph, label key) where it does not, else None.
    """
    eng = cx.engine

    def d_key(g, s, key):
        acc: Dict[Tuple[ModularGraph, int, int], Fraction] = {}
        for c in eng.contractions(g, one_edge_only):
            t, vec = eng.apply_to_key(g, key, c)
            if vec:
                for i, x in eng.summand(c.target, t).coordinates(vec).items():
                    add_into(acc, {(c.target, t, i): x})
        return acc

    for g in cx.graphs:
        for s in range(0, max_internal_degree(g, cx.operad) + 1, 2):
            keys = label_keys(g, cx.operad, s)
            gens = automorphism_generators(g)
            for k in keys:
                base = d_key(g, s, k)
                for phi in gens:
                    sgn = phi.edge_sign(g, g)
                    acc = dict(base)
                    for k2, x in act(g, phi, k).items():
                        add_into(acc, d_key(g, s, k2), -sgn * x)
                    if acc:
                        return g, k
    return None
