"""Stable modular graphs: canonical forms, automorphisms, nests, enumeration.

A graph is stored flag-wise: ``flag_vertex[f]`` is the vertex a flag is
attached to, ``partner[f]`` its involution image (``partner[f] == f`` for a
leg), ``legs[i]`` the flag carrying leg label ``i + 1``.  Vertex and flag
identifiers are dense integers starting at 0.

Canonical graphs have a fixed flag layout: leg ``i`` is flag ``i - 1`` and
edge ``k`` (edges sorted by their endpoint pair) is the flag pair
``(n + 2k, n + 2k + 1)`` where ``n`` is the number of legs.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple


class GraphError(ValueError):
    pass


class StabilityError(GraphError):
    pass


@dataclass(frozen=True)
class AbstractGraph:
    vertex_count: int
    flag_vertex: Tuple[int, ...]
    partner: Tuple[int, ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.flag_vertex) != len(self.partner):
            raise GraphError("flag arrays disagree in length")
        for f, (v, p) in enumerate(zip(self.flag_vertex, self.partner)):
            if not 0 <= v < self.vertex_count:
                raise GraphError(f"flag {f} attached to missing vertex {v}")
            if not 0 <= p < len(self.partner) or self.partner[p] != f:
                raise GraphError(f"involution is not self-inverse at flag {f}")


@dataclass(frozen=True)
class ModularGraph:
    genus: Tuple[int, ...]
    flag_vertex: Tuple[int, ...]
    partner: Tuple[int, ...]
    legs: Tuple[int, ...]

    def __post_init__(self):
        AbstractGraph(len(self.genus), self.flag_vertex, self.partner)
        fixed = sorted(f for f, p in enumerate(self.partner) if p == f)
        if sorted(self.legs) != fixed:
            raise GraphError("leg labelling must be a bijection onto the fixed flags")
        if any(g < 0 for g in self.genus):
            raise GraphError("vertex genera must be nonnegative")
        val = self.valences
        for v, g in enumerate(self.genus):
            if 2 * g + val[v] < 3:
                raise StabilityError(f"vertex {v} (genus {g}, valence {val[v]}) is unstable")
        if not self._connected():
            raise GraphError("graph is disconnected")

    # -- basic structure -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.genus)

    @property
    def n_flags(self) -> int:
        return len(self.flag_vertex)

    @property
    def n_legs(self) -> int:
        return len(self.legs)

    @property
    def abstract(self) -> AbstractGraph:
        return AbstractGraph(self.n_vertices, self.flag_vertex, self.partner)

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Edges as ``(f, partner(f))`` with ``f`` the smaller flag, sorted by ``f``."""
        return tuple((f, p) for f, p in enumerate(self.partner) if f < p)

    @property
    def n_edges(self) -> int:
        return sum(1 for f, p in enumerate(self.partner) if f < p)

    @property
    def valences(self) -> List[int]:
        val = [0] * len(self.genus)
        for v in self.flag_vertex:
            val[v] += 1
        return val

    def flags_at(self, v: int) -> List[int]:
        return [f for f, w in enumerate(self.flag_vertex) if w == v]

    def is_loop(self, f: int) -> bool:
        p = self.partner[f]
        return p != f and self.flag_vertex[f] == self.flag_vertex[p]

    def loops_at(self, v: int) -> List[Tuple[int, int]]:
        return [(f, p) for f, p in self.edges if self.flag_vertex[f] == v and self.flag_vertex[p] == v]

    @property
    def betti(self) -> int:
        return self.n_edges - self.n_vertices + 1

    @property
    def total_genus(self) -> int:
        return self.betti + sum(self.genus)

    @property
    def type(self) -> Tuple[int, int]:
        return (self.total_genus, self.n_legs)

    def leg_label(self, f: int) -> Optional[int]:
        try:
            return self.legs.index(f) + 1
        except ValueError:
            return None

    def _connected(self) -> bool:
        adj: Dict[int, set] = {v: set() for v in range(self.n_vertices)}
        for f, p in enumerate(self.partner):
            adj[self.flag_vertex[f]].add(self.flag_vertex[p])
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.n_vertices

    def has_simple_loop(self) -> bool:
        val = self.valences
        return any(val[self.flag_vertex[f]] == 3 and self.genus[self.flag_vertex[f]] == 0
                   for f, p in self.edges if self.flag_vertex[f] == self.flag_vertex[p])

    def has_loop(self) -> bool:
        return any(self.flag_vertex[f] == self.flag_vertex[p] for f, p in self.edges)

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "genus": g} for v, g in enumerate(self.genus)],
            "flags": [{"id": f, "vertex": v} for f, v in enumerate(self.flag_vertex)],
            "edges": [[f, p] for f, p in self.edges],
            "legs": {str(i + 1): f for i, f in enumerate(self.legs)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "ModularGraph":
        verts = sorted(d["vertices"], key=lambda x: x["id"])
        if [x["id"] for x in verts] != list(range(len(verts))):
            raise GraphError("vertex ids must be 0..V-1")
        flags = sorted(d["flags"], key=lambda x: x["id"])
        if [x["id"] for x in flags] != list(range(len(flags))):
            raise GraphError("flag ids must be 0..F-1")
        partner = list(range(len(flags)))
        for a, b in d["edges"]:
            if partner[a] != a or partner[b] != b or a == b:
                raise GraphError(f"bad edge {a}-{b}")
            partner[a], partner[b] = b, a
        legs = d.get("legs", {})
        n = len(legs)
        if sorted(int(k) for k in legs) != list(range(1, n + 1)):
            raise GraphError("leg labels must be 1..n")
        return cls(tuple(x["genus"] for x in verts), tuple(x["vertex"] for x in flags),
                   tuple(partner), tuple(legs[str(i)] for i in range(1, n + 1)))

    @classmethod
    def from_json(cls, s: str) -> "ModularGraph":
        return cls.from_dict(json.loads(s))

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for v, g in enumerate(self.genus):
            lines.append(f'  v{v} [label="{v}:g{g}"];')
        for f, p in self.edges:
            lines.append(f"  v{self.flag_vertex[f]} -- v{self.flag_vertex[p]};")
        for i, f in enumerate(self.legs):
            lines.append(f'  l{i + 1} [shape=plaintext,label="{i + 1}"]; v{self.flag_vertex[f]} -- l{i + 1};')
        lines.append("}")
        return "\n".join(lines)


def build_graph(genus: Sequence[int], edges: Iterable[Tuple[int, int]], legs: Sequence[int] = (),
                check: bool = True) -> ModularGraph:
    """Graph from vertex genera, edges as vertex pairs, legs as the vertex of leg 1, 2, ...

    Flags are laid out as legs first, then two flags per edge in the given order.
    """
    edges = list(edges)
    n = len(legs)
    flag_vertex = list(legs)
    partner = list(range(n))
    for k, (a, b) in enumerate(edges):
        flag_vertex += [a, b]
        partner += [n + 2 * k + 1, n + 2 * k]
    g = ModularGraph.__new__(ModularGraph)
    object.__setattr__(g, "genus", tuple(genus))
    object.__setattr__(g, "flag_vertex", tuple(flag_vertex))
    object.__setattr__(g, "partner", tuple(partner))
    object.__setattr__(g, "legs", tuple(range(n)))
    if check:
        g.__post_init__()
    return g


def _raw(genus, flag_vertex, partner, legs) -> ModularGraph:
    g = ModularGraph.__new__(ModularGraph)
    object.__setattr__(g, "genus", tuple(genus))
    object.__setattr__(g, "flag_vertex", tuple(flag_vertex))
    object.__setattr__(g, "partner", tuple(partner))
    object.__setattr__(g, "legs", tuple(legs))
    return g


# ---------------------------------------------------------------------------
# isomorphisms


@dataclass(frozen=True)
class GraphIsomorphism:
    vertex_map: Tuple[int, ...]
    flag_map: Tuple[int, ...]

    def compose(self, first: "GraphIsomorphism") -> "GraphIsomorphism":
        """``self after first``."""
        return GraphIsomorphism(tuple(self.vertex_map[v] for v in first.vertex_map),
                                tuple(self.flag_map[f] for f in first.flag_map))

    def inverse(self) -> "GraphIsomorphism":
        vm = [0] * len(self.vertex_map)
        for a, b in enumerate(self.vertex_map):
            vm[b] = a
        fm = [0] * len(self.flag_map)
        for a, b in enumerate(self.flag_map):
            fm[b] = a
        return GraphIsomorphism(tuple(vm), tuple(fm))

    def edge_permutation(self, source: ModularGraph, target: ModularGraph) -> List[int]:
        """Image of each source edge index as a target edge index."""
        tindex = {}
        for k, (f, p) in enumerate(target.edges):
            tindex[f] = tindex[p] = k
        return [tindex[self.flag_map[f]] for f, _ in source.edges]

    def edge_sign(self, source: ModularGraph, target: ModularGraph) -> int:
        from .linalg import permutation_sign
        return permutation_sign(self.edge_permutation(source, target))

    @classmethod
    def identity(cls, g: ModularGraph) -> "GraphIsomorphism":
        return cls(tuple(range(g.n_vertices)), tuple(range(g.n_flags)))


def is_isomorphism(phi: GraphIsomorphism, g: ModularGraph, h: ModularGraph) -> bool:
    if sorted(phi.vertex_map) != list(range(h.n_vertices)) or len(phi.vertex_map) != g.n_vertices:
        return False
    if sorted(phi.flag_map) != list(range(h.n_flags)) or len(phi.flag_map) != g.n_flags:
        return False
    for f in range(g.n_flags):
        if phi.vertex_map[g.flag_vertex[f]] != h.flag_vertex[phi.flag_map[f]]:
            return False
        if phi.flag_map[g.partner[f]] != h.partner[phi.flag_map[f]]:
            return False
    if any(g.genus[v] != h.genus[phi.vertex_map[v]] for v in range(g.n_vertices)):
        return False
    return all(phi.flag_map[a] == b for a, b in zip(g.legs, h.legs))


# ---------------------------------------------------------------------------
# canonical form: colour refinement plus exhaustive individualisation


class _Search:
    def __init__(self, g: ModularGraph):
        self.g = g
        nv = g.n_vertices
        self.adj: List[Dict[int, int]] = [dict() for _ in range(nv)]
        self.loops = [0] * nv
        for f, p in g.edges:
            a, b = g.flag_vertex[f], g.flag_vertex[p]
            if a == b:
                self.loops[a] += 1
            else:
                self.adj[a][b] = self.adj[a].get(b, 0) + 1
                self.adj[b][a] = self.adj[b].get(a, 0) + 1
        legs_at: List[List[int]] = [[] for _ in range(nv)]
        for i, f in enumerate(g.legs):
            legs_at[g.flag_vertex[f]].append(i + 1)
        val = g.valences
        self.color0 = [(g.genus[v], val[v], self.loops[v], tuple(legs_at[v])) for v in range(nv)]
        self.leaves: List[Tuple[tuple, List[int]]] = []

    def refine(self, cell_of: List) -> List:
        ncells = len(set(cell_of))
        while True:
            sig = [(cell_of[v], tuple(sorted((cell_of[w], m) for w, m in self.adj[v].items())))
                   for v in range(len(cell_of))]
            keys = sorted(set(sig))
            rank = {k: i for i, k in enumerate(keys)}
            new = [rank[s] for s in sig]
            if len(keys) == ncells:
                return new
            cell_of, ncells = new, len(keys)

    def certificate(self, order: List[int]) -> tuple:
        g = self.g
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        genus = tuple(g.genus[v] for v in order)
        legs = tuple(pos[g.flag_vertex[f]] for f in g.legs)
        edges = []
        for f, p in g.edges:
            a, b = pos[g.flag_vertex[f]], pos[g.flag_vertex[p]]
            edges.append((a, b) if a <= b else (b, a))
        edges.sort()
        return (genus, legs, tuple(edges))

    def run(self) -> None:
        keys = sorted(set(self.color0))
        rank = {k: i for i, k in enumerate(keys)}
        self._search(self.refine([rank[c] for c in self.color0]))

    def _search(self, cell_of: List[int]) -> None:
        n = len(cell_of)
        counts = Counter(cell_of)
        if len(counts) == n:
            order = sorted(range(n), key=lambda v: cell_of[v])
            self.leaves.append((self.certificate(order), order))
            return
        target = min((c for c, k in counts.items() if k > 1), key=lambda c: (counts[c], c))
        for v in [w for w in range(n) if cell_of[w] == target]:
            # individualise v: it precedes the rest of its cell
            split = [2 * c + (1 if (c == target and w != v) else 0) for w, c in enumerate(cell_of)]
            self._search(self.refine(split))


def _edge_classes(g: ModularGraph, pos: Sequence[int]) -> Dict[Tuple[int, int], List[Tuple[int, int]]]:
    """Edges grouped by their (sorted) endpoint positions, flags oriented low-to-high."""
    classes: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for f, p in g.edges:
        a, b = pos[g.flag_vertex[f]], pos[g.flag_vertex[p]]
        if a > b:
            a, b, f, p = b, a, p, f
        classes.setdefault((a, b), []).append((f, p))
    return classes


def _relabel(g: ModularGraph, order: List[int]) -> Tuple[ModularGraph, GraphIsomorphism]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    n = g.n_legs
    flag_map = [0] * g.n_flags
    for i, f in enumerate(g.legs):
        flag_map[f] = i
    edges = []
    for (a, b), members in _edge_classes(g, pos).items():
        for f, p in members:
            edges.append((a, b, f, p))
    edges.sort()
    flag_vertex = [pos[g.flag_vertex[f]] for f in g.legs]
    partner = list(range(n))
    for k, (a, b, f, p) in enumerate(edges):
        flag_map[f] = n + 2 * k
        flag_map[p] = n + 2 * k + 1
        flag_vertex += [a, b]
        partner += [n + 2 * k + 1, n + 2 * k]
    canon = _raw([g.genus[v] for v in order], flag_vertex, partner, range(n))
    return canon, GraphIsomorphism(tuple(pos), tuple(flag_map))


def _search(g: ModularGraph) -> _Search:
    s = _Search(g)
    s.run()
    return s


def canonical_form(g: ModularGraph) -> Tuple[ModularGraph, GraphIsomorphism]:
    """Canonical representative of the isomorphism class of ``g`` and a witness ``g -> canonical``."""
    ModularGraph.__post_init__(g)
    return _canonical_unchecked(g)


def _canonical_unchecked(g: ModularGraph) -> Tuple[ModularGraph, GraphIsomorphism]:
    s = _search(g)
    cert, order = min(s.leaves, key=lambda x: x[0])
    return _relabel(g, order)


def certificate(g: ModularGraph) -> tuple:
    """Hashable complete isomorphism invariant."""
    return min(_search(g).leaves, key=lambda x: x[0])[0]


def is_canonical(g: ModularGraph) -> bool:
    return _canonical_unchecked(g)[0] == g


def vertex_automorphisms(g: ModularGraph) -> List[Tuple[int, ...]]:
    """All vertex permutations induced by automorphisms of ``g``."""
    s = _search(g)
    best = min(c for c, _ in s.leaves)
    orders = [o for c, o in s.leaves if c == best]
    base = orders[0]
    pos0 = [0] * len(base)
    for i, v in enumerate(base):
        pos0[v] = i
    return sorted({tuple(o[pos0[v]] for v in range(len(base))) for o in orders})


def _lift(g: ModularGraph, vperm: Sequence[int]) -> GraphIsomorphism:
    """One flag-level automorphism over a vertex automorphism."""
    ident = list(range(g.n_vertices))
    classes = _edge_classes(g, ident)
    fmap = list(range(g.n_flags))
    for f in g.legs:
        fmap[f] = f
    for (a, b), members in classes.items():
        ia, ib = vperm[a], vperm[b]
        if ia <= ib:
            targets = classes[(ia, ib)]
            for (f, p), (tf, tp) in zip(members, targets):
                fmap[f], fmap[p] = tf, tp
        else:
            targets = classes[(ib, ia)]
            for (f, p), (tf, tp) in zip(members, targets):
                fmap[f], fmap[p] = tp, tf
    return GraphIsomorphism(tuple(vperm), tuple(fmap))


def _local_generators(g: ModularGraph) -> List[GraphIsomorphism]:
    """Generators of the automorphisms fixing every vertex: parallel-edge swaps and loop flips."""
    ident = tuple(range(g.n_vertices))
    gens = []
    for (a, b), members in _edge_classes(g, ident).items():
        for (f1, p1), (f2, p2) in zip(members, members[1:]):
            fmap = list(range(g.n_flags))
            fmap[f1], fmap[f2], fmap[p1], fmap[p2] = f2, f1, p2, p1
            gens.append(GraphIsomorphism(ident, tuple(fmap)))
        if a == b and members:
            f, p = members[0]
            fmap = list(range(g.n_flags))
            fmap[f], fmap[p] = p, f
            gens.append(GraphIsomorphism(ident, tuple(fmap)))
    return gens


def automorphism_generators(g: ModularGraph) -> List[GraphIsomorphism]:
    """A generating set of Aut(g) (not minimal)."""
    gens = [_lift(g, vp) for vp in vertex_automorphisms(g) if list(vp) != list(range(g.n_vertices))]
    return gens + _local_generators(g)


def automorphisms(g: ModularGraph) -> List[GraphIsomorphism]:
    """The full automorphism group of ``g`` as flag-level isomorphisms, identity first."""
    ident = GraphIsomorphism.identity(g)
    gens = automorphism_generators(g)
    seen = {ident.flag_map: ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s.compose(x)
            if y.flag_map not in seen:
                seen[y.flag_map] = y
                queue.append(y)
    return [ident] + [seen[k] for k in sorted(seen) if k != ident.flag_map]


def find_isomorphism(g: ModularGraph, h: ModularGraph) -> Optional[GraphIsomorphism]:
    cg, wg = _canonical_unchecked(g)
    ch, wh = _canonical_unchecked(h)
    if cg != ch:
        return None
    return wh.inverse().compose(wg)


# ---------------------------------------------------------------------------
# nests


@dataclass(frozen=True)
class Nest:
    vertices: FrozenSet[int]
    flags: FrozenSet[int]

    @property
    def edge_flags(self) -> FrozenSet[int]:
        return self.flags

    @classmethod
    def from_edges(cls, g: ModularGraph, edges: Iterable[Tuple[int, int]]) -> "Nest":
        flags = set()
        verts = set()
        for f, p in edges:
            flags |= {f, p}
            verts |= {g.flag_vertex[f], g.flag_vertex[p]}
        return cls(frozenset(verts), frozenset(flags))

    def edges(self, g: ModularGraph) -> List[Tuple[int, int]]:
        return [(f, p) for f, p in g.edges if f in self.flags]


def check_nest(g: ModularGraph, n: Nest) -> None:
    if not n.vertices:
        raise GraphError("empty nest")
    for f in n.flags:
        if g.partner[f] == f:
            raise GraphError("nest contains a leg")
        if g.partner[f] not in n.flags or g.flag_vertex[f] not in n.vertices:
            raise GraphError("nest is not closed under adjacency and involution")
    if n.vertices == set(range(g.n_vertices)) and len(n.flags) == g.n_flags:
        raise GraphError("nest is not proper")
    # connectivity
    start = next(iter(n.vertices))
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for f in n.flags:
            if g.flag_vertex[f] == v:
                w = g.flag_vertex[g.partner[f]]
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
    if seen != set(n.vertices):
        raise GraphError("nest is disconnected")


def enumerate_nests(g: ModularGraph) -> List[Nest]:
    """All proper connected leg-free subgraphs with at least one edge.

    Single-vertex nests only carry the internal differential, which vanishes
    for every operad handled here, so they are omitted.
    """
    edges = list(g.edges)
    out = []
    for r in range(1, len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            n = Nest.from_edges(g, sub)
            if g.n_legs == 0 and r == len(edges):
                continue
            try:
                check_nest(g, n)
            except GraphError:
                continue
            out.append(n)
    return out


@dataclass(frozen=True)
class NestContraction:
    quotient: ModularGraph
    nest_graph: ModularGraph
    vertex_map: Tuple[int, ...]
    flag_map: Dict[int, int]
    new_vertex: int
    nest_flag_map: Dict[int, int]


def contract_nest(g: ModularGraph, n: Nest, check: bool = True) -> NestContraction:
    """Contract ``n`` to a single vertex placed last; also build the nested graph.

    ``flag_map`` sends surviving flags of ``g`` to flags of the quotient;
    ``nest_flag_map`` sends flags of ``g`` at the nest's vertices to flags of
    the nested graph, whose legs are numbered in the order of the
    corresponding quotient flags.
    """
    if check:
        check_nest(g, n)
    nv = n.vertices
    keep_v = [v for v in range(g.n_vertices) if v not in nv]
    vmap = [0] * g.n_vertices
    for i, v in enumerate(keep_v):
        vmap[v] = i
    new_v = len(keep_v)
    for v in nv:
        vmap[v] = new_v
    keep_f = [f for f in range(g.n_flags) if f not in n.flags]
    fmap = {f: i for i, f in enumerate(keep_f)}
    n_edges = len(n.flags) // 2
    new_genus = n_edges - len(nv) + 1 + sum(g.genus[v] for v in nv)
    genus = [g.genus[v] for v in keep_v] + [new_genus]
    flag_vertex = [vmap[g.flag_vertex[f]] for f in keep_f]
    partner = [fmap[g.partner[f]] for f in keep_f]
    legs = [fmap[f] for f in g.legs]
    quotient = _raw(genus, flag_vertex, partner, legs)
    # nested graph: its legs are the quotient flags at the new vertex, in order
    nverts = sorted(nv)
    nvmap = {v: i for i, v in enumerate(nverts)}
    outer = [f for f in keep_f if g.flag_vertex[f] in nv]
    inner = sorted(n.flags)
    nfmap = {}
    for i, f in enumerate(outer):
        nfmap[f] = i
    for i, f in enumerate(inner):
        nfmap[f] = len(outer) + i
    nflag_vertex = [nvmap[g.flag_vertex[f]] for f in outer + inner]
    npartner = list(range(len(outer))) + [nfmap[g.partner[f]] for f in inner]
    nested = _raw([g.genus[v] for v in nverts], nflag_vertex, npartner, range(len(outer)))
    if check:
        ModularGraph.__post_init__(quotient)
        ModularGraph.__post_init__(nested)
    return NestContraction(quotient, nested, tuple(vmap), fmap, new_v, nfmap)


# ---------------------------------------------------------------------------
# enumeration by vertex expansion


def corolla(genus: int, legs: int) -> ModularGraph:
    return build_graph([genus], [], [0] * legs)


def _flag_groups(g: ModularGraph, v: int):
    """Flags at ``v`` grouped up to local symmetry.

    Returns (legs, parallel classes to each other vertex, loops).
    """
    legs, par, loops = [], {}, []
    for f in g.flags_at(v):
        p = g.partner[f]
        if p == f:
            legs.append(f)
        elif g.flag_vertex[p] == v:
            if f < p:
                loops.append((f, p))
        else:
            par.setdefault(g.flag_vertex[p], []).append(f)
    return legs, list(par.values()), loops


def _flag_splits(g: ModularGraph, v: int) -> Iterator[Tuple[List[int], List[int]]]:
    """Ways to divide the flags at ``v`` between two new vertices, up to local symmetry."""
    legs, par, loops = _flag_groups(g, v)
    leg_choices = itertools.product([0, 1], repeat=len(legs))
    par_choices = [range(len(c) + 1) for c in par]
    q = len(loops)
    loop_choices = [(x, y, q - x - y) for x in range(q + 1) for y in range(q + 1 - x)]
    for lc in leg_choices:
        for pc in itertools.product(*par_choices):
            for (both_a, both_b, split) in loop_choices:
                a = [f for f, c in zip(legs, lc) if c == 0]
                b = [f for f, c in zip(legs, lc) if c == 1]
                for cls, k in zip(par, pc):
                    a += cls[:k]
                    b += cls[k:]
                for i, (f, p) in enumerate(loops):
                    if i < both_a:
                        a += [f, p]
                    elif i < both_a + both_b:
                        b += [f, p]
                    else:
                        a.append(f)
                        b.append(p)
                yield a, b


def expansions(g: ModularGraph, max_vertex_genus: Optional[int] = None,
               vertices: Optional[Iterable[int]] = None) -> Iterator[ModularGraph]:
    """Graphs with one more edge that contract onto ``g`` (possibly repeated up to isomorphism)."""
    nv = g.n_vertices
    for v in (range(nv) if vertices is None else vertices):
        gv = g.genus[v]
        for fa, fb in _flag_splits(g, v):
            for g1 in range(gv + 1):
                g2 = gv - g1
                if max_vertex_genus is not None and max(g1, g2) > max_vertex_genus:
                    continue
                if 2 * g1 + len(fa) + 1 < 3 or 2 * g2 + len(fb) + 1 < 3:
                    continue
                genus = list(g.genus) + [g2]
                genus[v] = g1
                flag_vertex = list(g.flag_vertex)
                for f in fb:
                    flag_vertex[f] = nv
                nf = g.n_flags
                flag_vertex += [v, nv]
                partner = list(g.partner) + [nf + 1, nf]
                yield _raw(genus, flag_vertex, partner, g.legs)
        if gv >= 1:
            nf = g.n_flags
            genus = list(g.genus)
            genus[v] = gv - 1
            yield _raw(genus, list(g.flag_vertex) + [v, v], list(g.partner) + [nf + 1, nf], g.legs)


GraphFilter = Callable[[ModularGraph], bool]


def all_genus_zero(g: ModularGraph) -> bool:
    return all(x == 0 for x in g.genus)


def no_loops(g: ModularGraph) -> bool:
    return not g.has_loop()


def no_simple_loops(g: ModularGraph) -> bool:
    return not g.has_simple_loop()


def edge_range(lo: int, hi: int) -> GraphFilter:
    return lambda g: lo <= g.n_edges <= hi


def enumerate_graphs_by_edges(genus: int, legs: int, max_vertex_genus: Optional[int] = None,
                              max_edges: Optional[int] = None) -> Dict[int, List[ModularGraph]]:
    """Canonical representatives of every stable graph of type (genus, legs), keyed by edge count.

    Starts from the corolla (or, when every vertex must have genus 0, from the
    one-vertex graph with ``genus`` loops) and expands vertices one edge at a
    time, deduplicating by canonical form.  Exhaustive because contracting any
    edge of a stable graph yields a stable graph of the same type.
    """
    if 2 * genus + legs < 3:
        raise StabilityError(f"no stable graphs of type ({genus}, {legs})")
    top = 3 * genus - 3 + legs
    if max_edges is not None:
        top = min(top, max_edges)
    if max_vertex_genus == 0:
        seed = build_graph([0], [(0, 0)] * genus, [0] * legs)
        cap: Optional[int] = 0
    else:
        seed = corolla(genus, legs)
        cap = None
    levels: Dict[int, List[ModularGraph]] = {}
    current = {certificate(seed): _canonical_unchecked(seed)[0]}
    e = seed.n_edges
    while e <= top:
        levels[e] = [current[k] for k in sorted(current)]
        if e == top:
            break
        nxt: Dict[tuple, ModularGraph] = {}
        for g in levels[e]:
            reps = _orbit_representatives(g)
            for h in expansions(g, cap, reps):
                s = _Search(h)
                s.run()
                cert, order = min(s.leaves, key=lambda x: x[0])
                if cert not in nxt:
                    nxt[cert] = _relabel(h, order)[0]
        current = nxt
        e += 1
    if max_vertex_genus is not None and max_vertex_genus > 0:
        levels = {k: [g for g in v if max(g.genus) <= max_vertex_genus] for k, v in levels.items()}
    return levels


def _orbit_representatives(g: ModularGraph) -> List[int]:
    seen = set()
    reps = []
    auts = vertex_automorphisms(g)
    for v in range(g.n_vertices):
        if v in seen:
            continue
        reps.append(v)
        seen |= {a[v] for a in auts}
    return reps


def enumerate_graphs(genus: int, legs: int, filter: Optional[GraphFilter] = None,
                     max_vertex_genus: Optional[int] = None, min_edges: int = 0,
                     max_edges: Optional[int] = None) -> List[ModularGraph]:
    """One canonical representative per isomorphism class of type (genus, legs)."""
    levels = enumerate_graphs_by_edges(genus, legs, max_vertex_genus, max_edges)
    out = []
    for e in sorted(levels):
        if e < min_edges:
            continue
        for g in levels[e]:
            if filter is None or filter(g):
                out.append(g)
    return out


# ---------------------------------------------------------------------------
# named graphs


def wheel(spokes: int) -> Tuple[ModularGraph, List[Tuple[int, int]]]:
    """Wheel with ``spokes`` rim vertices; vertex 0 is the hub.

    Edges are listed spokes first (hub to rim vertex i), then rim edges
    (rim vertex i to i+1); this list is the wheel's reference edge order.
    """
    k = spokes
    edges = [(0, i + 1) for i in range(k)] + [(i + 1, (i + 1) % k + 1) for i in range(k)]
    return build_graph([0] * (k + 1), edges), edges


def theta(j: int) -> ModularGraph:
    """Two vertices (genus 0 and genus 1) joined by three edges, 2j-2 loops at the genus-1 vertex.

    Flags: edge k < 3 is ``(2k, 2k+1)`` with the even flag at the genus-0
    vertex 0; loops follow.
    """
    return build_graph([0, 1], [(0, 1)] * 3 + [(1, 1)] * (2 * j - 2))
