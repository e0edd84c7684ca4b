"""Edge orientations: the determinant twist of a graph and its signs."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .graphs import GraphIsomorphism, ModularGraph, automorphisms
from .linalg import Echelon, permutation_sign


@dataclass(frozen=True)
class Orientation:
    """A total order on the edges of ``graph``; edges are named by their smaller flag.

    ``dual`` selects the degree convention: the top exterior power of the
    edges sits in degree ``+|E|``, its dual in ``-|E|``.  Otherwise the two
    are handled identically.
    """

    edge_order: Tuple[int, ...]
    dual: bool = False

    @property
    def degree(self) -> int:
        return -len(self.edge_order) if self.dual else len(self.edge_order)

    @classmethod
    def standard(cls, g: ModularGraph, dual: bool = False) -> "Orientation":
        return cls(tuple(f for f, _ in g.edges), dual)

    def check(self, g: ModularGraph) -> None:
        if sorted(self.edge_order) != [f for f, _ in g.edges]:
            raise ValueError("orientation is not an ordering of the graph's edges")

    def sign_against(self, other: "Orientation") -> int:
        """``self = sign * other`` in the exterior power."""
        pos = {e: i for i, e in enumerate(other.edge_order)}
        return permutation_sign([pos[e] for e in self.edge_order])

    def normalized(self) -> Tuple[int, "Orientation"]:
        """(sign, sorted orientation) with ``self = sign * sorted``."""
        std = Orientation(tuple(sorted(self.edge_order)), self.dual)
        return self.sign_against(std), std

    def to_list(self, g: ModularGraph) -> List[List[int]]:
        return [[f, g.partner[f]] for f in self.edge_order]


def push_forward(iso: GraphIsomorphism, source: ModularGraph, target: ModularGraph,
                 o: Orientation) -> Orientation:
    def key(f):
        a = iso.flag_map[f]
        return min(a, target.partner[a])
    return Orientation(tuple(key(f) for f in o.edge_order), o.dual)


def iso_sign(iso: GraphIsomorphism, source: ModularGraph, target: ModularGraph,
             o: Orientation, target_orientation: Optional[Orientation] = None) -> int:
    """Sign comparing the pushed-forward edge order with the target's order."""
    if target_orientation is None:
        target_orientation = Orientation.standard(target, o.dual)
    return push_forward(iso, source, target, o).sign_against(target_orientation)


def shuffle_sign(order: Sequence[int], tail: Sequence[int]) -> int:
    """Sign of moving the items of ``tail`` (in the order given) behind the rest of ``order``."""
    tail_set = set(tail)
    rest = [e for e in order if e not in tail_set]
    pos = {e: i for i, e in enumerate(order)}
    return permutation_sign([pos[e] for e in rest + list(tail)])


def contraction_orientation(o: Orientation, contracted_edges: Sequence[int]
                            ) -> Tuple[int, Orientation, Orientation]:
    """Factor ``o = sign * (quotient ^ nest)`` with the nest's edges last, in the given order."""
    if not set(contracted_edges) <= set(o.edge_order):
        raise ValueError("contracted edges are not edges of the oriented graph")
    tail = list(contracted_edges)
    rest = tuple(e for e in o.edge_order if e not in set(tail))
    return shuffle_sign(o.edge_order, tail), Orientation(rest, o.dual), Orientation(tuple(tail), o.dual)


LabelAction = Callable[[GraphIsomorphism], Union[int, Fraction, Mapping[int, Mapping[int, Fraction]]]]


def twisted_averaging_rank(g: ModularGraph, o: Orientation, label_action: LabelAction,
                           dim: int) -> int:
    """Rank of the averaging projector over Aut(g) on orientation x labels."""
    auts = automorphisms(g)
    proj: Dict[int, Dict[int, Fraction]] = {c: {} for c in range(dim)}
    for phi in auts:
        s = iso_sign(phi, g, g, o, o)
        act = label_action(phi)
        for c in range(dim):
            col = {c: Fraction(act)} if not isinstance(act, Mapping) else act.get(c, {})
            for r, x in col.items():
                proj[c][r] = proj[c].get(r, 0) + s * Fraction(x) / len(auts)
    return len(Echelon({r: x for r, x in col.items() if x} for col in proj.values()))


def vanishes_under_automorphisms(g: ModularGraph, o: Orientation, label_action: LabelAction,
                                 vector: Optional[Mapping[int, Fraction]] = None, dim: int = 1) -> bool:
    """True iff averaging over Aut(g) kills the oriented labelled class.

    With ``vector=None`` the question is whether the whole label space dies.
    ``label_action(phi)`` returns a scalar (one-dimensional labels) or a
    sparse matrix ``{column: {row: value}}``.
    """
    if vector is None:
        return twisted_averaging_rank(g, o, label_action, dim) == 0
    auts = automorphisms(g)
    out: Dict[int, Fraction] = {}
    for phi in auts:
        s = iso_sign(phi, g, g, o, o)
        act = label_action(phi)
        for c, x in vector.items():
            col = {c: Fraction(act)} if not isinstance(act, Mapping) else act.get(c, {})
            for r, y in col.items():
                out[r] = out.get(r, 0) + s * x * y
    return not any(out.values())
