"""Verification claims with machine-readable certificates.

Each ``verify_*`` function recomputes one claim from scratch and returns a
:class:`Certificate` whose verdict follows from its witness alone.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .feynman import (ComplexOptions, LabeledChain, Operad, beta, build_complex, check_dsquared,
                      engine, gc2_slice, omega, project, theta_graph)
from .graphs import build_graph, canonical_form, certificate
from .hlie import GenusOneClass, Wedge, massey_polygon, wedge_of, x_class
from .linalg import add_into, homology_rank, in_span, rank


@dataclass
class Certificate:
    claim: str
    params: Dict[str, object]
    verdict: str
    witness: Dict[str, object] = field(default_factory=dict)
    ms: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _timed(claim: str, params: dict, body: Callable[[], Tuple[bool, dict]]) -> Certificate:
    t0 = time.perf_counter()
    ok, witness = body()
    ms = int((time.perf_counter() - t0) * 1000)
    return Certificate(claim, params, "PASS" if ok else "FAIL", witness, ms)


# ------------------------------------------------------------------ wheel

def verify_wheel_cycle(j: int, negate: bool = False) -> Certificate:
    """The wheel with 2j+1 spokes is a cycle of B(Com)(2j+1, 0)."""
    if not 1 <= j <= 3:
        raise ValueError("j must be 1, 2 or 3")

    def body():
        w = omega(j, Operad.COM)
        if negate:
            w = w.scale(-1)
        d = engine(Operad.COM).differential(w)
        bad = [{"graph": g.to_dict(), "coeff": _frac(x)} for (g, s, b), x in list(d.terms.items())[:1]]
        return d.is_zero(), {"omega_terms": len(w.terms), "nonzero_terms": len(d.terms), "first_nonzero": bad}

    return _timed("wheel-cycle", {"j": j, "negate": negate}, body)


# ------------------------------------------------------------ theta coefficient

def theta_nest_contributions(j: int) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """Per-nest contributions of the differential of the wheel to the theta summand."""
    w = omega(j, Operad.HLIE)
    eng = engine(Operad.HLIE)
    th = theta_graph(j)
    out = []
    for (g, s, b), coeff in w.terms.items():
        key = eng.summand(g, s).representative(b)
        for c in eng.contractions(g):
            if c.target != th:
                continue
            t, vec = eng.apply_to_key(g, key, c)
            if not vec:
                continue
            coords = eng.summand(th, t).coordinates(vec)
            x = coords.get(0, Fraction(0)) * coeff
            if x:
                out.append((c.nest_edges, x))
    return out


def loop_pair(i: int) -> Tuple[int, int]:
    """The two legs of the i-th loop of theta, numbered as in x."""
    return 2 * (i + 1), 2 * (i + 1) + 1


def loop_sum(j: int, excluded: Sequence[int] = ()) -> Wedge:
    """S_I: the sum of wedges choosing one representative of every loop not in I, in loop order."""
    loops = [i for i in range(1, 2 * j - 1) if i not in set(excluded)]
    out: Wedge = {}
    for pick in product(*(loop_pair(i) for i in loops)):
        add_into(out, wedge_of(pick))
    return out


def _prefix(prefix: Sequence[int], vec: Wedge, sign: int = 1) -> Wedge:
    out: Wedge = {}
    for k, x in vec.items():
        add_into(out, wedge_of(tuple(prefix) + k, sign * x))
    return out


def kernel_vectors(j: int) -> Tuple[Wedge, Wedge]:
    """(w, v) in the wedge coordinates on 1..4j-1."""
    S = loop_sum(j)
    w: Wedge = {}
    for i in range(1, 2 * j - 1):
        add_into(w, _prefix((1, 2, 3), loop_sum(j, [i]), (-1) ** i))
    v: Wedge = {}
    for pre, sgn in (((1, 2), 1), ((1, 3), -1), ((2, 3), 1)):
        add_into(v, _prefix(pre, S, sgn))
    return w, v


def _cls(j: int, vec: Wedge) -> GenusOneClass:
    return GenusOneClass.from_wedge(4 * j - 1, vec, 2 * j)


def kernel_identity(j: int) -> Dict[str, object]:
    """Check (2j-2)v - 3w ~ 0, v !~ 0 and x proportional to v.

    Also records whether the three pair-prefixed terms of v equal the first
    triple term of w, and whether the signed triple terms all agree.
    """
    n = 4 * j - 1
    w, v = kernel_vectors(j)
    combo = add_into({k: (2 * j - 2) * x for k, x in v.items()}, w, -3)
    vc = _cls(j, v)
    S = loop_sum(j)
    c1 = [_cls(j, _prefix((1, 2), S)), _cls(j, _prefix((1, 3), S, -1)), _cls(j, _prefix((2, 3), S)),
          _cls(j, _prefix((1, 2, 3), loop_sum(j, [1]), -1))]
    pair_terms_agree = all(c == c1[0] for c in c1)
    base = _cls(j, _prefix((1, 2, 3), loop_sum(j, [1])))
    triple_terms_agree = all(_cls(j, _prefix((1, 2, 3), loop_sum(j, [i]), (-1) ** (i - 1))) == base
                 for i in range(1, 2 * j - 1))
    x = x_class(j)
    r = x.ratio(vc) if not vc.is_zero() else None
    return {
        "kernel_identity": _cls(j, combo).is_zero(),
        "v_nonzero": not vc.is_zero(),
        "pair_terms_agree": pair_terms_agree,
        "triple_terms_agree": triple_terms_agree,
        "x_over_v": _frac(r) if r is not None else None,
        "arity": n,
    }


def verify_theta_coefficient(j: int) -> Certificate:
    """The theta summand of the differential of the wheel is a nonzero multiple of beta."""
    if not 1 <= j <= 3:
        raise ValueError("j must be 1, 2 or 3")

    def body():
        th = theta_graph(j)
        d = engine(Operad.HLIE).differential(omega(j, Operad.HLIE))
        coeff = project(d, th, 2 * j).get(0, Fraction(0))
        b = project(beta(j), th, 2 * j).get(0, Fraction(0))
        dim = engine(Operad.HLIE).summand(th, 2 * j).dim
        contribs = theta_nest_contributions(j)
        equal = len({x for _, x in contribs}) == 1
        witness = {
            "theta_coefficient": _frac(coeff),
            "beta_coefficient": _frac(b),
            "coefficient_over_beta": _frac(coeff / b) if b else None,
            "theta_summand_dim": dim,
            "nestings": len(contribs),
            "nest_contributions": [_frac(x) for _, x in contribs],
            "equal_contributions": equal,
        }
        ok = coeff != 0 and b != 0 and dim == 1 and equal
        if j >= 2:
            ki = kernel_identity(j)
            witness.update(ki)
            ok = ok and ki["kernel_identity"] and ki["v_nonzero"] and ki["pair_terms_agree"] \
                and ki["triple_terms_agree"] and ki["x_over_v"] is not None
        return ok, witness

    return _timed("theta", {"j": j}, body)


# ------------------------------------------------------------ theta rows

def theta_row(j: int, s: int, simple_loop_free: bool = True, one_edge_only: bool = False) -> Dict[str, object]:
    """Sources of bidegree (4j+2-s, s) in B(HLie)(2j+1, 0) whose differential reaches beta."""
    g = 2 * j + 1
    r = 4 * j + 2 - s
    opts = ComplexOptions(no_simple_loops=simple_loop_free)
    cx = build_complex(Operad.HLIE, g, 0, opts, min_edges=r, max_edges=r, degrees=[s])
    th = theta_graph(j)
    eng = cx.engine
    hits = []
    for (gr, ss, b) in cx.basis(r, s):
        for (tg, ts, tb), x in eng.differential_of_basis(gr, ss, b, one_edge_only).items():
            if tg == th and ts == 2 * j:
                hits.append({"graph": gr.to_dict(), "basis_index": b, "coeff": _frac(x)})
    return {"bidegree": [r, s], "sources": len(cx.basis(r, s)), "nonzero_entries": len(hits),
            "first_nonzero": hits[:1]}


def verify_propzero(j: int, simple_loop_free: bool = True) -> Certificate:
    """The theta row of the one-edge differential on bidegree (2j+2, 2j) vanishes."""
    if not 1 <= j <= 3:
        raise ValueError("j must be 1, 2 or 3")

    def body():
        row = theta_row(j, 2 * j, simple_loop_free, one_edge_only=True)
        return row["nonzero_entries"] == 0, row

    return _timed("propzero", {"j": j, "simple_loop_free": simple_loop_free}, body)


def verify_deg0(j: int) -> Certificate:
    """Every positive internal degree of the simple-loop-free complex misses the theta summand."""
    if not 1 <= j <= 2:
        raise ValueError("j must be 1 or 2")

    def body():
        rows = [theta_row(j, s) for s in range(2, 2 * j + 1, 2)]
        return all(r["nonzero_entries"] == 0 for r in rows), {"rows": rows}

    return _timed("deg0", {"j": j}, body)


# ------------------------------------------------------------ nontriviality

def omega_coordinates(j: int, graphs: Sequence) -> Dict[int, Fraction]:
    w = omega(j, Operad.COM)
    index = {g: i for i, g in enumerate(graphs)}
    return {index[g]: x for (g, s, b), x in w.terms.items()}


def verify_nontriviality(j: int, route: str = "brute") -> Certificate:
    """The wheel class is a nonzero homology class in loop order 2j+1, degree 0."""
    if route == "brute":
        if j != 1:
            raise ValueError("the brute-force route is available for j = 1")

        def body():
            g = 2 * j + 1
            sl, graphs = gc2_slice(g, degrees=[0])
            vec = omega_coordinates(j, graphs[0])
            cyc = sl.boundary(0).apply(vec) if sl.dims.get(1) else {}
            incoming = sl.boundary(-1)
            boundary = in_span(vec, incoming) if incoming.cols else not vec
            h0 = homology_rank(sl, 0)
            witness = {"dims": {str(k): v for k, v in sorted(sl.dims.items())}, "is_cycle": not cyc,
                       "in_boundary_image": boundary, "h0": h0}
            return (not cyc) and (not boundary) and h0 >= 1, witness

        return _timed("nontrivial", {"j": j, "route": route}, body)

    if route != "pipeline":
        raise ValueError("route must be 'brute' or 'pipeline'")

    def body():
        parts = [verify_wheel_cycle(j), verify_theta_coefficient(j), verify_propzero(j), verify_deg0(j)]
        return all(p.passed for p in parts), {"parts": {p.claim: p.verdict for p in parts}}

    return _timed("nontrivial", {"j": j, "route": route}, body)


# ------------------------------------------------------------ d squared

def verify_dsquared(operad: str, g: int, n: int, one_edge_only: bool = False,
                    options: ComplexOptions = ComplexOptions()) -> Certificate:
    def body():
        cx = build_complex(Operad(operad), g, n, options)
        bad = check_dsquared(cx, one_edge_only)
        witness = {"dims": {f"{r},{s}": d for (r, s), d in cx.dims().items()}, "first_nonzero": None}
        if bad is not None:
            d, col, row, v = bad
            witness["first_nonzero"] = {"degree": d, "column": col, "row": row, "value": _frac(v)}
        return bad is None, witness

    return _timed("dsquared", {"operad": str(Operad(operad).value), "g": g, "n": n,
                               "one_edge_only": one_edge_only}, body)


# ------------------------------------------------------------ labelled polygons

def labeled_polygons(j: int):
    """X-labelled (2j+1)-gons: hub carries one a-leg and one leg of each loop.

    Vertex 0 is the non-trivalent vertex; vertices 1..2j run round the
    polygon.  Vertices 1 and 2j carry the other two a-legs, vertices
    2..2j-1 the partner leg of each loop.  Yields (graph, slots) with
    legs numbered as in x (a_i -> i, loop i -> 2(i+1), 2(i+1)+1).
    """
    k = 2 * j + 1
    nloops = 2 * j - 2
    edges = [(i, (i + 1) % k) for i in range(k)]
    for a_hub in (1, 2, 3):
        others = [a for a in (1, 2, 3) if a != a_hub]
        for a_first, a_last in permutations(others):
            for order in permutations(range(1, nloops + 1)):
                for reps in product((0, 1), repeat=nloops):
                    slots: List[List[int]] = [[] for _ in range(k)]
                    slots[0] = [a_hub] + [loop_pair(i)[r] for i, r in zip(range(1, nloops + 1), reps)]
                    slots[1] = [a_first]
                    slots[k - 1] = [a_last]
                    for pos, i in enumerate(order):
                        r = reps[i - 1]
                        slots[2 + pos] = [loop_pair(i)[1 - r]]
                    legs_at = {}
                    for v, s in enumerate(slots):
                        for l in s:
                            legs_at[l] = v
                    legs = [legs_at[l] for l in range(1, 4 * j)]
                    yield build_graph([0] * k, edges, legs), slots


def labeled_polygon_space(j: int) -> Dict[str, object]:
    """Dimension of the span of X-labelled polygons, and whether their Massey images reach x."""
    seen = {}
    images = []
    for g, slots in labeled_polygons(j):
        c = certificate(g)
        if c in seen:
            continue
        seen[c] = g
        images.append(massey_polygon(slots, 1, 4 * j - 1))
    x = x_class(j)
    from .hlie import subsets
    from .linalg import Echelon
    idx = {k: i for i, k in enumerate(subsets(4 * j - 1, 2 * j))}
    ech = Echelon({idx[k]: v for k, v in im.coords} for im in images)
    reaches = ech.contains({idx[k]: v for k, v in x.coords})
    return {"dim": len(seen), "image_rank": len(ech), "x_in_image": reaches}


def expected_polygon_dimension(j: int) -> int:
    from math import factorial
    return 6 * factorial(2 * j - 2) * 2 ** (2 * j - 2) // 2


CLAIMS = {
    "wheel-cycle": verify_wheel_cycle,
    "theta": verify_theta_coefficient,
    "propzero": verify_propzero,
    "deg0": verify_deg0,
    "nontrivial": verify_nontriviality,
    "dsquared": verify_dsquared,
}

DEFAULT_SUITE: List[Tuple[str, tuple]] = [
    ("wheel-cycle", (1,)), ("wheel-cycle", (2,)),
    ("theta", (1,)), ("theta", (2,)),
    ("propzero", (1,)), ("propzero", (2,)),
    ("deg0", (1,)), ("deg0", (2,)),
    ("nontrivial", (1, "brute")), ("nontrivial", (1, "pipeline")),
    ("dsquared", ("hlie", 1, 4)), ("dsquared", ("com", 4, 0)),
]

# j = 3 and the largest d^2 check: a few minutes on one core
SLOW_SUITE: List[Tuple[str, tuple]] = [
    ("wheel-cycle", (3,)), ("theta", (3,)), ("dsquared", ("hlie", 1, 6)),
]


def _run(task: Tuple[str, tuple]) -> Certificate:
    name, args = task
    return CLAIMS[name](*args)


def sort_certificates(certs: Sequence[Certificate]) -> List[Certificate]:
    return sorted(certs, key=lambda c: (c.claim, json.dumps(c.params, sort_keys=True)))


def verify_all(opt_in_slow: bool = False, jobs: int = 1) -> List[Certificate]:
    """Run the default suite (plus the slow one if asked); independent claims may run in parallel."""
    tasks = DEFAULT_SUITE + (SLOW_SUITE if opt_in_slow else [])
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            certs = list(pool.map(_run, tasks))
    else:
        certs = [_run(t) for t in tasks]
    return sort_certificates(certs)
