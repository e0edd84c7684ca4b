"""List the sources whose differential reaches the beta summand, bidegree by bidegree.

With the default j = 2 this prints the simple-loop-free sources of
bidegree (6, 4) that hit beta under the one-edge differential, with their
vertex genera, edges and coefficients, followed by the unfiltered count.
"""
import argparse

from gcmassey.feynman import ComplexOptions, Operad, build_complex, theta_graph


def describe(g) -> str:
    edges = [(g.flag_vertex[f], g.flag_vertex[p]) for f, p in g.edges]
    return f"genus {list(g.genus)} edges {edges}"


def audit(j: int, s: int, simple_loop_free: bool, one_edge_only: bool) -> None:
    r = 4 * j + 2 - s
    cx = build_complex(Operad.HLIE, 2 * j + 1, 0, ComplexOptions(no_simple_loops=simple_loop_free),
                       min_edges=r, max_edges=r, degrees=[s])
    th = theta_graph(j)
    basis = cx.basis(r, s)
    hits = 0
    print(f"-- bidegree ({r},{s}), simple-loop-free={simple_loop_free}, one-edge={one_edge_only}: "
          f"{len(basis)} sources")
    for gr, ss, b in basis:
        d = cx.engine.differential_of_basis(gr, ss, b, one_edge_only)
        coeff = sum(x for (tg, ts, _), x in d.items() if tg == th and ts == 2 * j)
        if coeff:
            hits += 1
            print(f"   {describe(gr)}  basis {b}  coefficient {coeff}")
    print(f"   {hits} sources hit beta")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--j", type=int, default=2)
    args = ap.parse_args()
    j = args.j
    audit(j, 2 * j, True, True)
    audit(j, 2 * j, False, True)
    for s in range(2, 2 * j + 1, 2):
        audit(j, s, True, False)


if __name__ == "__main__":
    main()
