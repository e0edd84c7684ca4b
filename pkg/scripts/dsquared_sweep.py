"""Build each Feynman-transform complex, print its bigraded dimensions and check d^2 = 0.

    python scripts/dsquared_sweep.py            # the default list (about a minute)
    python scripts/dsquared_sweep.py hlie:1:4   # one complex
"""
import argparse
import sys
import time

from gcmassey.feynman import Operad, build_complex, check_dsquared

DEFAULT = ["hlie:1:3", "hlie:1:4", "hlie:1:5", "hlie:1:6", "hlie:3:0", "com:3:0", "com:4:0", "com:5:0"]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("cases", nargs="*", default=DEFAULT, help="operad:genus:legs")
    ap.add_argument("--one-edge-only", action="store_true")
    args = ap.parse_args()
    failed = 0
    for case in args.cases:
        op, g, n = case.split(":")
        t0 = time.perf_counter()
        cx = build_complex(Operad(op), int(g), int(n))
        bad = check_dsquared(cx, args.one_edge_only)
        dims = " ".join(f"({r},{s}):{d}" for (r, s), d in cx.dims().items())
        print(f"{case:10s} total {sum(cx.dims().values()):6d}  {'ok' if bad is None else bad}  "
              f"{time.perf_counter() - t0:6.1f}s  {dims}")
        failed += bad is not None
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
