"""Ranks of the loopless commutative graph complex by loop order and degree (CSV)."""
import argparse

from gcmassey.feynman import gc2_slice
from gcmassey.linalg import homology_rank


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--genus", type=int, nargs="+", default=[3, 4, 5])
    args = ap.parse_args()
    print("genus,degree,dim,rank")
    for g in args.genus:
        sl, _ = gc2_slice(g)
        for d in sorted(sl.dims):
            if sl.dims[d]:
                print(f"{g},{d},{sl.dims[d]},{homology_rank(sl, d)}")


if __name__ == "__main__":
    main()
