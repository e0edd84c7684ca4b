"""The theta coefficient of the differential of the wheel, per j, with its per-nest breakdown."""
import argparse

from gcmassey.feynman import Operad, beta, differential, omega, project, theta_graph
from gcmassey.verify import kernel_identity, theta_nest_contributions


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-j", type=int, default=3)
    args = ap.parse_args()
    print("j,theta_coefficient,beta_coefficient,nestings,contributions,x_over_v")
    for j in range(1, args.max_j + 1):
        th = theta_graph(j)
        c = project(differential(omega(j, Operad.HLIE)), th, 2 * j).get(0, 0)
        b = project(beta(j), th, 2 * j).get(0, 0)
        contribs = [str(x) for _, x in theta_nest_contributions(j)]
        ratio = kernel_identity(j)["x_over_v"] if j >= 2 else ""
        print(f"{j},{c},{b},{len(contribs)},{' '.join(contribs)},{ratio}")


if __name__ == "__main__":
    main()
