"""Escape-region boundaries for a family of Attacker-Defender half-separations.

Writes one ``x,y`` CSV per x_A and prints how each J* behaves just inside and
just outside the curve.
"""
import argparse
import os

import numpy as np

from atddg import game, region
from atddg.frame import ReducedState


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--alpha", type=float, default=0.7)
    p.add_argument("--x-A", type=float, nargs="+", default=[float(k) for k in range(1, 9)])
    p.add_argument("--y-max", type=float, default=8.0)
    p.add_argument("--n", type=int, default=161)
    p.add_argument("--out-dir", default="regions")
    args = p.parse_args()

    os.makedirs(args.out_dir, exist_ok=True)
    print(f"asymptote slope {region.asymptote_slope(args.alpha):.6f}")
    for x_A in args.x_A:
        b = region.boundary_samples(args.alpha, x_A, -args.y_max, args.y_max, args.n)
        path = os.path.join(args.out_dir, f"region_xA_{x_A:g}.csv")
        np.savetxt(path, b.samples, delimiter=",", header="x,y", comments="", fmt="%.12g")
        worst = 0.0
        for x, y in b.samples:
            J = game.solve(ReducedState(x_A, x, abs(y), args.alpha)).J_star
            worst = max(worst, abs(J))
        print(f"x_A={x_A:g}: {len(b.samples)} points -> {path}, max |J*| on curve {worst:.2e}")


if __name__ == "__main__":
    main()
