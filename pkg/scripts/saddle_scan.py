"""Compare the analytic saddle point with the grid oracle on random escape states."""
import argparse
import time

import numpy as np

from atddg import game, oracle
from atddg.frame import ReducedState


def random_states(n, rng, lo, hi):
    out = []
    while len(out) < n:
        x_A, x_T, y_T = rng.uniform(lo, hi, 3)
        ab = game.critical_speed_ratio(ReducedState(x_A, x_T, y_T, 0.5))
        a = ab + (1.0 - ab) * rng.uniform()
        if ab < a < 1.0:
            out.append(ReducedState(x_A, x_T, y_T, a))
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, default=2001)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lo", type=float, default=0.1)
    p.add_argument("--hi", type=float, default=100.0)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    t0 = time.perf_counter()
    dy, dJ, saddle_fail = [], [], 0
    for s in random_states(args.count, rng, args.lo, args.hi):
        sol = game.solve(s)
        lo, hi = sol.bounds.y_lower, sol.bounds.y_upper
        step = (hi - lo) / (args.n - 1)
        _, v, val = oracle.brute_force_maxmin(s, lo, hi, args.n)
        dy.append(abs(v - sol.y_star) / step)
        dJ.append(abs(val - sol.J_star) / step)
        saddle_fail += not oracle.saddle_check(s, sol.y_star, sol.J_star, lo, hi).passed
    print(f"{args.count} states, n={args.n}, {time.perf_counter() - t0:.1f} s")
    print(f"|v - y*| / step: max {max(dy):.3f}  mean {np.mean(dy):.3f}")
    print(f"|value - J*| / step: max {max(dJ):.3f}  mean {np.mean(dJ):.3f}")
    print(f"saddle check failures: {saddle_fail}")


if __name__ == "__main__":
    main()
