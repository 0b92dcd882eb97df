"""Solve, simulate and cross-check the worked example (alpha=0.5, x_A=6, x_T=3, y_T=2)."""
import argparse
import math

from atddg import apollonius, game, oracle, sim
from atddg.frame import ReducedState


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--n", type=int, default=2001, help="oracle grid size")
    p.add_argument("--csv", help="write the trajectory here")
    args = p.parse_args()

    s = ReducedState(6.0, 3.0, 2.0, args.alpha)
    sol = game.solve(s)
    c = apollonius.circle(s)
    print(f"alpha_bar      {sol.alpha_bar:.6f}")
    print(f"circle         center ({c.center[0]:.6f}, {c.center[1]:.6f}) radius {c.radius:.6f}")
    print(f"roots          {sol.roots[0]:.6f} {sol.roots[1]:.6f}")
    print(f"y*             {sol.y_star:.6f}")
    print(f"J*             {sol.J_star:.6f}   ({sol.outcome.value})")
    print("headings deg   T {:.3f}  A {:.3f}  D {:.3f}".format(
        *(math.degrees(h) for h in (sol.heading_T, sol.heading_A, sol.heading_D))))

    out = sim.simulate(s, dt=args.dt, eps=args.eps, solution=sol)
    print(f"simulation     {out.event.value} at t={out.t_event:.6f}, point {out.intercept_point}")
    print(f"               terminal A-T separation {out.terminal_AT_separation:.6f}")
    rep = sim.validate(out, sol, args.eps, args.dt)
    print(f"               residuals {rep.residuals}  passed={rep.passed}")

    if sol.outcome is game.Outcome.ESCAPE:
        b = sol.bounds
        u, v, val = oracle.brute_force_maxmin(s, b.y_lower, b.y_upper, args.n)
        print(f"oracle         u={u:.6f} v={v:.6f} value={val:.6f} on [{b.y_lower:.4f}, {b.y_upper:.4f}]")
        chk = oracle.saddle_check(s, sol.y_star, sol.J_star, b.y_lower, b.y_upper)
        print(f"saddle check   passed={chk.passed}")

    if args.csv:
        import numpy as np

        np.savetxt(args.csv, out.trajectory, delimiter=",", header=",".join(sim.TRAJECTORY_COLUMNS), comments="")


if __name__ == "__main__":
    main()
