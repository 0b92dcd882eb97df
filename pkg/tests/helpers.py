"""Independent reference computations shared by the tests."""
import math

import numpy as np

from atddg.frame import ReducedState


def alpha_bar_oracle(x_A, x_T, y_T):
    """Critical ratio straight from the difference-of-distances form."""
    if x_T <= 0:
        return 0.0
    return (math.hypot(x_A + x_T, y_T) - math.hypot(x_A - x_T, y_T)) / (2 * x_A)


def random_escape_states(n, seed=0, lo=0.1, hi=100.0):
    """States with lengths in [lo, hi], x_T > 0 and alpha strictly between the
    critical ratio and one."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        x_A, x_T, y_T = rng.uniform(lo, hi, 3)
        ab = alpha_bar_oracle(x_A, x_T, y_T)
        a = ab + (1.0 - ab) * rng.uniform(0.0, 1.0)
        if not (ab < a < 1.0):
            continue
        out.append(ReducedState(x_A, x_T, y_T, a))
    return out
