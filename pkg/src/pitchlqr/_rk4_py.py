"""Pure-Python RK4 kernel, used when the compiled extension is unavailable.

Same contract as the compiled ``rk4_lti``.
"""

import math

import numpy as np


def rk4_lti(M, f_nodes, f_mid, times, x0):
    M = np.ascontiguousarray(M, dtype=float)
    times = np.asarray(times, dtype=float)
    out = np.empty((len(times), M.shape[0]))
    x = np.array(x0, dtype=float)
    out[0] = x
    for k in range(len(times) - 1):
        h = times[k + 1] - times[k]
        k1 = M @ x + f_nodes[k]
        k2 = M @ (x + 0.5 * h * k1) + f_mid[k]
        k3 = M @ (x + 0.5 * h * k2) + f_mid[k]
        k4 = M @ (x + h * k3) + f_nodes[k + 1]
        x = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = x
        if not math.isfinite(x.sum()):
            return out, k + 1
    return out, -1
