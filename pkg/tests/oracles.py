"""Independent reference computations used to check the package.

None of these call into pitchlqr; they use exact arithmetic, closed forms,
or a different numerical route than the code they check.
"""

from fractions import Fraction

import numpy as np
import scipy.integrate


def gaussian_rank(M):
    """Exact rank of an integer/rational matrix by fraction-based elimination."""
    rows = [[Fraction(v) for v in row] for row in M]
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(n_rows):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def scalar_care(a, b, q, r):
    """Stabilizing root of (b²/r)s² − 2as − q = 0."""
    c = b * b / r
    if c == 0:
        return -q / (2 * a)
    return (a + np.sqrt(a * a + c * q)) / c


def simpson_cost(times, states, controls, Q, R):
    """Composite Simpson quadrature of xᵀQx + uᵀRu (a different rule than the package's)."""
    integrand = np.einsum("ti,ij,tj->t", states, Q, states)
    integrand += float(R[0, 0]) * np.asarray(controls) ** 2
    return scipy.integrate.simpson(integrand, x=times)


def rk4_reference(M, forcing, x0, t_final, dt):
    """Straight textbook RK4 with a callable forcing f(t), for cross-checks."""
    n = int(round(t_final / dt))
    x = np.array(x0, dtype=float)
    for k in range(n):
        t = k * dt
        k1 = M @ x + forcing(t)
        k2 = M @ (x + dt / 2 * k1) + forcing(t + dt / 2)
        k3 = M @ (x + dt / 2 * k2) + forcing(t + dt / 2)
        k4 = M @ (x + dt * k3) + forcing(t + dt)
        x = x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return x


def char_poly_at(A, lam):
    """det(A − λI) by LU (independent of the eigen-solver)."""
    return np.linalg.det(A - lam * np.eye(A.shape[0]))


# Values printed for the Navion model with numeric derivatives plugged in.
REF_A = np.array(
    [
        [-0.0454, 1.9609, 0, -9.8066, 0],
        [-0.0069, -2.1652, 1, 0, 0],
        [0, -8.9246, -2.0968, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 54, 0, -54, 0],
    ]
)
REF_B = np.array([[0], [-0.1611], [-12.0606], [0], [0]])
REF_G = np.array(
    [[0.0454, -1.9609], [0.0069, 2.1652], [0, 8.9246], [0, 0], [0, 0]]
)
REF_S = np.array(
    [
        [0.6115, -5.0662, 0.1220, 5.9464, -0.2053],
        [-5.0662, 117.1642, -3.7795, -132.8100, 3.0884],
        [0.1220, -3.7795, 2.4973, 23.5294, -0.0867],
        [5.9464, -132.8100, 23.5294, 436.7515, -3.8089],
        [-0.2053, 3.0884, -0.0867, -3.8089, 0.1260],
    ]
)
REF_K = np.array([[-0.0219, 0.8901, -0.9837, -8.7459, 0.0183]])
