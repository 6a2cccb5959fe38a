"""
Fixed-step simulation of the open- and closed-loop aircraft under a
microburst, and the response figures of merit.

The closed loop uses u = −Kx, so the integrated system is

    ẋ = (A − BK)x + Gη(t),   η = [u_g, w_g/u0]

The gust is evaluated at every RK4 stage time (t, t+h/2, t+h), which keeps
the forced response fourth-order accurate.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import _backend
from .statespace import N_STATES, as_matrix, quadratic_cost
from .wind import alpha_gust, gust_series

SETTLING_BAND_DEG = 0.1
SMALL_ANGLE_LIMIT_DEG = 14.0
ELEVATOR_LIMIT_DEG = 20.0


class DivergenceError(RuntimeError):
    def __init__(self, step, time):
        super().__init__(f"state became non-finite at step {step} (t = {time:.6g} s)")
        self.step = step
        self.time = time


@dataclass(frozen=True)
class SimConfig:
    """Step size and horizon (s), optional LQR gain, initial state (SI, rad).

    ``gain=None`` runs the uncontrolled aircraft.
    """

    dt: float = 0.001
    t_final: float = 100.0
    gain: np.ndarray | None = None
    initial_state: tuple = (0.0,) * N_STATES

    def __post_init__(self):
        dt, tf = float(self.dt), float(self.t_final)
        if not (math.isfinite(dt) and dt > 0):
            raise ValueError(f"dt: must be positive, got {self.dt!r}")
        if not (math.isfinite(tf) and tf >= dt):
            raise ValueError(f"t_final: must be at least dt, got {self.t_final!r}")
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "t_final", tf)
        x0 = np.asarray(self.initial_state, dtype=float).ravel()
        if not np.all(np.isfinite(x0)):
            raise ValueError("initial_state: contains non-finite entries")
        object.__setattr__(self, "initial_state", tuple(float(v) for v in x0))
        if self.gain is not None:
            K = as_matrix(self.gain, "gain")
            if K.shape[0] != 1:
                raise ValueError(f"gain: expected a single row, got shape {K.shape}")
            K.setflags(write=False)
            object.__setattr__(self, "gain", K)

    def time_grid(self):
        """Uniform grid of step dt; a final partial step lands exactly on t_final."""
        n = math.ceil(round(self.t_final / self.dt, 9))
        times = np.arange(n + 1) * self.dt
        times[-1] = self.t_final
        return times


@dataclass(frozen=True)
class Trajectory:
    """Sampled run. ``gusts`` columns are (u_g m/s, w_g m/s, α_g rad)."""

    times: np.ndarray
    states: np.ndarray
    controls: np.ndarray
    gusts: np.ndarray
    gain: np.ndarray | None = None

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class ResponseMetrics:
    theta_max: float
    theta_min: float
    altitude_min: float
    altitude_final: float
    altitude_settled: float
    elevator_min: float
    elevator_max: float
    settling_time_theta: float
    small_angle_violated: bool
    elevator_limit_violated: bool
    cost_J: float

    @property
    def max_pitch_deviation(self):
        return max(abs(self.theta_max), abs(self.theta_min))

    @property
    def max_altitude_loss(self):
        return max(0.0, -self.altitude_min)


def simulate(model, profile, config):
    if model.G.shape[1] != 2:
        raise ValueError(f"G: expected 2 disturbance columns, got {model.G.shape[1]}")
    n = model.n_states
    x0 = np.asarray(config.initial_state, dtype=float)
    if x0.size != n:
        raise ValueError(f"initial_state: expected {n} entries, got {x0.size}")
    K = config.gain
    if K is not None and K.shape != (1, n):
        raise ValueError(f"gain: expected shape (1, {n}), got {K.shape}")
    M = model.A - model.B @ K if K is not None else np.array(model.A)

    times = config.time_grid()
    mids = 0.5 * (times[:-1] + times[1:])
    ug, wg = gust_series(profile, times)
    ag = alpha_gust(wg, model.condition)
    ug_mid, wg_mid = gust_series(profile, mids)
    f_nodes = np.column_stack([ug, ag]) @ model.G.T
    f_mid = np.column_stack([ug_mid, alpha_gust(wg_mid, model.condition)]) @ model.G.T

    states, bad = _backend.rk4_lti(
        np.ascontiguousarray(M),
        np.ascontiguousarray(f_nodes),
        np.ascontiguousarray(f_mid),
        times,
        x0,
    )
    if bad >= 0:
        raise DivergenceError(bad, times[bad])
    controls = -(states @ K[0]) if K is not None else np.zeros(len(times))
    gusts = np.column_stack([ug, wg, ag])
    for arr in (times, states, controls, gusts):
        arr.setflags(write=False)
    return Trajectory(times=times, states=states, controls=controls, gusts=gusts, gain=K)


def settled_state(model, trajectory):
    """Limit of the unforced response started from the trajectory's last state.

    For a Hurwitz closed loop this is zero. When A has a zero eigenvalue
    (altitude does not feed back) the state settles onto its null space;
    the limit is the spectral projection onto the zero eigenspace.
    """
    K = trajectory.gain
    M = model.A - model.B @ K if K is not None else np.asarray(model.A)
    w, vl, vr = scipy.linalg.eig(M, left=True, right=True)
    scale = max(np.linalg.norm(M, 2), 1.0)
    x = trajectory.states[-1]
    limit = np.zeros_like(x)
    for i in np.flatnonzero(np.abs(w) <= 1e-9 * scale):
        l, r = vl[:, i], vr[:, i]
        overlap = l.conj() @ r
        if abs(overlap) < 1e-8:
            # defective zero eigenvalue: the unforced response drifts, no limit
            return np.full_like(x, np.nan)
        limit = limit + (r * (l.conj() @ x) / overlap).real
    return limit


def extract_metrics(trajectory, model, weights):
    theta = np.degrees(trajectory.states[:, 3])
    alpha = np.degrees(trajectory.states[:, 1])
    h = trajectory.states[:, 4]
    de = np.degrees(trajectory.controls)
    t = trajectory.times

    outside = np.flatnonzero(np.abs(theta) > SETTLING_BAND_DEG)
    if outside.size == 0:
        settling = 0.0
    else:
        last = outside[-1]
        settling = float(t[min(last + 1, len(t) - 1)])

    return ResponseMetrics(
        theta_max=float(theta.max()),
        theta_min=float(theta.min()),
        altitude_min=float(h.min()),
        altitude_final=float(h[-1]),
        altitude_settled=float(settled_state(model, trajectory)[4]),
        elevator_min=float(de.min()),
        elevator_max=float(de.max()),
        settling_time_theta=settling,
        small_angle_violated=bool(np.any(np.abs(alpha - theta) > SMALL_ANGLE_LIMIT_DEG)),
        elevator_limit_violated=bool(np.any(np.abs(de) > ELEVATOR_LIMIT_DEG)),
        cost_J=quadratic_cost(trajectory, weights.Q, weights.R),
    )


def reductions(uncontrolled, controlled):
    """Fractional reduction of peak pitch deviation and peak altitude loss."""

    def frac(before, after):
        return 1.0 - after / before if before > 0 else 0.0

    return {
        "pitch_deviation": frac(uncontrolled.max_pitch_deviation, controlled.max_pitch_deviation),
        "altitude_loss": frac(uncontrolled.max_altitude_loss, controlled.max_altitude_loss),
    }
