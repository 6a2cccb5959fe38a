"""
Linearized longitudinal model of a fixed-wing aircraft.

State vector: x = [Δu, Δα, Δq, Δθ, Δh]ᵀ
    Δu  - forward speed perturbation (m/s)
    Δα  - angle of attack perturbation (rad)
    Δq  - pitch rate perturbation (rad/s)
    Δθ  - pitch angle perturbation (rad)
    Δh  - altitude perturbation (m)

Control input: Δδe, elevator deflection (rad)
Disturbance input: η = [Δu_g (m/s), Δα_g (rad)]

    ẋ = Ax + BΔδe + Gη
    y = Cx + DΔδe

Angles are radians everywhere inside the package; degrees only appear at
the CLI and file boundaries.
"""

from dataclasses import dataclass, field, fields

import numpy as np
from scipy.integrate import trapezoid

N_STATES = 5
STATE_NAMES = ("u", "alpha", "q", "theta", "h")


class ModelError(ValueError):
    """Raised for invalid model inputs (non-finite values, bad shapes)."""


def as_matrix(value, name, shape=None):
    """Return ``value`` as a finite 2-D float array, validating its shape.

    Scalars become 1x1 and 1-D input becomes a single row.
    """
    arr = np.array(value, dtype=float, ndmin=2)
    if arr.ndim != 2 or arr.size == 0:
        raise ModelError(f"{name}: expected a non-empty 2-D matrix, got shape {arr.shape}")
    if shape is not None and arr.shape != tuple(shape):
        raise ModelError(f"{name}: expected shape {tuple(shape)}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ModelError(f"{name}: contains non-finite entries")
    return arr


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StabilityDerivatives:
    """Dimensional longitudinal stability and control derivatives.

    Units (SI, per radian):
        X_u, Z_u, X_q, Z_q, M_q: 1/s
        X_alpha, Z_alpha, X_de, Z_de: m/s²
        M_u: 1/(m·s)
        M_alpha, M_de: 1/s²

    X_q and Z_q are carried for completeness; the model neglects them.
    """

    X_u: float
    X_alpha: float
    X_q: float
    X_de: float
    Z_u: float
    Z_alpha: float
    Z_q: float
    Z_de: float
    M_u: float
    M_alpha: float
    M_q: float
    M_de: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ModelError(f"{f.name}: not a number ({value!r})") from None
            if not np.isfinite(value):
                raise ModelError(f"{f.name}: non-finite value {value!r}")
            object.__setattr__(self, f.name, value)

    @classmethod
    def zeros(cls):
        return cls(**{f.name: 0.0 for f in fields(cls)})


# Ryan Navion, dimensional derivatives at the approach trim condition.
NAVION = StabilityDerivatives(
    X_u=-0.0454,
    X_alpha=1.9609,
    X_q=0.0,
    X_de=0.0,
    Z_u=-0.3722,
    Z_alpha=-116.9207,
    Z_q=0.0,
    Z_de=-8.7016,
    M_u=0.0,
    M_alpha=-8.9246,
    M_q=-2.0968,
    M_de=-12.0606,
)


@dataclass(frozen=True)
class FlightCondition:
    """Trim airspeed ``u0`` (m/s) and gravitational acceleration ``g`` (m/s²).

    The defaults are the Navion approach condition.
    """

    u0: float = 54.0
    g: float = 9.8066

    def __post_init__(self):
        for name in ("u0", "g"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ModelError(f"{name}: non-finite value {value!r}")
            object.__setattr__(self, name, value)
        if self.u0 <= 0:
            raise ModelError(f"u0: must be positive, got {self.u0!r}")
        # g = 0 is allowed so the purely structural model can be built
        if self.g < 0:
            raise ModelError(f"g: must be non-negative, got {self.g!r}")


@dataclass(frozen=True)
class LongitudinalModel:
    """LTI quintuple (A, B, G, C, D) plus the flight condition it was built for.

    Arrays are stored read-only. Shapes are checked, the aircraft-specific
    structure is not, so hand-built test models are allowed.
    """

    A: np.ndarray
    B: np.ndarray
    G: np.ndarray
    C: np.ndarray
    D: np.ndarray
    condition: FlightCondition = field(default_factory=FlightCondition)

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        n = A.shape[0]
        if A.shape != (n, n):
            raise ModelError(f"A: expected a square matrix, got {A.shape}")
        B = as_matrix(self.B, "B")
        if B.shape[0] != n:
            raise ModelError(f"B: expected {n} rows, got {B.shape[0]}")
        G = as_matrix(self.G, "G")
        if G.shape[0] != n:
            raise ModelError(f"G: expected {n} rows, got {G.shape[0]}")
        C = as_matrix(self.C, "C")
        if C.shape[1] != n:
            raise ModelError(f"C: expected {n} columns, got {C.shape[1]}")
        D = as_matrix(self.D, "D", (C.shape[0], B.shape[1]))
        for name, arr in zip("ABGCD", (A, B, G, C, D)):
            object.__setattr__(self, name, _frozen(arr))

    @property
    def n_states(self):
        return self.A.shape[0]


def assemble_model(derivs, cond=None):
    """Build the numeric longitudinal model from stability derivatives.

    The gust inputs enter as the negated airspeed and angle-of-attack
    columns of the first three rows of A. The α̇ row uses Z_de/u0 for the
    elevator term, and altitude follows ḣ = u0(Δα − Δθ).
    """
    if cond is None:
        cond = FlightCondition()
    d = derivs
    u0, g = cond.u0, cond.g
    A = np.array(
        [
            [d.X_u, d.X_alpha, 0.0, -g, 0.0],
            [d.Z_u / u0, d.Z_alpha / u0, 1.0, 0.0, 0.0],
            [d.M_u, d.M_alpha, d.M_q, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, u0, 0.0, -u0, 0.0],
        ]
    )
    B = np.array([[d.X_de], [d.Z_de / u0], [d.M_de], [0.0], [0.0]])
    G = np.zeros((N_STATES, 2))
    G[:3, :] = -A[:3, :2]
    return LongitudinalModel(
        A=A, B=B, G=G, C=np.eye(N_STATES), D=np.zeros((N_STATES, 1)), condition=cond
    )


def quadratic_cost(trajectory, Q, R):
    """Trapezoidal quadrature of xᵀQx + uᵀRu over the trajectory's time span.

    ``trajectory`` needs ``times`` (N,), ``states`` (N, n) and ``controls``
    (N,) or (N, m).
    """
    states = np.asarray(trajectory.states, dtype=float)
    controls = np.asarray(trajectory.controls, dtype=float)
    if controls.ndim == 1:
        controls = controls[:, None]
    n, m = states.shape[1], controls.shape[1]
    Q = as_matrix(Q, "Q")
    R = as_matrix(R, "R")
    if Q.shape != (n, n):
        raise ModelError(f"Q: expected shape {(n, n)} to match the trajectory, got {Q.shape}")
    if R.shape != (m, m):
        raise ModelError(f"R: expected shape {(m, m)} to match the trajectory, got {R.shape}")
    integrand = np.einsum("ti,ij,tj->t", states, Q, states)
    integrand += np.einsum("ti,ij,tj->t", controls, R, controls)
    if len(integrand) < 2:
        return 0.0
    return float(max(trapezoid(integrand, np.asarray(trajectory.times, dtype=float)), 0.0))
