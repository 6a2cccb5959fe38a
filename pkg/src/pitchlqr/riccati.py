"""
Continuous algebraic Riccati equation and LQR gain synthesis.

Solves

    SBR⁻¹BᵀS − SA − AᵀS − Q = 0

for the stabilizing S, then K = R⁻¹BᵀS so that u = −Kx minimizes
∫ xᵀQx + uᵀRu dt.

The solution comes from the stable invariant subspace of the Hamiltonian

    H = [[ A, −BR⁻¹Bᵀ],
         [−Q, −Aᵀ    ]]

found with an ordered real Schur decomposition. With [U₁; U₂] spanning that
subspace, S = U₂U₁⁻¹. A few Newton-Kleinman steps then polish the residual.
Newton alone is not used from scratch because it needs a stabilizing initial
gain, and the open-loop aircraft has a zero eigenvalue.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .statespace import as_matrix

DEFAULT_Q_DIAG = (0.0, 150.0, 0.0, 2000.0, 0.01)
DEFAULT_R = 30.0
RESIDUAL_RTOL = 1e-8


class SynthesisError(RuntimeError):
    """No stabilizing Riccati solution could be found."""


@dataclass(frozen=True)
class LqrWeights:
    """State weight Q (symmetric PSD) and control weight R (symmetric PD)."""

    Q: np.ndarray
    R: np.ndarray

    def __post_init__(self):
        Q = as_matrix(self.Q, "Q")
        R = as_matrix(self.R, "R")
        for name, M in (("Q", Q), ("R", R)):
            if M.shape[0] != M.shape[1]:
                raise ValueError(f"{name}: expected a square matrix, got {M.shape}")
            if not np.allclose(M, M.T, rtol=0, atol=1e-12 * max(1.0, np.abs(M).max())):
                raise ValueError(f"{name}: not symmetric")
        eq = np.linalg.eigvalsh(Q)
        if eq.min() < -1e-12 * max(1.0, np.abs(eq).max()):
            raise ValueError(f"Q: not positive semidefinite (eigenvalue {eq.min():.3e})")
        er = np.linalg.eigvalsh(R)
        if er.min() <= 0:
            raise ValueError(f"R: not positive definite (eigenvalue {er.min():.3e})")
        Q.setflags(write=False)
        R.setflags(write=False)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "R", R)

    @classmethod
    def diagonal(cls, q_diag=DEFAULT_Q_DIAG, r=DEFAULT_R):
        return cls(Q=np.diag(np.asarray(q_diag, dtype=float)), R=np.atleast_2d(float(r)))

    def scaled(self, factor):
        return LqrWeights(self.Q * factor, self.R * factor)


@dataclass(frozen=True)
class LqrSynthesis:
    weights: LqrWeights
    S: np.ndarray
    K: np.ndarray
    residual_norm: float
    closed_loop_eigenvalues: tuple

    @property
    def relative_residual(self):
        return self.residual_norm / max(1.0, np.linalg.norm(self.S, "fro"))


def _riccati_lhs(A, B, Q, R, S):
    return S @ B @ np.linalg.solve(R, B.T @ S) - S @ A - A.T @ S - Q


def care_residual(A, B, weights, S):
    """Frobenius norm of SBR⁻¹BᵀS − SA − AᵀS − Q at the given S."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    S = as_matrix(S, "S", A.shape)
    return float(np.linalg.norm(_riccati_lhs(A, B, weights.Q, weights.R, S), "fro"))


def _check_dims(A, B, weights):
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"A: expected a square matrix, got {A.shape}")
    if B.shape[0] != n:
        raise ValueError(f"B: expected {n} rows, got {B.shape[0]}")
    if weights.Q.shape != (n, n):
        raise ValueError(f"Q: expected shape {(n, n)}, got {weights.Q.shape}")
    m = B.shape[1]
    if weights.R.shape != (m, m):
        raise ValueError(f"R: expected shape {(m, m)}, got {weights.R.shape}")


def _hamiltonian_solution(A, B, Q, R):
    n = A.shape[0]
    H = np.block([[A, -B @ np.linalg.solve(R, B.T)], [-Q, -A.T]])
    # Eigenvalues on the imaginary axis mean no stabilizing solution exists;
    # sort='lhp' puts strictly stable ones first.
    T, Z, sdim = scipy.linalg.schur(H, output="real", sort="lhp")
    if sdim != n:
        eigs = np.linalg.eigvals(H)
        worst = eigs[np.argmin(np.abs(eigs.real))]
        raise SynthesisError(
            f"Hamiltonian has {sdim} stable eigenvalues, expected {n}; "
            f"eigenvalue {worst:.6g} lies on or near the imaginary axis"
        )
    U1, U2 = Z[:n, :n], Z[n:, :n]
    if np.linalg.cond(U1) > 1e12:
        ol = np.linalg.eigvals(A)
        suspects = ", ".join(f"{lam:.6g}" for lam in ol[ol.real >= 0]) or "none"
        raise SynthesisError(
            "stable invariant subspace is not a graph (U1 is singular); "
            f"open-loop eigenvalue(s) with Re >= 0: {suspects}"
        )
    S = np.linalg.solve(U1.T, U2.T).T
    return (S + S.T) / 2


def _newton_polish(A, B, Q, R, S, max_steps=3):
    """Newton-Kleinman refinement, kept only while it reduces the residual."""
    best = np.linalg.norm(_riccati_lhs(A, B, Q, R, S), "fro")
    for _ in range(max_steps):
        if best == 0.0:
            break
        K = np.linalg.solve(R, B.T @ S)
        Ak = A - B @ K
        if np.max(np.linalg.eigvals(Ak).real) >= 0:
            break
        S_new = scipy.linalg.solve_continuous_lyapunov(Ak.T, -(Q + K.T @ R @ K))
        S_new = (S_new + S_new.T) / 2
        resid = np.linalg.norm(_riccati_lhs(A, B, Q, R, S_new), "fro")
        if not resid < best:
            break
        S, best = S_new, resid
    return S


def solve_care(A, B, weights):
    """Stabilizing solution of the CARE and the corresponding LQR gain.

    Raises SynthesisError when the closed loop A − BK is not Hurwitz or the
    residual misses the 1e-8 relative threshold.
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    _check_dims(A, B, weights)
    Q, R = weights.Q, weights.R

    S = _hamiltonian_solution(A, B, Q, R)
    S = _newton_polish(A, B, Q, R, S)
    K = np.linalg.solve(R, B.T @ S)

    cl = np.linalg.eigvals(A - B @ K)
    worst = cl[np.argmax(cl.real)]
    if not worst.real < 0:
        raise SynthesisError(f"closed loop is not Hurwitz: eigenvalue {worst:.6g}")
    residual = float(np.linalg.norm(_riccati_lhs(A, B, Q, R, S), "fro"))
    if residual > RESIDUAL_RTOL * max(1.0, np.linalg.norm(S, "fro")):
        raise SynthesisError(f"Riccati residual {residual:.3e} above tolerance")

    for arr in (S, K):
        arr.setflags(write=False)
    order = np.lexsort((cl.imag, cl.real))
    return LqrSynthesis(
        weights=weights,
        S=S,
        K=K,
        residual_norm=residual,
        closed_loop_eigenvalues=tuple(complex(c) for c in cl[order]),
    )


def control_law(K, x):
    """Elevator command u = −Kx (rad) for a single-input gain."""
    K = np.atleast_2d(np.asarray(K, dtype=float))
    x = np.asarray(x, dtype=float).ravel()
    if K.shape != (1, x.size):
        raise ValueError(f"K: expected shape (1, {x.size}), got {K.shape}")
    return float(-(K @ x)[0])
