"""Controllability, observability and modal analysis of an LTI model."""

from dataclasses import dataclass

import numpy as np

from .statespace import LongitudinalModel, as_matrix


class EigenError(RuntimeError):
    """The eigenvalue solver failed or returned an inaccurate eigenpair."""


@dataclass(frozen=True)
class RankReport:
    matrix_kind: str
    singular_values: tuple
    tolerance: float
    rank: int


@dataclass(frozen=True)
class Mode:
    """One eigenvalue of A with its natural frequency (Hz) and damping ratio.

    ``damping_ratio`` is None for a zero eigenvalue.
    """

    eigenvalue: complex
    natural_frequency: float
    damping_ratio: float | None
    label: str


def _state_matrix(model):
    if isinstance(model, LongitudinalModel):
        return model.A
    A = as_matrix(model, "A")
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"A: expected a square matrix, got {A.shape}")
    return A


def controllability_matrix(model):
    """[B, AB, A²B, ..., Aⁿ⁻¹B]."""
    A, B = model.A, model.B
    blocks = [B]
    for _ in range(A.shape[0] - 1):
        blocks.append(A @ blocks[-1])
    return np.hstack(blocks)


def observability_matrix(model):
    """[C; CA; CA²; ...; CAⁿ⁻¹], stacked vertically."""
    A, C = model.A, model.C
    blocks = [C]
    for _ in range(A.shape[0] - 1):
        blocks.append(blocks[-1] @ A)
    return np.vstack(blocks)


def numerical_rank(M, tolerance=None, matrix_kind="generic"):
    """Rank from singular values.

    The default tolerance is σ_max · max(M.shape) · eps, the same rule
    LAPACK-based rank routines use.
    """
    M = as_matrix(M, matrix_kind)
    sv = np.linalg.svd(M, compute_uv=False)
    if tolerance is None:
        tolerance = float(sv[0] * max(M.shape) * np.finfo(M.dtype).eps) if sv.size else 0.0
    elif tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    rank = int(np.count_nonzero(sv > tolerance))
    return RankReport(
        matrix_kind=matrix_kind,
        singular_values=tuple(float(s) for s in sv),
        tolerance=float(tolerance),
        rank=rank,
    )


def controllability_rank(model, tolerance=None):
    return numerical_rank(controllability_matrix(model), tolerance, "controllability")


def observability_rank(model, tolerance=None):
    return numerical_rank(observability_matrix(model), tolerance, "observability")


def _check_eigenpairs(A, w, V):
    scale = max(np.linalg.norm(A, 2), 1.0)
    for lam, v in zip(w, V.T):
        if not np.isfinite(lam) or not np.all(np.isfinite(v)):
            raise EigenError(f"non-finite eigenpair for eigenvalue {lam}")
        resid = np.linalg.norm(A @ v - lam * v) / max(np.linalg.norm(v), 1e-300)
        if resid > 1e-9 * scale:
            raise EigenError(f"eigenpair residual {resid:.3e} too large for eigenvalue {lam}")


def modal_analysis(model):
    """Eigenvalues of A with frequency, damping and a mode label.

    Accepts a LongitudinalModel or a bare square matrix. Labels: when
    exactly two oscillatory pairs exist, the faster one is the short-period
    mode and the slower one the phugoid; the real eigenvalue closest to zero
    (if numerically zero) is the altitude mode; anything else is "other".
    Conjugate pairs are listed together, positive imaginary part first.
    """
    A = _state_matrix(model)
    try:
        w, V = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:
        raise EigenError(f"eigenvalue solver did not converge: {exc}") from exc
    _check_eigenpairs(A, w, V)

    scale = max(np.linalg.norm(A, 2), 1.0)
    zero_tol = 1e-9 * scale
    # Sort: oscillatory pairs by decreasing |λ| (upper half first), then reals.
    order = sorted(
        range(len(w)),
        key=lambda i: (abs(w[i].imag) <= zero_tol, -abs(w[i]), -w[i].imag),
    )
    w = w[order]

    labels = ["other"] * len(w)
    upper = [i for i, lam in enumerate(w) if lam.imag > zero_tol]
    if len(upper) == 2:
        fast, slow = upper
        for i, lam in enumerate(w):
            if abs(lam.imag) > zero_tol:
                if np.isclose(lam, w[fast]) or np.isclose(lam, np.conj(w[fast])):
                    labels[i] = "short_period"
                else:
                    labels[i] = "phugoid"
    reals = [i for i, lam in enumerate(w) if abs(lam.imag) <= zero_tol]
    if reals:
        i0 = min(reals, key=lambda i: abs(w[i]))
        if abs(w[i0]) <= zero_tol:
            labels[i0] = "altitude"

    modes = []
    for lam, label in zip(w, labels):
        lam = complex(lam.real, 0.0 if abs(lam.imag) <= zero_tol else lam.imag)
        mag = abs(lam)
        damping = -lam.real / mag if mag > 0 else None
        modes.append(Mode(lam, mag / (2 * np.pi), damping, label))
    return modes


def find_mode(modes, label):
    """First mode carrying ``label``, or None."""
    return next((m for m in modes if m.label == label), None)
