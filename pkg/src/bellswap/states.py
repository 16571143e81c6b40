"""State constructors: the partially entangled pair family and the Bell basis.

Two-qubit vectors and density matrices use the basis order
|00>, |01>, |10>, |11>.  All amplitudes in this family are real, but
complex storage is kept so the criterion code paths run on the general
type.
"""

from __future__ import annotations

import math

import numpy as np

HALF_PI = math.pi / 2

BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")

_KET_00 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
_KET_11 = np.array([0.0, 0.0, 0.0, 1.0], dtype=complex)


def check_params(p: float, alpha: float) -> None:
    """Validate a (p, alpha) parameter pair: p in [0, 1], alpha in [0, pi/2]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if not 0.0 <= alpha <= HALF_PI:
        raise ValueError(f"alpha must lie in [0, pi/2], got {alpha}")


def projector(vec: np.ndarray) -> np.ndarray:
    """Rank-1 projector |v><v| of a state vector."""
    v = np.asarray(vec, dtype=complex)
    return np.outer(v, v.conj())


def psi_alpha(alpha: float) -> np.ndarray:
    """Pure two-qubit vector sin(alpha)|01> + cos(alpha)|10>."""
    check_params(0.0, alpha)
    return np.array([0.0, math.sin(alpha), math.cos(alpha), 0.0], dtype=complex)


def rho_ab(p: float, alpha: float) -> np.ndarray:
    """Alice-Bob pair: (1-p)|psi(alpha)><psi(alpha)| + p|00><00|."""
    check_params(p, alpha)
    return (1.0 - p) * projector(psi_alpha(alpha)) + p * projector(_KET_00)


def rho_bc(p: float, alpha: float) -> np.ndarray:
    """Bob-Charlie pair: (1-p)|psi(alpha)><psi(alpha)| + p|11><11|."""
    check_params(p, alpha)
    return (1.0 - p) * projector(psi_alpha(alpha)) + p * projector(_KET_11)


def bell_state(label: str) -> np.ndarray:
    """One of the four Bell vectors: phi+/- = (|00> +/- |11>)/sqrt2, psi+/- = (|01> +/- |10>)/sqrt2."""
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    if label == "phi+":
        return np.array([inv_sqrt2, 0.0, 0.0, inv_sqrt2], dtype=complex)
    if label == "phi-":
        return np.array([inv_sqrt2, 0.0, 0.0, -inv_sqrt2], dtype=complex)
    if label == "psi+":
        return np.array([0.0, inv_sqrt2, inv_sqrt2, 0.0], dtype=complex)
    if label == "psi-":
        return np.array([0.0, inv_sqrt2, -inv_sqrt2, 0.0], dtype=complex)
    raise ValueError(f"unknown Bell label {label!r}, expected one of {BELL_LABELS}")


def validate_state(
    rho: np.ndarray,
    herm_tol: float = 1e-12,
    trace_tol: float = 1e-12,
    psd_tol: float = 1e-10,
) -> np.ndarray:
    """Check the density-matrix invariants; returns the array on success.

    Raises ValueError if rho is not 4x4, not finite, not Hermitian
    within herm_tol, not unit trace within trace_tol, or has an
    eigenvalue below -psd_tol.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    if float(np.max(np.abs(rho - rho.conj().T))) > herm_tol:
        raise ValueError("density matrix is not Hermitian within tolerance")
    if abs(np.trace(rho).real - 1.0) > trace_tol or abs(np.trace(rho).imag) > trace_tol:
        raise ValueError("density matrix trace is not 1 within tolerance")
    smallest = float(np.linalg.eigvalsh(rho)[0])
    if smallest < -psd_tol:
        raise ValueError(f"density matrix has negative eigenvalue {smallest}")
    return rho
