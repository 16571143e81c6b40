"""CHSH violation parameter r of a two-qubit state, three independent ways.

A two-qubit state violates some CHSH inequality iff r = sqrt(l1 + l2)
exceeds 1, where l1 >= l2 are the two largest eigenvalues of R^T R and
R_ij = Tr(rho sigma_i (x) sigma_j) is the correlation matrix.  The
maximal CHSH expectation equals 2r.

Three routes are provided:
  * violation_numeric        - the criterion evaluated from the matrix,
  * violation_*_analytic     - closed forms for the pair family and for
                               the phi-outcome post-swap state,
  * chsh_max_bruteforce      - direct maximization over measurement
                               directions (independent oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qmat import PAULIS, eig_sym3, tensor
from .states import HALF_PI, check_params

SQRT2 = math.sqrt(2.0)

_PAULI_PAIRS = [[tensor(si, sj) for sj in PAULIS] for si in PAULIS]


class NumericalIntegrityError(ArithmeticError):
    """A quantity that must be real carried an imaginary residue above tolerance."""


class UndefinedFinalStateError(ValueError):
    """The phi-outcome closed form is undefined at p = 1 or alpha = pi/2."""


@dataclass(frozen=True)
class AnalyticDetail:
    """Intermediates of the closed-form routes.

    z is the max term of the initial-state form; y_tilde and z_tilde
    are the mixing ratio and max term of the post-swap form.  z is None
    when the degenerate sin(2*alpha) = 0 bypass was taken.
    """

    z: float | None = None
    y_tilde: float | None = None
    z_tilde: float | None = None


@dataclass(frozen=True)
class ViolationReport:
    """Eigenvalues of R^T R (descending), the violation parameter, analytic intermediates."""

    lambda1: float
    lambda2: float
    lambda3: float
    r: float
    analytic: AnalyticDetail | None = None

    def __post_init__(self) -> None:
        if not self.lambda1 >= self.lambda2 >= self.lambda3 >= -1e-10:
            raise ValueError(
                f"eigenvalues not sorted/PSD: {self.lambda1}, {self.lambda2}, {self.lambda3}"
            )
        if abs(self.r - math.sqrt(max(self.lambda1 + self.lambda2, 0.0))) > 1e-12:
            raise ValueError("r is inconsistent with the top two eigenvalues")
        if not 0.0 <= self.r <= SQRT2 + 1e-9:
            raise ValueError(f"r out of range: {self.r}")

    @property
    def violates(self) -> bool:
        """True iff the state violates some CHSH inequality (strictly r > 1)."""
        return self.r > 1.0


def correlation_matrix(rho: np.ndarray, imag_tol: float = 1e-12) -> np.ndarray:
    """3x3 real matrix R_ij = Tr(rho sigma_i (x) sigma_j).

    Each trace must be real within imag_tol, otherwise a
    NumericalIntegrityError is raised.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 state, got {rho.shape}")
    out = np.empty((3, 3), dtype=float)
    for i in range(3):
        for j in range(3):
            t = complex(np.einsum("ab,ba->", rho, _PAULI_PAIRS[i][j]))
            if abs(t.imag) > imag_tol:
                raise NumericalIntegrityError(
                    f"correlator ({i},{j}) has imaginary residue {t.imag}"
                )
            out[i, j] = t.real
    return out


def _report_from_eigenvalues(lams: np.ndarray, analytic: AnalyticDetail | None = None) -> ViolationReport:
    r = math.sqrt(max(lams[0] + lams[1], 0.0))
    return ViolationReport(float(lams[0]), float(lams[1]), float(lams[2]), r, analytic)


def violation_numeric(rho: np.ndarray) -> ViolationReport:
    """Violation parameter from the correlation matrix of an explicit state."""
    R = correlation_matrix(rho)
    return _report_from_eigenvalues(eig_sym3(R.T @ R))


def violation_initial_analytic(p: float, alpha: float) -> ViolationReport:
    """Closed-form violation parameter of either initial pair state.

    The R^T R spectrum is {(2p-1)^2, w^2, w^2} with w = (1-p)sin(2*alpha),
    giving r = w * sqrt(1 + z) with z = max(1, ((2p-1)/w)^2).  When w = 0
    the ratio is bypassed and r = |2p-1| directly.
    """
    check_params(p, alpha)
    lam_zz = (2.0 * p - 1.0) ** 2
    w = (1.0 - p) * math.sin(2.0 * alpha)
    lam_xy = w * w
    lams = np.sort(np.array([lam_zz, lam_xy, lam_xy]))[::-1]
    if lam_xy == 0.0:
        return _report_from_eigenvalues(lams, AnalyticDetail(z=None))
    z = max(1.0, lam_zz / lam_xy)
    r = w * math.sqrt(1.0 + z)
    return ViolationReport(float(lams[0]), float(lams[1]), float(lams[2]), r, AnalyticDetail(z=z))


def violation_final_analytic(p: float, alpha: float) -> ViolationReport:
    """Closed-form violation parameter of the phi-outcome post-swap state.

    With y = p / ((1-p)cos^2(alpha)) the spectrum is
    {((1-y)/(1+y))^2, 1/(1+y)^2, 1/(1+y)^2} and
    r = sqrt(1 + max(1, (1-y)^2)) / (1+y).  Undefined at p = 1 and at
    alpha = pi/2, where y diverges.
    """
    check_params(p, alpha)
    if p == 1.0 or alpha == HALF_PI:
        raise UndefinedFinalStateError(
            f"post-swap closed form undefined at p={p}, alpha={alpha}"
        )
    y = p / ((1.0 - p) * math.cos(alpha) ** 2)
    lam_zz = ((1.0 - y) / (1.0 + y)) ** 2
    lam_xy = (1.0 / (1.0 + y)) ** 2
    lams = np.sort(np.array([lam_zz, lam_xy, lam_xy]))[::-1]
    z = max(1.0, (1.0 - y) ** 2)
    r = math.sqrt(1.0 + z) / (1.0 + y)
    return ViolationReport(
        float(lams[0]), float(lams[1]), float(lams[2]), r, AnalyticDetail(y_tilde=y, z_tilde=z)
    )


# ---------------------------------------------------------------------------
# Brute-force oracle: maximize the CHSH expectation over measurement
# directions a, a', b, b' on the Bloch sphere.  For unit vectors the
# expectation is a.R(b+b') + a'.R(b-b').  Deterministic by construction:
# fixed starts, fixed grids, first-index tie-breaks.
# ---------------------------------------------------------------------------

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

_AXIS = (
    np.array([1.0, 0.0, 0.0]),
    np.array([0.0, 1.0, 0.0]),
    np.array([0.0, 0.0, 1.0]),
)
_STARTS = ((2, 0), (0, 1), (1, 2), (0, 2), (1, 0), (2, 1))


def _unit(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def _angles_of(v: np.ndarray) -> tuple[float, float]:
    theta = math.acos(min(1.0, max(-1.0, float(v[2]))))
    phi = math.atan2(float(v[1]), float(v[0])) % (2.0 * math.pi)
    return theta, phi


def _chsh_value(R: np.ndarray, angles: np.ndarray) -> float:
    a = _unit(angles[0, 0], angles[0, 1])
    ap = _unit(angles[1, 0], angles[1, 1])
    b = _unit(angles[2, 0], angles[2, 1])
    bp = _unit(angles[3, 0], angles[3, 1])
    return float(a @ R @ (b + bp) + ap @ R @ (b - bp))


def _golden_max(f, lo: float, hi: float, iters: int = 30) -> float:
    """Argmax of f on [lo, hi] by golden-section (f unimodal there)."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
    return 0.5 * (lo + hi)


def chsh_max_bruteforce(rho: np.ndarray, grid_density: int = 24, refine_passes: int = 3, shrink: float = 0.2) -> float:
    """Maximal CHSH expectation found by grid search plus local refinement.

    Each measurement direction is scanned in turn over a full spherical
    grid of grid_density points per angle (block-coordinate ascent from
    six fixed axis-pair starts), then every spherical angle is polished
    by golden-section over a window that shrinks by the given factor
    each pass.  Agrees with 2r from the criterion to ~1e-3 on 4x4
    states.  Always at most 2*sqrt(2) up to rounding.
    """
    if grid_density < 2:
        raise ValueError("grid_density must be at least 2")
    R = correlation_matrix(rho)

    thetas = np.linspace(0.0, math.pi, grid_density)
    phis = np.linspace(0.0, 2.0 * math.pi, grid_density, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    grid_angles = np.column_stack([tt.ravel(), pp.ravel()])
    st = np.sin(grid_angles[:, 0])
    grid_units = np.column_stack(
        [st * np.cos(grid_angles[:, 1]), st * np.sin(grid_angles[:, 1]), np.cos(grid_angles[:, 0])]
    )

    def best_grid_direction(w: np.ndarray) -> tuple[float, float]:
        k = int(np.argmax(grid_units @ w))
        return float(grid_angles[k, 0]), float(grid_angles[k, 1])

    theta_window = math.pi / (grid_density - 1)
    phi_window = 2.0 * math.pi / grid_density

    best = -math.inf
    for bi, bpi in _STARTS:
        angles = np.zeros((4, 2))
        angles[2] = _angles_of(_AXIS[bi])
        angles[3] = _angles_of(_AXIS[bpi])

        # block-coordinate coarse grid ascent
        value = -math.inf
        for _ in range(16):
            b = _unit(angles[2, 0], angles[2, 1])
            bp = _unit(angles[3, 0], angles[3, 1])
            angles[0] = best_grid_direction(R @ (b + bp))
            angles[1] = best_grid_direction(R @ (b - bp))
            a = _unit(angles[0, 0], angles[0, 1])
            ap = _unit(angles[1, 0], angles[1, 1])
            angles[2] = best_grid_direction(R.T @ (a + ap))
            angles[3] = best_grid_direction(R.T @ (a - ap))
            new_value = _chsh_value(R, angles)
            if new_value <= value + 1e-13:
                value = max(value, new_value)
                break
            value = new_value

        # coordinate-wise golden-section polish
        wt, wp = theta_window, phi_window
        for _ in range(refine_passes):
            for k in range(4):
                for col, window in ((0, wt), (1, wp)):

                    def f(x: float, k: int = k, col: int = col) -> float:
                        trial = angles.copy()
                        trial[k, col] = x
                        return _chsh_value(R, trial)

                    x0 = angles[k, col]
                    angles[k, col] = _golden_max(f, x0 - window, x0 + window)
            wt *= shrink
            wp *= shrink

        best = max(best, _chsh_value(R, angles))

    return min(best, 2.0 * SQRT2 + 1e-9)
