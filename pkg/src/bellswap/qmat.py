"""Small dense complex linear algebra: tensor products, partial trace, 3x3 symmetric eigenvalues.

Everything in this package lives in dimensions 2, 3, 4 and 16.  The
16-dimensional space is the four-qubit register ordered A, B, B', C,
where B and B' are the middle qubits handed to the Bell measurement.
The composite index convention is row-major (first tensor factor is the
most significant qubit).
"""

from __future__ import annotations

import math

import numpy as np

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product for the two shapes this artifact uses.

    2x2 (x) 2x2 -> 4x4 (Pauli pairs, two-qubit operators) and
    4x4 (x) 4x4 -> 16x16 (pair states on A,B and B',C stacked into the
    A,B,B',C register).  Any other shape combination is a contract
    violation.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if (a.shape, b.shape) not in (((2, 2), (2, 2)), ((4, 4), (4, 4))):
        raise ValueError(
            f"tensor supports 2x2 (x) 2x2 and 4x4 (x) 4x4, got {a.shape} (x) {b.shape}"
        )
    return np.kron(a, b)


def middle_pair_operator(op: np.ndarray) -> np.ndarray:
    """Embed a two-qubit operator on B, B' into the A,B,B',C register: I (x) op (x) I."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (4, 4):
        raise ValueError(f"expected a 4x4 operator on the middle qubits, got {op.shape}")
    return np.kron(np.kron(I2, op), I2)


def partial_trace_middle(m: np.ndarray) -> np.ndarray:
    """Trace out the middle qubits B, B' of a 16x16 operator.

    The input need not be normalized (post-projection operators are
    fine); the output trace equals the input trace.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (16, 16):
        raise ValueError(f"expected a 16x16 operator, got {m.shape}")
    # row index decomposes as a*8 + (b*2+b')*2 + c -> reshape (2, 4, 2)
    t = m.reshape(2, 4, 2, 2, 4, 2)
    return np.einsum("amcbmd->acbd", t).reshape(4, 4)


def hermitize_check(m: np.ndarray, tol: float) -> bool:
    """True iff max entry of |m - m^dagger| is at most tol."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def eig_sym3(m: np.ndarray, sym_tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues of a real symmetric 3x3 matrix, sorted descending.

    Closed-form trigonometric solution of the characteristic cubic
    (no iterative solver).  Matrices within 1e-14 of diagonal are
    deflated by reading the diagonal directly, which avoids the
    degenerate scale division.  Asymmetry beyond sym_tol is a contract
    violation.
    """
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got {a.shape}")
    if float(np.max(np.abs(a - a.T))) > sym_tol:
        raise ValueError("matrix is not symmetric within tolerance")
    a = 0.5 * (a + a.T)

    d0, d1, d2 = a[0, 0], a[1, 1], a[2, 2]
    off = max(abs(a[0, 1]), abs(a[0, 2]), abs(a[1, 2]))
    if off <= 1e-14:
        return np.sort(np.array([d0, d1, d2]))[::-1]

    q = (d0 + d1 + d2) / 3.0
    p2 = (d0 - q) ** 2 + (d1 - q) ** 2 + (d2 - q) ** 2 + 2.0 * (
        a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    )
    pp = math.sqrt(p2 / 6.0)
    b = (a - q * np.eye(3)) / pp
    half_det = float(np.linalg.det(b)) / 2.0
    # rounding can push the shifted determinant slightly outside [-1, 1]
    half_det = min(1.0, max(-1.0, half_det))
    phi = math.acos(half_det) / 3.0

    e1 = q + 2.0 * pp * math.cos(phi)
    e3 = q + 2.0 * pp * math.cos(phi + 2.0 * math.pi / 3.0)
    e2 = 3.0 * q - e1 - e3
    return np.sort(np.array([e1, e2, e3]))[::-1]
