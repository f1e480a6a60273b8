"""Dense complex linear algebra for small Hermitian problems.

All operations act on plain ``numpy`` arrays of complex dtype and are pure
functions: nothing here mutates its inputs, so everything is safe to call
concurrently.  The eigensolver is a cyclic complex Jacobi iteration, which
is simple and very accurate for the matrix sizes this package needs
(dimension at most 16, i.e. up to the Choi matrix of a two-qubit channel).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = [
    "ValidationError",
    "NumericError",
    "PAULI_I",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "PAULIS",
    "HERMITIAN_TOL",
    "PSD_TOL",
    "Spectrum",
    "dag",
    "hermiticity_defect",
    "herm_eig",
    "psd_sqrt",
    "partial_transpose",
    "partial_trace",
]


class ValidationError(ValueError):
    """An input violates a documented precondition or invariant."""


class NumericError(RuntimeError):
    """A numeric procedure failed to converge within its iteration cap."""


PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)
for _p in PAULIS:
    _p.setflags(write=False)

#: max |m - m^dag| entry accepted as "Hermitian"
HERMITIAN_TOL = 1e-9
#: eigenvalues above -PSD_TOL are treated as nonnegative
PSD_TOL = 1e-9

_MAX_DIM = 16
_OFF_DIAG_THRESHOLD = 1e-14
_MAX_SWEEPS = 100


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def _as_square(m: np.ndarray) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-entry deviation of ``m`` from its conjugate transpose."""
    a = _as_square(m)
    return float(np.max(np.abs(a - a.conj().T)))


class Spectrum(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``values`` are real and sorted ascending; column ``k`` of ``vectors``
    is the orthonormal eigenvector paired with ``values[k]``.
    """

    values: np.ndarray
    vectors: np.ndarray


def herm_eig(m: np.ndarray) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array
        Square Hermitian matrix (max |m - m^dag| entry within 1e-9),
        dimension at most 16.

    Returns
    -------
    Spectrum
        Ascending eigenvalues and matching orthonormal eigenvectors.
        The reconstruction ``sum_k w_k v_k v_k^dag`` matches ``m`` to
        better than 1e-9 in max-entry norm.

    Raises
    ------
    ValidationError
        Non-Hermitian input beyond tolerance, or unsupported dimension.
    NumericError
        No convergence within the sweep cap (does not happen for valid
        input; the cap is a hard safety stop).
    """
    a = _as_square(m)
    n = a.shape[0]
    if n > _MAX_DIM:
        raise ValidationError(f"dimension {n} exceeds the supported maximum {_MAX_DIM}")
    defect = float(np.max(np.abs(a - a.conj().T)))
    if defect > HERMITIAN_TOL:
        raise ValidationError(f"matrix is not Hermitian: max |m - m^dag| = {defect:.3e}")

    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    # Scale-relative stop; the off-norm must be summed from the off-diagonal
    # entries directly (total^2 - diag^2 cancels catastrophically).
    scale = max(1.0, float(np.linalg.norm(a)))
    converged = False
    for _ in range(_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= _OFF_DIAG_THRESHOLD * scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag == 0.0:
                    continue
                phase = g / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # One complex Jacobi rotation J with J[p,p]=J[q,q]=c,
                # J[p,q] = s*phase, J[q,p] = -s*conj(phase); a <- J^dag a J.
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * np.conj(phase) * cq
                a[:, q] = s * phase * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * phase * rq
                a[q, :] = s * np.conj(phase) * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    if not converged:
        raise NumericError(f"Jacobi iteration did not converge in {_MAX_SWEEPS} sweeps")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return Spectrum(values=w[order], vectors=v[:, order])


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-1e-9, 0) are clamped to zero before the square root;
    anything below -1e-9 is rejected as genuinely non-PSD.
    """
    w, v = herm_eig(m)
    if w[0] < -PSD_TOL:
        raise ValidationError(f"matrix is not PSD: min eigenvalue = {w[0]:.3e}")
    root = np.sqrt(np.clip(w, 0.0, None))
    out = (v * root) @ v.conj().T
    return (out + out.conj().T) / 2.0


def partial_transpose(m: np.ndarray) -> np.ndarray:
    """Transpose the second qubit of a two-qubit operator.

    In the product basis {|00>, |01>, |10>, |11>} each 2x2 block indexed
    by the first qubit is transposed in the second-qubit indices.  The map
    is an involution and preserves trace and Hermiticity; it does not
    preserve positivity, which is the whole point.
    """
    a = _as_square(m)
    if a.shape[0] != 4:
        raise ValidationError(f"partial transpose is defined for dim 4, got {a.shape[0]}")
    return a.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def partial_trace(m: np.ndarray, keep: str) -> np.ndarray:
    """Reduce a two-qubit operator to the kept subsystem ("A" or "B")."""
    a = _as_square(m)
    if a.shape[0] != 4:
        raise ValidationError(f"partial trace is defined for dim 4, got {a.shape[0]}")
    t = a.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("abcb->ac", t)
    if keep == "B":
        return np.einsum("abac->bc", t)
    raise ValidationError(f"keep must be 'A' or 'B', got {keep!r}")
