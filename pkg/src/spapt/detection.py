"""Entanglement verdicts by three routes.

* ``ppt``: exact partial-transpose spectrum, threshold 0 (the oracle).
* ``spa_spectrum``: spectrum of the physically approximated partial
  transpose applied to the state, threshold 2/9.
* ``f_hat``: an operator assembled purely from measured outcome
  probabilities, thresholded at 2/9.  The assembly linearly inverts the
  measured table (dual frame of the reconstruction basis on A), so on
  ideal tables it reproduces the channel output exactly; on sampled
  tables it carries shot noise only.

A fixed entanglement witness expectation is included as the
basis-dependent baseline the operation-based routes are contrasted with.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import NumericError, ValidationError, herm_eig, partial_transpose
from .states import DensityMatrix
from .channels import apply, spa_pt, tetrahedral_states
from .tomography import ProbabilityTable, ideal_probabilities, tomo_basis

__all__ = [
    "PPT_THRESHOLD",
    "SPA_THRESHOLD",
    "FHatOperator",
    "DetectionVerdict",
    "f_hat",
    "lambda_min_d",
    "lambda_min_det_scan",
    "detect",
    "witness_expectation",
]

PPT_THRESHOLD = 0.0
#: fraction of admixed white noise per output eigenvalue; separable states
#: cannot fall below it after the approximated partial transpose
SPA_THRESHOLD = 2.0 / 9.0

METHODS = ("ppt", "spa_spectrum", "f_hat")


@dataclass(frozen=True)
class FHatOperator:
    """Hermitian 4x4 operator reconstructed from a probability table."""

    mat: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.mat, dtype=complex)
        if m.shape != (4, 4):
            raise ValidationError(f"expected a 4x4 matrix, got {m.shape}")
        defect = float(np.max(np.abs(m - m.conj().T)))
        if defect > 1e-9:
            raise ValidationError(f"operator is not Hermitian: max defect = {defect:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)


@dataclass(frozen=True)
class DetectionVerdict:
    """Outcome of one detection run; ``entangled`` iff the minimum
    eigenvalue falls strictly below the method threshold."""

    method: str
    lambda_min: float
    threshold: float
    verdict: str
    shots: int
    margin: float


@lru_cache(maxsize=1)
def _reconstruction_operators() -> tuple[np.ndarray, list[np.ndarray], list[np.ndarray], list[np.ndarray]]:
    projectors = [t.projector() for t in tomo_basis()]
    gram = np.array([[np.real(np.trace(a @ b)) for b in projectors] for a in projectors])
    gram_inv = np.linalg.inv(gram)
    prepared_b = [v.projector() for v in tetrahedral_states()]
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    prepared_a = [sy @ proj @ sy for proj in prepared_b]
    return gram_inv, projectors, prepared_b, prepared_a


def f_hat(table: ProbabilityTable) -> FHatOperator:
    """Assemble the detection operator from measured probabilities.

    The ``p`` block is inverted through the dual frame of the A-side
    reconstruction projectors, recovering the conditional A operators of
    the transpose branch; the ``q + r`` sums weight the re-prepared states
    of the inversion branch with a maximally mixed B.  The whole map is
    linear in the table, and on exact Born probabilities it equals the
    output of the approximated partial transpose.
    """
    gram_inv, projectors, prepared_b, prepared_a = _reconstruction_operators()
    coeff = gram_inv @ table.p  # coeff[i, j]: weight of projector i in the j-th conditional
    mat = np.zeros((4, 4), dtype=complex)
    for j in range(4):
        cond = sum(coeff[i, j] * projectors[i] for i in range(4))
        mat += np.kron(cond, prepared_b[j]) / 3.0
    eye_half = np.eye(2, dtype=complex) / 2.0
    for k in range(4):
        mat += (2.0 / 3.0) * (table.q[k] + table.r[k]) * np.kron(prepared_a[k], eye_half)
    return FHatOperator((mat + mat.conj().T) / 2.0)


def lambda_min_d(operator: FHatOperator) -> float:
    """Minimum eigenvalue of the reconstructed operator (authoritative
    eigensolver route)."""
    return float(herm_eig(operator.mat).values[0])


def lambda_min_det_scan(operator: FHatOperator, grid_points: int = 2048) -> float:
    """Minimum root of det(F - kappa I) by sign-change scan plus bisection.

    Cross-check for :func:`lambda_min_d`: for a Hermitian operator the
    smallest determinant root is the smallest eigenvalue.  Assumes the
    minimal root is simple (true for generic tables).
    """
    m = operator.mat
    radii = np.sum(np.abs(m), axis=1) - np.abs(np.diag(m))
    lo = float(np.min(np.real(np.diag(m)) - radii)) - 1e-6
    hi = float(np.max(np.real(np.diag(m)) + radii)) + 1e-6

    def char_det(kappa: float) -> float:
        return float(np.real(np.linalg.det(m - kappa * np.eye(4))))

    xs = np.linspace(lo, hi, grid_points)
    values = np.array([char_det(x) for x in xs])
    crossings = np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]
    if len(crossings) == 0:
        raise NumericError("no determinant sign change found; minimal root may be degenerate")
    a, b = float(xs[crossings[0]]), float(xs[crossings[0] + 1])
    fa = char_det(a)
    for _ in range(200):
        mid = (a + b) / 2.0
        fm = char_det(mid)
        if fa * fm <= 0:
            b = mid
        else:
            a, fa = mid, fm
    return (a + b) / 2.0


@lru_cache(maxsize=1)
def _spa_pt_channel():
    return spa_pt()


def _verdict(method: str, lam: float, threshold: float, shots: int) -> DetectionVerdict:
    verdict = "entangled" if lam < threshold else "undetected"
    return DetectionVerdict(
        method=method,
        lambda_min=float(lam),
        threshold=float(threshold),
        verdict=verdict,
        shots=int(shots),
        margin=abs(float(lam) - float(threshold)),
    )


def detect(target: DensityMatrix | ProbabilityTable, method: str) -> DetectionVerdict:
    """Run one detection method on a state or on a measured table.

    ``ppt`` and ``spa_spectrum`` require a state.  ``f_hat`` accepts a
    state (its ideal table is computed internally) or a table, whose
    ``shots_per_setting`` is echoed into the verdict.
    """
    if method not in METHODS:
        raise ValidationError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "f_hat":
        if isinstance(target, DensityMatrix):
            table = ideal_probabilities(target)
        elif isinstance(target, ProbabilityTable):
            table = target
        else:
            raise ValidationError("f_hat needs a DensityMatrix or a ProbabilityTable")
        lam = lambda_min_d(f_hat(table))
        return _verdict(method, lam, SPA_THRESHOLD, table.shots_per_setting)
    if not isinstance(target, DensityMatrix):
        raise ValidationError(f"method {method!r} needs a DensityMatrix")
    if target.dim != 4:
        raise ValidationError("detection needs a two-qubit state")
    if method == "ppt":
        lam = float(herm_eig(partial_transpose(target.mat)).values[0])
        return _verdict(method, lam, PPT_THRESHOLD, 0)
    lam = float(herm_eig(apply(_spa_pt_channel(), target).mat).values[0])
    return _verdict(method, lam, SPA_THRESHOLD, 0)


def witness_expectation(rho: DensityMatrix, q_projector: np.ndarray) -> float:
    """Expectation of the witness built from a pure-state projector Q.

    Returns tr[(identity (x) transpose)(Q) rho]; a negative value
    certifies entanglement.  Unlike the operation-based routes, the
    verdict depends on how Q is aligned with the state's local basis.
    """
    if rho.dim != 4:
        raise ValidationError("the witness baseline needs a two-qubit state")
    q = np.asarray(q_projector, dtype=complex)
    if q.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 projector, got {q.shape}")
    if float(np.max(np.abs(q - q.conj().T))) > 1e-9:
        raise ValidationError("Q must be Hermitian")
    if float(np.max(np.abs(q @ q - q))) > 1e-9:
        raise ValidationError("Q must be idempotent (a projector)")
    if abs(complex(np.trace(q)) - 1.0) > 1e-6:
        raise ValidationError("Q must project onto a single pure state (trace 1)")
    witness = partial_transpose(q)
    return float(np.real(np.trace(witness @ rho.mat)))
