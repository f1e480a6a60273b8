"""Quantum channels in interchangeable representations.

A channel can be held as a Kraus family, a measure-and-prepare pair list,
or a raw superoperator; products and convex mixtures compose channels.
The module builds the physical (completely positive) approximations to
the transpose and to the inversion, the depolarizer, and their convex
combination that approximates the partial transpose on two qubits, plus
the ideal (non-physical) partial transpose as an oracle.  Choi matrices
certify complete positivity and trace preservation.

Superoperators act on column-vectorized matrices: ``vec`` stacks columns,
so the map ``x -> a x b`` has superoperator ``kron(b.T, a)``.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .linalg import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    ValidationError,
    herm_eig,
    partial_transpose,
)
from .states import DensityMatrix, PureState

__all__ = [
    "Channel",
    "KrausChannel",
    "MeasurePrepareChannel",
    "SuperoperatorChannel",
    "ProductChannel",
    "MixtureChannel",
    "ChoiMatrix",
    "vec",
    "unvec",
    "identity_channel",
    "superoperator_from_function",
    "tetrahedral_states",
    "spa_transpose",
    "spa_inversion",
    "depolarize",
    "spa_pt",
    "ideal_pt",
    "partial_transpose_channel",
    "replace_channel",
    "apply",
    "choi",
    "is_cp",
    "is_tp",
]

_POVM_TOL = 1e-10
_TP_TOL = 1e-9
_CP_TOL = 1e-9


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(m, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v, dtype=complex).reshape(dim, dim, order="F")


class Channel(abc.ABC):
    """A linear map on operators, applied to raw matrices.

    Channels are immutable after construction and application is pure,
    so instances may be shared across concurrent workers.
    """

    @property
    @abc.abstractmethod
    def dim_in(self) -> int: ...

    @property
    @abc.abstractmethod
    def dim_out(self) -> int: ...

    @abc.abstractmethod
    def superoperator(self) -> np.ndarray:
        """Matrix of size (dim_out^2, dim_in^2) acting on vectorized operators."""

    def kraus_ops(self) -> tuple[np.ndarray, ...]:
        raise ValidationError(f"{type(self).__name__} has no Kraus representation")

    def apply_matrix(self, operator: np.ndarray) -> np.ndarray:
        """Apply the map to a raw matrix (no physicality validation)."""
        a = np.asarray(operator, dtype=complex)
        if a.shape != (self.dim_in, self.dim_in):
            raise ValidationError(f"operator shape {a.shape} does not match channel input dim {self.dim_in}")
        return unvec(self.superoperator() @ vec(a), self.dim_out)


def _superop_from_kraus(kraus: Sequence[np.ndarray], dim_in: int, dim_out: int) -> np.ndarray:
    s = np.zeros((dim_out * dim_out, dim_in * dim_in), dtype=complex)
    for k in kraus:
        s += np.kron(k.conj(), k)
    return s


def _check_trace_preserving(kraus: Sequence[np.ndarray], dim_in: int) -> None:
    acc = np.zeros((dim_in, dim_in), dtype=complex)
    for k in kraus:
        acc += k.conj().T @ k
    dev = float(np.max(np.abs(acc - np.eye(dim_in))))
    if dev > _TP_TOL:
        raise ValidationError(f"Kraus family is not trace preserving: max |sum K^dag K - I| = {dev:.3e}")


@dataclass(frozen=True, eq=False)
class KrausChannel(Channel):
    """Channel given by a Kraus family {K_k}; trace preservation is checked."""

    kraus: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        if not ops:
            raise ValidationError("at least one Kraus operator is required")
        shape = ops[0].shape
        if len(shape) != 2 or any(k.shape != shape for k in ops):
            raise ValidationError("all Kraus operators must share one 2-d shape")
        _check_trace_preserving(ops, shape[1])
        object.__setattr__(self, "kraus", ops)

    @property
    def dim_in(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.kraus[0].shape[0]

    def kraus_ops(self) -> tuple[np.ndarray, ...]:
        return self.kraus

    @cached_property
    def _superoperator(self) -> np.ndarray:
        return _superop_from_kraus(self.kraus, self.dim_in, self.dim_out)

    def superoperator(self) -> np.ndarray:
        return self._superoperator

    def apply_matrix(self, operator: np.ndarray) -> np.ndarray:
        a = np.asarray(operator, dtype=complex)
        if a.shape != (self.dim_in, self.dim_in):
            raise ValidationError(f"operator shape {a.shape} does not match channel input dim {self.dim_in}")
        out = np.zeros((self.dim_out, self.dim_out), dtype=complex)
        for k in self.kraus:
            out += k @ a @ k.conj().T
        return out


@dataclass(frozen=True, eq=False)
class MeasurePrepareChannel(Channel):
    """Measure a POVM, then prepare a fixed pure state per outcome.

    Such channels are entanglement breaking and therefore always physical.
    Effects must be PSD and sum to the identity within 1e-10.
    """

    povm: tuple[np.ndarray, ...]
    prepared: tuple[PureState, ...]

    def __post_init__(self) -> None:
        effects = tuple(np.asarray(m, dtype=complex) for m in self.povm)
        if len(effects) != len(self.prepared) or not effects:
            raise ValidationError("povm and prepared lists must have equal nonzero length")
        d = effects[0].shape[0]
        acc = np.zeros((d, d), dtype=complex)
        for m in effects:
            if m.shape != (d, d):
                raise ValidationError("all effects must be square matrices of one dimension")
            w = herm_eig(m).values
            if w[0] < -_POVM_TOL:
                raise ValidationError(f"effect is not PSD: min eigenvalue = {w[0]:.3e}")
            acc += m
        dev = float(np.max(np.abs(acc - np.eye(d))))
        if dev > _POVM_TOL:
            raise ValidationError(f"effects do not sum to identity: max deviation = {dev:.3e}")
        if len({state.dim for state in self.prepared}) != 1:
            raise ValidationError("prepared states must share one dimension")
        object.__setattr__(self, "povm", effects)
        object.__setattr__(self, "prepared", tuple(self.prepared))

    @property
    def dim_in(self) -> int:
        return self.povm[0].shape[0]

    @property
    def dim_out(self) -> int:
        return self.prepared[0].dim

    @cached_property
    def _kraus(self) -> tuple[np.ndarray, ...]:
        # M_k = sum_r |m_kr><m_kr| gives Kraus |prepared_k><m_kr|.
        ops = []
        for effect, out_state in zip(self.povm, self.prepared):
            w, u = herm_eig(effect)
            for r in range(len(w)):
                if w[r] > 1e-12:
                    ops.append(np.outer(out_state.amplitudes, np.sqrt(w[r]) * u[:, r].conj()))
        return tuple(ops)

    def kraus_ops(self) -> tuple[np.ndarray, ...]:
        return self._kraus

    @cached_property
    def _superoperator(self) -> np.ndarray:
        return _superop_from_kraus(self._kraus, self.dim_in, self.dim_out)

    def superoperator(self) -> np.ndarray:
        return self._superoperator

    def apply_matrix(self, operator: np.ndarray) -> np.ndarray:
        a = np.asarray(operator, dtype=complex)
        if a.shape != (self.dim_in, self.dim_in):
            raise ValidationError(f"operator shape {a.shape} does not match channel input dim {self.dim_in}")
        out = np.zeros((self.dim_out, self.dim_out), dtype=complex)
        for effect, state in zip(self.povm, self.prepared):
            out += np.trace(effect @ a) * state.projector()
        return out


@dataclass(frozen=True, eq=False)
class SuperoperatorChannel(Channel):
    """Raw linear map; the escape hatch for non-physical maps like the
    partial transpose.  No CP/TP enforcement at construction."""

    mat: np.ndarray
    dims: tuple[int, int]  # (dim_in, dim_out)

    def __post_init__(self) -> None:
        m = np.asarray(self.mat, dtype=complex)
        din, dout = self.dims
        if m.shape != (dout * dout, din * din):
            raise ValidationError(f"superoperator shape {m.shape} does not match dims {self.dims}")
        object.__setattr__(self, "mat", m)

    @property
    def dim_in(self) -> int:
        return self.dims[0]

    @property
    def dim_out(self) -> int:
        return self.dims[1]

    def superoperator(self) -> np.ndarray:
        return self.mat


@dataclass(frozen=True, eq=False)
class ProductChannel(Channel):
    """Tensor product acting as ``first`` on subsystem A and ``second`` on B."""

    first: Channel
    second: Channel

    @property
    def dim_in(self) -> int:
        return self.first.dim_in * self.second.dim_in

    @property
    def dim_out(self) -> int:
        return self.first.dim_out * self.second.dim_out

    @cached_property
    def _kraus(self) -> tuple[np.ndarray, ...]:
        return tuple(np.kron(a, b) for a in self.first.kraus_ops() for b in self.second.kraus_ops())

    def kraus_ops(self) -> tuple[np.ndarray, ...]:
        return self._kraus

    @cached_property
    def _superoperator(self) -> np.ndarray:
        return _superop_from_kraus(self._kraus, self.dim_in, self.dim_out)

    def superoperator(self) -> np.ndarray:
        return self._superoperator

    def apply_matrix(self, operator: np.ndarray) -> np.ndarray:
        a = np.asarray(operator, dtype=complex)
        if a.shape != (self.dim_in, self.dim_in):
            raise ValidationError(f"operator shape {a.shape} does not match channel input dim {self.dim_in}")
        out = np.zeros((self.dim_out, self.dim_out), dtype=complex)
        for k in self._kraus:
            out += k @ a @ k.conj().T
        return out


@dataclass(frozen=True, eq=False)
class MixtureChannel(Channel):
    """Convex mixture sum_i w_i Lambda_i of channels with equal dimensions."""

    weights: tuple[float, ...]
    channels: tuple[Channel, ...]

    def __post_init__(self) -> None:
        w = tuple(float(x) for x in self.weights)
        if len(w) != len(self.channels) or not w:
            raise ValidationError("weights and channels must have equal nonzero length")
        if any(x < 0 for x in w) or abs(sum(w) - 1.0) > 1e-12:
            raise ValidationError("weights must be nonnegative and sum to 1")
        dims = {(c.dim_in, c.dim_out) for c in self.channels}
        if len(dims) != 1:
            raise ValidationError("mixed channels must share dimensions")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "channels", tuple(self.channels))

    @property
    def dim_in(self) -> int:
        return self.channels[0].dim_in

    @property
    def dim_out(self) -> int:
        return self.channels[0].dim_out

    def kraus_ops(self) -> tuple[np.ndarray, ...]:
        return tuple(np.sqrt(w) * k for w, c in zip(self.weights, self.channels) for k in c.kraus_ops())

    @cached_property
    def _superoperator(self) -> np.ndarray:
        s = np.zeros((self.dim_out**2, self.dim_in**2), dtype=complex)
        for w, c in zip(self.weights, self.channels):
            s += w * c.superoperator()
        return s

    def superoperator(self) -> np.ndarray:
        return self._superoperator

    def apply_matrix(self, operator: np.ndarray) -> np.ndarray:
        a = np.asarray(operator, dtype=complex)
        if a.shape != (self.dim_in, self.dim_in):
            raise ValidationError(f"operator shape {a.shape} does not match channel input dim {self.dim_in}")
        out = np.zeros((self.dim_out, self.dim_out), dtype=complex)
        for w, c in zip(self.weights, self.channels):
            out += w * c.apply_matrix(a)
        return out


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel((np.eye(dim, dtype=complex),))


def superoperator_from_function(fn: Callable[[np.ndarray], np.ndarray], dim_in: int, dim_out: int | None = None) -> SuperoperatorChannel:
    """Build a superoperator column by column from a matrix-valued map."""
    dim_out = dim_in if dim_out is None else dim_out
    s = np.zeros((dim_out * dim_out, dim_in * dim_in), dtype=complex)
    for l in range(dim_in):
        for k in range(dim_in):
            basis = np.zeros((dim_in, dim_in), dtype=complex)
            basis[k, l] = 1.0
            s[:, k + dim_in * l] = vec(fn(basis))
    return SuperoperatorChannel(s, (dim_in, dim_out))


def tetrahedral_states() -> tuple[PureState, PureState, PureState, PureState]:
    """Four preparation states forming a regular tetrahedron on the Bloch sphere.

    Their conjugated rank-1 effects at weight 1/2 form a complete POVM
    (the projector sum is 2*I) and all pairwise overlaps |<v_j|v_k>|^2
    equal 1/3.  Global phases are fixed by a real positive amplitude on
    the first basis vector.
    """
    num = 1j * np.exp(1j * np.pi * 2.0 / 3.0)
    den_plus = 1j + np.exp(-1j * np.pi * 2.0 / 3.0)
    den_minus = 1j - np.exp(-1j * np.pi * 2.0 / 3.0)
    ratios = (num / den_plus, -num / den_minus, num / den_minus, -num / den_plus)
    states = []
    for w in ratios:
        amp = np.array([1.0, w], dtype=complex)
        states.append(PureState(amp / np.linalg.norm(amp)))
    return tuple(states)


def _tetrahedral_povm() -> tuple[np.ndarray, ...]:
    effects = []
    for v in tetrahedral_states():
        conj_amp = v.amplitudes.conj()
        effects.append(np.outer(conj_amp, conj_amp.conj()) / 2.0)
    return tuple(effects)


def spa_transpose() -> MeasurePrepareChannel:
    """Physical approximation to the single-qubit transpose.

    Measures the tetrahedral POVM and prepares the matching tetrahedral
    state; the resulting action is (1/3) rho^T + (2/3) tr(rho) I/2.
    """
    return MeasurePrepareChannel(_tetrahedral_povm(), tetrahedral_states())


def spa_inversion() -> MeasurePrepareChannel:
    """Physical approximation to the inversion, sigma_y-conjugate of
    :func:`spa_transpose`; acts as (2/3) tr(rho) I - (1/3) rho."""
    prepared = tuple(PureState(PAULI_Y @ v.amplitudes) for v in tetrahedral_states())
    return MeasurePrepareChannel(_tetrahedral_povm(), prepared)


def depolarize() -> KrausChannel:
    """Fully depolarizing qubit channel as uniform random Pauli application."""
    return KrausChannel(tuple(p / 2.0 for p in (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)))


def spa_pt() -> MixtureChannel:
    """Physical approximation of the two-qubit partial transpose.

    Convex mixture, with weights 1/3 and 2/3, of the transpose
    approximation on B and of (inversion approximation on A) tensor
    (depolarizer on B).  As a superoperator it equals
    ``rho -> (1/9) PT(rho) + (2/9) tr(rho) I_4``, so output spectra are
    the partial-transpose spectra compressed into [1/6, 1/3].
    """
    branch_b = ProductChannel(identity_channel(2), spa_transpose())
    branch_a = ProductChannel(spa_inversion(), depolarize())
    return MixtureChannel((1.0 / 3.0, 2.0 / 3.0), (branch_b, branch_a))


def ideal_pt(rho: DensityMatrix) -> np.ndarray:
    """Exact partial transpose of a two-qubit state, returned as a raw
    matrix because the result is generally not positive semidefinite."""
    if rho.dim != 4:
        raise ValidationError("the partial transpose oracle needs a two-qubit state")
    return partial_transpose(rho.mat)


def partial_transpose_channel() -> SuperoperatorChannel:
    """The non-physical map ``identity (x) transpose`` on two qubits."""
    return superoperator_from_function(partial_transpose, 4)


def replace_channel(dim: int) -> SuperoperatorChannel:
    """The map ``rho -> tr(rho) I/dim``."""
    return superoperator_from_function(lambda x: np.trace(x) * np.eye(dim) / dim, dim)


def apply(channel: Channel, rho: DensityMatrix) -> DensityMatrix:
    """Apply a physical channel to a state; the output is validated."""
    if channel.dim_in != rho.dim:
        raise ValidationError(f"channel input dim {channel.dim_in} does not match state dim {rho.dim}")
    out = channel.apply_matrix(rho.mat)
    return DensityMatrix((out + out.conj().T) / 2.0)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """State obtained by acting with the channel on half of a normalized
    maximally entangled pair; PSD iff the channel is completely positive.
    Trace equals 1 for trace-preserving maps."""

    mat: np.ndarray
    dims: tuple[int, int]  # (dim_in, dim_out)

    def __post_init__(self) -> None:
        m = np.asarray(self.mat, dtype=complex)
        defect = float(np.max(np.abs(m - m.conj().T)))
        if defect > 1e-9:
            raise ValidationError(f"Choi matrix is not Hermitian: max defect = {defect:.3e}")
        object.__setattr__(self, "mat", m)


def choi(channel: Channel) -> ChoiMatrix:
    """Choi matrix (Lambda (x) id)[|Omega><Omega|] with |Omega> normalized."""
    d = channel.dim_in
    out_dim = channel.dim_out
    c = np.zeros((out_dim * d, out_dim * d), dtype=complex)
    for k in range(d):
        for l in range(d):
            e_kl = np.zeros((d, d), dtype=complex)
            e_kl[k, l] = 1.0
            c += np.kron(channel.apply_matrix(e_kl), e_kl)
    return ChoiMatrix(c / d, (d, out_dim))


def is_cp(channel: Channel) -> bool:
    """Complete positivity: the Choi matrix has no eigenvalue below -1e-9."""
    w = herm_eig(choi(channel).mat).values
    return bool(w[0] >= -_CP_TOL)


def is_tp(channel: Channel) -> bool:
    """Trace preservation: the unnormalized Choi matrix partial-traced
    over the output equals the identity within 1e-9."""
    c = choi(channel)
    din, dout = c.dims
    j = din * c.mat
    reduced = np.einsum("abad->bd", j.reshape(dout, din, dout, din))
    return bool(float(np.max(np.abs(reduced - np.eye(din)))) <= _TP_TOL)
