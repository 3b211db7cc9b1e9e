"""Dense state-vector and density-matrix simulation of graph states.

Basis index convention: qubit ``k`` (1-based) is bit ``k-1`` of the z-basis
index, and bit value 0 is the +1 eigenstate of sigma_z. Single-qubit
eigenbases are

    |0_x> = (|0> + |1>)/sqrt2     |1_x> = (|0> - |1>)/sqrt2
    |0_y> = (|0> + i|1>)/sqrt2    |1_y> = (|0> - i|1>)/sqrt2
    |0_z> = |0>                   |1_z> = |1>
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from graphres.errors import CapabilityError, DomainError
from graphres.graph import Graph

MAX_STATE_QUBITS = 24
MAX_DENSITY_QUBITS = 8

_R = 1 / np.sqrt(2)


class Axis(str, enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"

    @property
    def index(self) -> int:
        return "xyz".index(self.value)

    def __str__(self) -> str:
        return self.value


AXES = (Axis.X, Axis.Y, Axis.Z)

# KETS[axis index, bit] -> 2-component ket in the z basis
KETS = np.array(
    [
        [[_R, _R], [_R, -_R]],
        [[_R, 1j * _R], [_R, -1j * _R]],
        [[1, 0], [0, 1]],
    ],
    dtype=complex,
)

# Same kets without the 1/sqrt2 of the x and y axes. Contracting a +-1 sign
# vector with these keeps every intermediate a Gaussian integer.
UNSCALED_KETS = np.array(
    [
        [[1, 1], [1, -1]],
        [[1, 1j], [1, -1j]],
        [[1, 0], [0, 1]],
    ],
    dtype=complex,
)


def ket(axis: Axis | str, bit: int) -> np.ndarray:
    return KETS[Axis(axis).index, bit].copy()


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of ``qubit_count`` qubits; ``amplitudes`` is read-only."""

    qubit_count: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.qubit_count,):
            raise DomainError(
                f"expected {1 << self.qubit_count} amplitudes for {self.qubit_count} qubits, got {amps.shape}")
        if amps is self.amplitudes:
            amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        """Amplitudes as an L-axis tensor whose axis ``k`` is qubit ``k+1``."""
        return self.amplitudes.reshape([2] * self.qubit_count, order="F")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    qubit_count: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        rho = np.array(self.entries, dtype=complex)
        d = 1 << self.qubit_count
        if rho.shape != (d, d):
            raise DomainError(f"expected a {d}x{d} density matrix, got {rho.shape}")
        rho.flags.writeable = False
        object.__setattr__(self, "entries", rho)

    @classmethod
    def from_state(cls, state: StateVector) -> DensityMatrix:
        _check_density_size(state.qubit_count)
        a = state.amplitudes
        return cls(state.qubit_count, np.outer(a, a.conj()))

    @classmethod
    def maximally_mixed(cls, L: int) -> DensityMatrix:
        _check_density_size(L)
        d = 1 << L
        return cls(L, np.eye(d) / d)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def is_valid(self, atol: float = 1e-12) -> bool:
        rho = self.entries
        if not np.allclose(rho, rho.conj().T, atol=atol, rtol=0):
            return False
        if abs(self.trace() - 1) > atol:
            return False
        return float(np.linalg.eigvalsh(rho).min()) >= -1e-10


def _check_state_size(L: int) -> None:
    if not isinstance(L, (int, np.integer)) or L < 1:
        raise DomainError(f"qubit count must be a positive integer, got {L!r}")
    if L > MAX_STATE_QUBITS:
        raise CapabilityError(f"state vectors are limited to {MAX_STATE_QUBITS} qubits, got {L}")


def _check_density_size(L: int) -> None:
    if L > MAX_DENSITY_QUBITS:
        raise CapabilityError(f"density matrices are limited to {MAX_DENSITY_QUBITS} qubits, got {L}")


def initial_state(L: int) -> StateVector:
    """|0_x>^L: amplitude 2^(-L/2) on every z-basis string."""
    _check_state_size(L)
    return StateVector(L, np.full(1 << L, 2.0 ** (-L / 2), dtype=complex))


def product_state(kets: Sequence[Sequence[complex]]) -> StateVector:
    """Tensor product of single-qubit kets, first entry is qubit 1."""
    L = len(kets)
    _check_state_size(L)
    out = np.ones(1, dtype=complex)
    for k in kets:
        out = np.kron(np.asarray(k, dtype=complex), out)
    return StateVector(L, out)


def _cz_mask(L: int, k: int, l: int) -> np.ndarray:
    idx = np.arange(1 << L, dtype=np.int64)
    return ((idx >> (k - 1)) & (idx >> (l - 1)) & 1).astype(bool)


def apply_cz(state: StateVector, k: int, l: int) -> StateVector:
    """Controlled-Z between qubits ``k`` and ``l``: negate strings with both bits set."""
    L = state.qubit_count
    if k == l:
        raise DomainError(f"CZ needs two distinct qubits, got {k} twice")
    for q in (k, l):
        if not 1 <= q <= L:
            raise DomainError(f"qubit {q} outside [1, {L}]")
    amps = state.amplitudes.copy()
    amps[_cz_mask(L, k, l)] *= -1
    return StateVector(L, amps)


def graph_signs(G: Graph, order: Iterable[tuple[int, int]] | None = None) -> np.ndarray:
    """(-1)^(number of edges inside the support of each basis string), as int8."""
    L = G.node_count
    _check_state_size(L)
    idx = np.arange(1 << L, dtype=np.int64)
    parity = np.zeros(1 << L, dtype=np.int8)
    for k, l in (order if order is not None else G.sorted_edges()):
        parity ^= ((idx >> (k - 1)) & (idx >> (l - 1)) & 1).astype(np.int8)
    return (1 - 2 * parity).astype(np.int8)


def graph_state(G: Graph, order: Iterable[tuple[int, int]] | None = None) -> StateVector:
    """Apply CZ along every edge of ``G`` to |0_x>^L.

    ``order`` optionally fixes the gate order; the result does not depend on it.
    """
    L = G.node_count
    signs = graph_signs(G, order)
    return StateVector(L, signs * 2.0 ** (-L / 2))


def basis_overlap(state: StateVector, axes: Sequence[Axis | str], bits: Sequence[int]) -> complex:
    """<b_kappa | psi> for the product basis state with ``bits[k]`` along ``axes[k]``."""
    L = state.qubit_count
    if len(axes) != L or len(bits) != L:
        raise DomainError(f"need {L} axes and {L} bits, got {len(axes)} and {len(bits)}")
    t = state.tensor()
    for a, b in zip(axes, bits):
        if b not in (0, 1):
            raise DomainError(f"bit values must be 0 or 1, got {b!r}")
        t = np.tensordot(KETS[Axis(a).index, b].conj(), t, axes=([0], [0]))
    return complex(t)


def dephase(state: StateVector, q: float) -> DensityMatrix:
    """Independent z-dephasing with probability ``q`` on every qubit.

    Each qubit channel is rho -> (1-q) rho + q Z rho Z, so the element
    rho[i, j] is scaled by (1 - 2q)^hamming(i, j).
    """
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"dephasing probability {q} outside [0, 1]")
    L = state.qubit_count
    _check_density_size(L)
    idx = np.arange(1 << L)
    diff = idx[:, None] ^ idx[None, :]
    hamming = np.zeros(diff.shape, dtype=np.int64)
    for k in range(L):
        hamming += (diff >> k) & 1
    rho = np.outer(state.amplitudes, state.amplitudes.conj()) * (1 - 2 * q) ** hamming
    return DensityMatrix(L, rho)
