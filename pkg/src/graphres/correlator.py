"""GHZ-coherence correlator and its exhaustive maximization over Pauli axes.

For a direction vector kappa the coherence is the single matrix element
<1_kappa...1_kappa| rho |0_kappa...0_kappa>, i.e. the expectation of the tensor
product of raising operators |0_kappa><1_kappa|. Each qubit may also use the
opposite orientation |1_kappa><0_kappa|. The correlator E is the largest
squared modulus of the coherence over all axes and orientations, and the
exponent gamma is defined by E = 4^-(1 + gamma). Including orientations makes
E invariant under local Clifford operations.
"""

from __future__ import annotations

import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from graphres.errors import CapabilityError, DomainError
from graphres.graph import Graph
from graphres.state import AXES, KETS, UNSCALED_KETS, Axis, DensityMatrix, StateVector, graph_signs

MAX_EXACT_QUBITS = 12
DYADIC_TOL = 1e-9
# relative gap under which two E values count as tied
TIE_RTOL = 1e-12
# leading qubits whose axes are fixed per work chunk (3^2 = 9 chunks at least)
_MIN_CHUNK_PREFIX = 2


@dataclass(frozen=True)
class DirectionVector:
    """One Pauli axis per qubit, qubit 1 first, plus an optional orientation.

    A flipped entry swaps the roles of the two eigenstates on that qubit, so
    the local raising operator becomes |1_k><0_k|. Flipping every qubit
    conjugates the coherence and leaves its modulus unchanged.
    """

    axes: tuple[Axis, ...]
    flips: tuple[bool, ...] = ()

    def __post_init__(self) -> None:
        axes = tuple(Axis(a) for a in self.axes)
        flips = tuple(bool(f) for f in self.flips) or (False,) * len(axes)
        if len(flips) != len(axes):
            raise DomainError(f"{len(flips)} orientation flags for {len(axes)} axes")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "flips", flips)

    @classmethod
    def parse(cls, text: str) -> DirectionVector:
        """Accepts ``"z x x"``, ``"zxx"``, ``"z,x,x"``; a leading ``-`` flips an entry."""
        tokens = re.findall(r"-?[xyz]|\S", text.replace(",", " ").lower())
        if not tokens or any(t.lstrip("-") not in ("x", "y", "z") for t in tokens):
            raise DomainError(f"invalid direction vector {text!r}")
        return cls(tuple(t[-1] for t in tokens), tuple(t.startswith("-") for t in tokens))

    @classmethod
    def uniform(cls, axis: Axis | str, L: int) -> DirectionVector:
        return cls((Axis(axis),) * L)

    @property
    def oriented(self) -> bool:
        return any(self.flips)

    def __len__(self) -> int:
        return len(self.axes)

    def __str__(self) -> str:
        return " ".join(("-" if f else "") + a.value for a, f in zip(self.axes, self.flips))


@dataclass(frozen=True)
class CorrelatorResult:
    E: float
    gamma: float
    kappa_star: DirectionVector
    exact_dyadic: bool


def gamma_from_E(E: float) -> float:
    """Invert E = 4^-(1 + gamma)."""
    if not E > 0:
        raise DomainError(f"E must be positive, got {E}")
    if E > 0.25 * (1 + 1e-12):
        raise DomainError(f"E={E} exceeds the Cauchy-Schwarz bound 1/4")
    return max(0.0, -1.0 - math.log2(E) / 2)


def E_from_gamma(gamma: float) -> float:
    return 4.0 ** (-(1.0 + gamma))


def is_dyadic(E: float) -> bool:
    if E <= 0:
        return False
    x = math.log2(E)
    return abs(x - round(x)) <= DYADIC_TOL


def _as_direction(kappa: DirectionVector | str | Sequence[Axis | str]) -> DirectionVector:
    if isinstance(kappa, DirectionVector):
        return kappa
    if isinstance(kappa, str):
        return DirectionVector.parse(kappa)
    return DirectionVector(tuple(kappa))


def coherence_at(state: StateVector, kappa: DirectionVector | str | Sequence[Axis | str]) -> complex:
    """<1_kappa|psi> <psi|0_kappa> for a pure state (roles swapped on flipped qubits)."""
    d = _as_direction(kappa)
    L = state.qubit_count
    if len(d) != L:
        raise DomainError(f"direction vector has {len(d)} entries for {L} qubits")
    over = []
    for bit in (0, 1):
        t = state.tensor()
        for a, f in zip(d.axes, d.flips):
            t = np.tensordot(KETS[a.index, bit ^ f].conj(), t, axes=([0], [0]))
        over.append(complex(t))
    return over[1] * over[0].conjugate()


def coherence_at_mixed(rho: DensityMatrix, kappa: DirectionVector | str | Sequence[Axis | str]) -> complex:
    """<1_kappa...| rho |0_kappa...> (roles swapped on flipped qubits)."""
    d = _as_direction(kappa)
    L = rho.qubit_count
    if len(d) != L:
        raise DomainError(f"direction vector has {len(d)} entries for {L} qubits")
    bra1 = np.ones(1, dtype=complex)
    ket0 = np.ones(1, dtype=complex)
    for a, f in zip(d.axes, d.flips):
        bra1 = np.kron(KETS[a.index, 1 ^ int(f)].conj(), bra1)
        ket0 = np.kron(KETS[a.index, int(f)], ket0)
    return complex(bra1 @ rho.entries @ ket0)


def _abs2(a: np.ndarray) -> np.ndarray:
    # avoids the sqrt inside np.abs, which would spoil exact integer values
    return a.real * a.real + a.imag * a.imag


def default_workers() -> int:
    raw = os.environ.get("GRAPHRES_THREADS")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise DomainError(f"GRAPHRES_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise DomainError(f"GRAPHRES_THREADS must be a positive integer, got {raw!r}")
    return n


def _run_chunks(job, prefixes, workers: int) -> list:
    if workers > 1 and len(prefixes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, prefixes))
    return [job(p) for p in prefixes]


def _stack(parts: list[np.ndarray], L: int) -> np.ndarray:
    # parts come in serial prefix order, so the result is plain C order
    return np.concatenate([p.ravel() for p in parts]).reshape([3] * L)


# --------------------------------------------------------------------------
# fixed orientation: overlaps with |0...0> and |1...1> in every product basis
#
# Contracting the state tensor one qubit at a time with the 3x2 matrix of bras
# for bit b gives <b...b|psi> for all 3^L direction vectors in O(3^L).


def _sign_vector(state: StateVector) -> np.ndarray | None:
    """Return the +-1 pattern if every amplitude is +-2^(-L/2), else None."""
    a = state.amplitudes
    mag = 2.0 ** (-state.qubit_count / 2)
    if np.any(a.imag != 0):
        return None
    re_ = a.real
    if not np.all(np.abs(np.abs(re_) - mag) <= 1e-12 * mag):
        return None
    return np.where(re_ > 0, 1.0, -1.0)


def _contract_all(t: np.ndarray, bras: np.ndarray) -> np.ndarray:
    for _ in range(t.ndim):
        t = np.tensordot(t, bras, axes=([0], [1]))
    return t


def _axis_scale(L: int) -> np.ndarray:
    # undo the missing 1/sqrt2 of unscaled x and y kets, squared twice
    weight = np.array([0.25, 0.25, 1.0])
    scale = np.ones([1] * L)
    for k in range(L):
        shape = [1] * L
        shape[k] = 3
        scale = scale * weight.reshape(shape)
    return scale * 4.0 ** (-L)


def E_table_fixed(state: StateVector, *, max_qubits: int = MAX_EXACT_QUBITS,
                  workers: int | None = None) -> np.ndarray:
    """|<1..1_kappa|psi><psi|0..0_kappa>|^2 for every kappa, without orientation freedom.

    This is not invariant under local Clifford operations; it is kept as a
    lower bound and cross-check for ``E_table``.
    """
    L = state.qubit_count
    _check_limit(L, max_qubits)
    signs = _sign_vector(state)
    if signs is not None:
        tensor = signs.astype(complex).reshape([2] * L, order="F")
        kets = UNSCALED_KETS
    else:
        tensor = state.tensor()
        kets = KETS

    def job(prefix):
        out = []
        for bit in (0, 1):
            bras = kets[:, bit, :].conj()
            t = tensor
            for a in prefix:
                t = np.tensordot(bras[a], t, axes=([0], [0]))
            out.append(_contract_all(t, bras) if t.ndim else t)
        return _abs2(out[0]) * _abs2(out[1])

    workers = default_workers() if workers is None else workers
    prefixes = list(product(range(3), repeat=_prefix_len(L, 0)))
    table = _stack(_run_chunks(job, prefixes, workers), L)
    if signs is not None:
        table = table * _axis_scale(L)
    return table


def _prefix_len(L: int, minimum: int) -> int:
    # Depends on L only, never on the worker count, so every thread setting
    # performs the same floating-point operations in the same order.
    return min(L, max(minimum, _MIN_CHUNK_PREFIX))


def _check_limit(L: int, max_qubits: int) -> None:
    if L > max_qubits:
        raise CapabilityError(f"exhaustive maximization is limited to {max_qubits} qubits, got {L}")


# --------------------------------------------------------------------------
# free orientation, graph states
#
# A graph state is a stabilizer state. Measured in the product basis kappa its
# outcome distribution is uniform on an affine subspace whose linear part V is
# orthogonal to the supports of the stabilizer elements that are diagonal in
# kappa (each factor identity or sigma_kappa). With D(kappa) the number of such
# elements, the best coherence over orientations is
#     E(kappa) = D(kappa)^2 4^-L   if every diagonal element has even weight
#              = 0                 otherwise,
# because both b and its complement lie in the support exactly when the
# all-ones vector is in V. D and the odd-weight count follow from a histogram
# of stabilizer Pauli patterns summed per qubit over {I, sigma_kappa}.

# pattern digit per qubit: x_bit + 2 z_bit -> I=0, X=1, Z=2, Y=3
_AXIS_DIGIT = (1, 3, 2)
# above this many qubits the 4^n histogram is split over leading axes
_HIST_QUBITS = 12


def graph_from_state(state: StateVector) -> Graph | None:
    """Recover G if ``state`` equals +-|G>, else None."""
    signs = _sign_vector(state)
    if signs is None:
        return None
    L = state.qubit_count
    s = (signs * signs[0]).astype(np.int8)
    if any(s[1 << k] != 1 for k in range(L)):
        return None
    edges = [(k + 1, l + 1) for k in range(L) for l in range(k + 1, L) if s[(1 << k) | (1 << l)] == -1]
    g = Graph(L, frozenset(edges))
    if not np.array_equal(graph_signs(g), s):
        return None
    return g


def _stabilizer_patterns(masks: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Digit matrix (2^L x L) and weight parity of every stabilizer element."""
    L = len(masks)
    T = np.arange(1 << L, dtype=np.int64)
    z = np.zeros_like(T)
    for v, m in enumerate(masks):
        z ^= np.where((T >> v) & 1, m, 0)
    xb = (T[:, None] >> np.arange(L)) & 1
    zb = (z[:, None] >> np.arange(L)) & 1
    digits = xb + 2 * zb
    odd = ((xb | zb).sum(axis=1) & 1).astype(bool)
    return digits, odd


def _sum_over_axes(h: np.ndarray, n: int) -> np.ndarray:
    """Map a (4,)*n pattern histogram to (3,)*n sums over {I, sigma_kappa}."""
    h = h.reshape([4] * n)
    for k in range(n):
        pre = 3**k
        a = h.reshape(pre, 4, -1)
        out = np.empty((pre, 3, a.shape[2]), dtype=a.dtype)
        out[:, 0] = a[:, 0] + a[:, 1]
        out[:, 1] = a[:, 0] + a[:, 3]
        out[:, 2] = a[:, 0] + a[:, 2]
        h = out
    return h.reshape([3] * n)


def _graph_E_table(G: Graph, workers: int) -> np.ndarray:
    L = G.node_count
    digits, odd = _stabilizer_patterns(G.masks)
    p = _prefix_len(L, L - _HIST_QUBITS)
    n = L - p
    place = 4 ** np.arange(n - 1, -1, -1, dtype=np.int64)

    def job(prefix):
        keep = np.ones(len(digits), dtype=bool)
        for k, a in enumerate(prefix):
            d = digits[:, k]
            keep &= (d == 0) | (d == _AXIS_DIGIT[a])
        idx = digits[keep, p:] @ place
        # elements that differ only on the prefix share an index, so accumulate
        count = np.zeros(4**n, dtype=np.int32)
        np.add.at(count, idx, 1)
        n_odd = np.zeros(4**n, dtype=np.int32)
        np.add.at(n_odd, idx[odd[keep]], 1)
        c = _sum_over_axes(count, n).astype(np.float64)
        return np.where(_sum_over_axes(n_odd, n) == 0, c * c, 0.0)

    prefixes = list(product(range(3), repeat=p))
    return _stack(_run_chunks(job, prefixes, workers), L) * 4.0 ** (-L)


# --------------------------------------------------------------------------
# free orientation, general states
#
# All 6^L overlaps <o_kappa|psi> with one (axis, bit) pair per qubit; the best
# orientation pairs each string with its complement.

MAX_GENERAL_QUBITS = 10
# leading qubits beyond this many are fixed per chunk to bound memory
_DENSE_QUBITS = 8


def _general_E_table(state: StateVector, workers: int) -> np.ndarray:
    L = state.qubit_count
    tensor = state.tensor()
    bras = KETS.conj()  # [axis, bit, component]

    def job(prefix):
        t = tensor
        for a in prefix:
            t = np.tensordot(t, bras[a], axes=([0], [1]))  # appends a bit axis
        for _ in range(L - len(prefix)):
            t = np.tensordot(t, bras, axes=([0], [2]))  # appends (axis, bit)
        q = len(prefix)
        bit_axes = tuple(range(q)) + tuple(range(q + 1, t.ndim, 2))
        prod = _abs2(t) * _abs2(np.flip(t, axis=bit_axes))
        return prod.max(axis=bit_axes)

    p = _prefix_len(L, L - _DENSE_QUBITS)
    prefixes = list(product(range(3), repeat=p))
    return _stack(_run_chunks(job, prefixes, workers), L)


def E_table(state: StateVector, *, max_qubits: int = MAX_EXACT_QUBITS, workers: int | None = None) -> np.ndarray:
    """Squared coherence for every axis vector, maximized over orientations.

    Returns an array of shape (3,)*L indexed by axis index (x=0, y=1, z=2) per
    qubit, qubit 1 first. Graph states are evaluated exactly through their
    stabilizer group; other states through all 6^L product-basis overlaps.
    """
    L = state.qubit_count
    _check_limit(L, max_qubits)
    workers = default_workers() if workers is None else workers
    g = graph_from_state(state)
    if g is not None:
        return _graph_E_table(g, workers)
    if L > MAX_GENERAL_QUBITS:
        raise CapabilityError(
            f"states that are not graph states are limited to {MAX_GENERAL_QUBITS} qubits, got {L}")
    return _general_E_table(state, workers)


def _best_flips(state: StateVector, axes: Sequence[int]) -> tuple[bool, ...]:
    """First orientation (qubit 1 most significant, unflipped first) that attains the max."""
    t = state.tensor()
    for a in axes:
        t = np.tensordot(t, KETS[a].conj(), axes=([0], [1]))
    prod = (_abs2(t) * _abs2(np.flip(t))).ravel()
    first = int(np.flatnonzero(prod >= prod.max() * (1 - TIE_RTOL))[0])
    return tuple(bool(b) for b in np.unravel_index(first, [2] * len(axes)))


def _index_to_axes(flat_index: int, L: int) -> tuple[int, ...]:
    return tuple(int(d) for d in np.unravel_index(flat_index, [3] * L))


def _finish(Emax: float, L: int, kappa: DirectionVector | None) -> CorrelatorResult:
    if Emax <= 0 or kappa is None:
        return CorrelatorResult(0.0, math.inf, DirectionVector.uniform(Axis.X, L), False)
    dyadic = is_dyadic(Emax)
    if dyadic:
        Emax = 2.0 ** round(math.log2(Emax))
    return CorrelatorResult(Emax, gamma_from_E(Emax), kappa, dyadic)


def _tied(table: np.ndarray) -> np.ndarray:
    Emax = float(table.max())
    if Emax <= 0:
        return np.array([], dtype=np.int64)
    return np.flatnonzero(table >= Emax * (1 - TIE_RTOL))


def maximize(state: StateVector, *, max_qubits: int = MAX_EXACT_QUBITS,
             workers: int | None = None) -> CorrelatorResult:
    """Exact maximum of the squared coherence over axes and orientations.

    Ties resolve to the lexicographically first axis vector (x < y < z, qubit 1
    most significant) and then to its first optimal orientation, unflipped
    before flipped. E = 0 yields gamma = inf.
    """
    L = state.qubit_count
    table = E_table(state, max_qubits=max_qubits, workers=workers).ravel()
    tied = _tied(table)
    if not len(tied):
        return _finish(0.0, L, None)
    axes = _index_to_axes(int(tied[0]), L)
    kappa = DirectionVector(tuple(AXES[a] for a in axes), _best_flips(state, axes))
    return _finish(float(table.max()), L, kappa)


def optimal_directions(state: StateVector, *, max_qubits: int = MAX_EXACT_QUBITS) -> list[DirectionVector]:
    """Every optimal axis vector, in tie-break order, each with its first optimal orientation."""
    table = E_table(state, max_qubits=max_qubits).ravel()
    L = state.qubit_count
    out = []
    for i in _tied(table):
        axes = _index_to_axes(int(i), L)
        out.append(DirectionVector(tuple(AXES[a] for a in axes), _best_flips(state, axes)))
    return out


def iter_directions(L: int, *, oriented: bool = False) -> Iterator[DirectionVector]:
    """All 3^L axis vectors in tie-break order, or all 6^L oriented ones."""
    for combo in product(AXES, repeat=L):
        if not oriented:
            yield DirectionVector(combo)
            continue
        for flips in product((False, True), repeat=L):
            yield DirectionVector(combo, flips)


def maximize_mixed(rho: DensityMatrix) -> CorrelatorResult:
    """Exhaustive maximization over axes and orientations for a density matrix (L <= 8)."""
    L = rho.qubit_count
    # M[a, o, i, j] = <(1-o)_a|i> <j|o_a>
    M = np.einsum("aoi,aoj->aoij", KETS[:, ::-1, :].conj(), KETS)
    # order="F" puts row qubits on axes 0..L-1 and column qubits on L..2L-1
    t = rho.entries.reshape([2] * (2 * L), order="F")
    for k in range(L):
        # the next qubit's row axis is axis 0 and its column axis is axis L-k
        t = np.tensordot(t, M, axes=([0, L - k], [2, 3]))
    full = _abs2(t)  # shape (3, 2) * L
    bit_axes = tuple(range(1, 2 * L, 2))
    table = full.max(axis=bit_axes).ravel()
    tied = _tied(table)
    if not len(tied):
        return _finish(0.0, L, None)
    axes = _index_to_axes(int(tied[0]), L)
    sub = full[tuple(a for ax in axes for a in (ax, slice(None)))].ravel()
    first = int(np.flatnonzero(sub >= sub.max() * (1 - TIE_RTOL))[0])
    flips = tuple(bool(b) for b in np.unravel_index(first, [2] * L))
    return _finish(float(table.max()), L, DirectionVector(tuple(AXES[a] for a in axes), flips))
