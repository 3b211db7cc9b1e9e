"""Independent brute-force reference implementations used by the tests.

Nothing here imports graphres: states are built from explicit Kronecker
products and 2^L x 2^L gate matrices, and the correlator is evaluated by
rotating the full state into every product basis.
"""

from __future__ import annotations

from itertools import product

import numpy as np

S = 1 / np.sqrt(2)
# columns are |0_axis>, |1_axis>
BASIS = {
    "x": np.array([[S, S], [S, -S]], dtype=complex),
    "y": np.array([[S, S], [1j * S, -1j * S]], dtype=complex),
    "z": np.eye(2, dtype=complex),
}
PLUS = np.array([S, S], dtype=complex)


def kron_qubits(ops):
    """Kronecker product with qubit 1 as the least significant factor."""
    out = np.ones((1, 1)) if np.ndim(ops[0]) == 2 else np.ones(1)
    for op in ops:
        out = np.kron(op, out)
    return out


def cz(L: int, k: int, l: int) -> np.ndarray:
    d = np.ones(1 << L)
    for i in range(1 << L):
        if (i >> (k - 1)) & 1 and (i >> (l - 1)) & 1:
            d[i] = -1
    return np.diag(d)


def graph_state(L: int, edges) -> np.ndarray:
    psi = kron_qubits([PLUS] * L)
    for k, l in edges:
        psi = cz(L, k, l) @ psi
    return psi


def basis_matrix(kappa) -> np.ndarray:
    return kron_qubits([BASIS[a] for a in kappa])


def amplitudes(psi: np.ndarray, kappa) -> np.ndarray:
    """<b_kappa|psi> indexed by b with qubit 1 as bit 0."""
    return basis_matrix(kappa).conj().T @ psi


def correlator(psi: np.ndarray, L: int, *, oriented: bool = True):
    """(max E, first optimal kappa string) over all 3^L axis vectors."""
    full = (1 << L) - 1
    best, arg = -1.0, None
    for kappa in product("xyz", repeat=L):
        A = amplitudes(psi, kappa)
        if oriented:
            E = float(np.max(np.abs(A * A[full ^ np.arange(1 << L)]) ** 2))
        else:
            E = float(abs(A[full] * np.conj(A[0])) ** 2)
        if E > best * (1 + 1e-12):
            best, arg = E, "".join(kappa)
    return best, arg


def correlator_mixed(rho: np.ndarray, L: int):
    full = (1 << L) - 1
    best = 0.0
    for kappa in product("xyz", repeat=L):
        U = basis_matrix(kappa)
        R = U.conj().T @ rho @ U
        idx = np.arange(1 << L)
        best = max(best, float(np.max(np.abs(R[full ^ idx, idx]) ** 2)))
    return best


def local_clifford_for_lc(L: int, edges, v: int) -> np.ndarray:
    """exp(-i pi/4 X_v) prod_{u in N(v)} exp(i pi/4 Z_u): maps |G> to |tau_v(G)> up to phase."""
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.diag([1, -1]).astype(complex)
    I = np.eye(2, dtype=complex)
    nbrs = {l for k, l in edges if k == v} | {k for k, l in edges if l == v}
    ops = []
    for q in range(1, L + 1):
        if q == v:
            ops.append((I - 1j * X) / np.sqrt(2))
        elif q in nbrs:
            ops.append((I + 1j * Z) / np.sqrt(2))
        else:
            ops.append(I)
    return kron_qubits(ops)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float = 1e-12) -> bool:
    i = int(np.argmax(np.abs(b)))
    if abs(b[i]) < atol:
        return np.allclose(a, b, atol=atol)
    phase = a[i] / b[i]
    return abs(abs(phase) - 1) < 1e-9 and np.allclose(a, phase * b, atol=atol)


# known counts of connected graphs and of local-complementation classes
CONNECTED_GRAPHS = {2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
LC_CLASSES = {2: 1, 3: 1, 4: 2, 5: 4, 6: 11, 7: 26, 8: 101}
