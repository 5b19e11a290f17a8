"""Dense simulation and equivalence checking for small circuits.

Contents: gate matrices (matching the conventions in `circuit_ir`),
`statevector` and `unitary_of` (n <= 12), `equiv_up_to_permutation` with
global-phase removal, the QFT reference matrices, and the MOD_p automaton
acceptance probability with its closed form.

Convention: qubit 0 is the least-significant bit of basis-state indices,
so basis index sum(b_q << q) has qubit q's bit at weight 2^q.
"""

from __future__ import annotations

import math

import numpy as np

from .circuit_ir import Circuit, Gate
from .graph_core import Graph

MAX_QUBITS = 12


class TooManyQubits(Exception):
    """Dense simulation is capped at MAX_QUBITS qubits."""


_SQ2 = 1.0 / math.sqrt(2.0)


def gate_matrix(g: Gate) -> np.ndarray:
    """Unitary of a single gate; two-qubit matrices index (control, target)
    pairs in the order 00, 01, 10, 11."""
    k = g.kind
    if k == "H":
        return np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
    if k == "X":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if k == "Ry":
        c, s = math.cos(g.theta / 2), math.sin(g.theta / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if k == "Rz":
        return np.diag([np.exp(0.5j * g.theta), np.exp(-0.5j * g.theta)])
    if k == "Rk":
        return np.diag([1.0, np.exp(1j * math.pi / 2 ** (g.d - 1))])
    if k == "CNOT":
        m = np.eye(4, dtype=complex)
        m[[2, 3]] = m[[3, 2]]
        return m
    if k == "SWAP":
        m = np.eye(4, dtype=complex)
        m[[1, 2]] = m[[2, 1]]
        return m
    if k in ("CRy", "CRz"):
        m = np.eye(4, dtype=complex)
        m[2:, 2:] = gate_matrix(Gate(k[1:], (0,), theta=g.theta))
        return m
    if k == "CRd":
        return np.diag([1.0, 1.0, 1.0, np.exp(1j * math.pi / 2 ** (g.d - 1))])
    raise AssertionError(f"unhandled gate kind {k}")


def _apply(tensor: np.ndarray, u: np.ndarray, qubits, n: int) -> np.ndarray:
    """Apply a 1- or 2-qubit unitary to the given qubit axes of a state
    tensor shaped (2,)*n (+ optional trailing axes)."""
    k = len(qubits)
    axes = [n - 1 - q for q in qubits]
    ut = u.reshape((2,) * (2 * k))
    tensor = np.tensordot(ut, tensor, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(tensor, list(range(k)), axes)


def statevector(c: Circuit, initial: int = 0) -> np.ndarray:
    """State after running `c` on basis state |initial> (default |0...0>)."""
    n = c.num_qubits
    if n > MAX_QUBITS:
        raise TooManyQubits(f"n={n} exceeds the dense-simulation cap {MAX_QUBITS}")
    psi = np.zeros(2 ** n, dtype=complex)
    psi[initial] = 1.0
    psi = psi.reshape((2,) * n)
    for g in c.gates:
        psi = _apply(psi, gate_matrix(g), g.qubits, n)
    return psi.reshape(-1)


def unitary_of(c: Circuit) -> np.ndarray:
    """Full 2^n x 2^n unitary of the circuit (composite gates included)."""
    n = c.num_qubits
    if n > MAX_QUBITS:
        raise TooManyQubits(f"n={n} exceeds the dense-simulation cap {MAX_QUBITS}")
    dim = 2 ** n
    mat = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        mat = _apply(mat, gate_matrix(g), g.qubits, n)
    return mat.reshape(dim, dim)


def is_unitary(u: np.ndarray, tol: float = 1e-9) -> bool:
    dim = u.shape[0]
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(dim))) <= tol)


def permutation_vector(perm, n: int) -> np.ndarray:
    """Index map y[x] for relocating qubit q's bit to wire perm[q]."""
    out = np.zeros(2 ** n, dtype=np.int64)
    for x in range(2 ** n):
        y = 0
        for q in range(n):
            if (x >> q) & 1:
                y |= 1 << perm[q]
        out[x] = y
    return out


def equiv_up_to_permutation(u: np.ndarray, v: np.ndarray, perm=None,
                            tol: float = 1e-9) -> tuple[bool, float]:
    """Is u = e^{i phi} P(perm) v?  Returns (verdict, max deviation).

    `perm[q]` is the wire where logical qubit q of v ends up; the global
    phase is estimated from u's largest-magnitude entry.
    """
    if u.shape != v.shape:
        raise ValueError("dimension mismatch")
    n = int(round(math.log2(u.shape[0])))
    if perm is None:
        pv = v
    else:
        ymap = permutation_vector(perm, n)
        pv = np.empty_like(v)
        pv[ymap, :] = v
    idx = np.unravel_index(np.argmax(np.abs(u)), u.shape)
    denom = pv[idx]
    if abs(denom) < 1e-12:
        return False, float(np.max(np.abs(u - pv)))
    phase = u[idx] / denom
    phase /= abs(phase)
    deviation = float(np.max(np.abs(u - phase * pv)))
    return deviation <= tol, deviation


def qft_matrix(n: int) -> np.ndarray:
    """Standard QFT: entry (y, x) = e^{2 pi i x y / 2^n} / sqrt(2^n)."""
    dim = 2 ** n
    idx = np.arange(dim)
    return np.exp(2j * np.pi * np.outer(idx, idx) / dim) / math.sqrt(dim)


def qft_reference_unitary(labels) -> np.ndarray:
    """QFT as realized by label-ordered cascades without final reordering.

    `labels[v]` in 1..n is the cascade number of qubit v.  The entry at
    (y, x) is e^{2 pi i X Y / 2^n}/sqrt(2^n) where X reads qubit v's bit at
    weight 2^(n - labels[v]) and Y reads it at weight 2^(labels[v] - 1)
    (the usual cascade bit reversal).
    """
    n = len(labels)
    dim = 2 ** n
    xw = permutation_vector([n - labels[v] for v in range(n)], n)
    yw = permutation_vector([labels[v] - 1 for v in range(n)], n)
    return np.exp(2j * np.pi * np.outer(yw, xw) / dim) / math.sqrt(dim)


# ---------------------------------------------------------------------------
# MOD_p automaton measurements.
# ---------------------------------------------------------------------------


def modp_closed_form(coefficients, l: int, p: int) -> float:
    """All-zero acceptance probability of the automaton circuit in closed
    form: with w controls of coefficients kappa_j, the amplitude is
    (1/2^w) sum_c cos(2 pi l <c, kappa> / p) over binary vectors c, which
    factors as prod_j cos(pi l kappa_j / p) * cos(pi l sum(kappa) / p).
    """
    amp = math.cos(math.pi * l * sum(coefficients) / p)
    for kj in coefficients:
        amp *= math.cos(math.pi * l * kj / p)
    return amp * amp


def modp_accept_probability(g: Graph, l: int, params) -> float:
    """Simulated probability of the all-zero outcome after the automaton."""
    from .hash_synth import build_modp_automaton

    c = build_modp_automaton(g, l, params)
    psi = statevector(c)
    return float(abs(psi[0]) ** 2)


def check_good_set(coefficients, p: int, epsilon: float) -> tuple[bool, int]:
    """Exhaustively check max_g (mean_j cos(2 pi k_j g / p))^2 < epsilon
    over g = 1..p-1; returns (verdict, worst g)."""
    if not coefficients:
        raise ValueError("empty coefficient set")
    if p < 2:
        raise ValueError("modulus must be at least 2")
    t = len(coefficients)
    worst_g, worst_val = 1, -1.0
    for g in range(1, p):
        mean = sum(math.cos(2 * math.pi * kj * g / p) for kj in coefficients) / t
        val = mean * mean
        if val > worst_val:
            worst_g, worst_val = g, val
    return worst_val < epsilon, worst_g
