"""Gate-level IR over physical qubits.

Contents: the `Gate` and `Circuit` value types (with device-adjacency
checking and SWAP-induced layout tracking), `decompose` into the basic set
{H, X, Ry, Rz, CNOT} with the controlled-rotation/SWAP fusion applied at
synthesis seams, `cancel_adjacent_cnots`, `cnot_cost`, a QASM-flavored text
emitter, and a JSON gate-list dump/load pair.

Gate matrices follow the conventions used throughout this package:
Ry(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]],
Rz(t) = diag(e^{it/2}, e^{-it/2}),
CRd(d) = diag(1, 1, 1, e^{i*pi/2^(d-1)}) (controlled phase of order d).
Decompositions preserve unitaries up to global phase.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .graph_core import Graph

BASIC_KINDS = ("H", "X", "Ry", "Rz", "CNOT")
COMPOSITE_KINDS = ("CRy", "CRz", "CRd", "SWAP", "Rk")
KIND_ARITY = {
    "H": 1, "X": 1, "Ry": 1, "Rz": 1, "Rk": 1,
    "CNOT": 2, "CRy": 2, "CRz": 2, "CRd": 2, "SWAP": 2,
}
ANGLE_KINDS = ("Ry", "Rz", "CRy", "CRz")
ORDER_KINDS = ("CRd", "Rk")


class DeviceViolation(Exception):
    """A two-qubit gate was placed on non-adjacent physical qubits."""


@dataclass(frozen=True)
class Gate:
    """One gate application; two-qubit `qubits` are (control, target)."""

    kind: str
    qubits: tuple[int, ...]
    theta: float | None = None
    d: int | None = None

    def __post_init__(self):
        if self.kind not in KIND_ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != KIND_ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {KIND_ARITY[self.kind]} qubits")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("repeated qubit in gate")
        if self.kind in ANGLE_KINDS:
            if self.theta is None or not math.isfinite(self.theta):
                raise ValueError(f"{self.kind} needs a finite angle")
        elif self.theta is not None:
            raise ValueError(f"{self.kind} takes no angle")
        if self.kind in ORDER_KINDS:
            if self.d is None or self.d < 1:
                raise ValueError(f"{self.kind} needs phase order d >= 1")
        elif self.d is not None:
            raise ValueError(f"{self.kind} takes no phase order")

    @property
    def is_basic(self) -> bool:
        return self.kind in BASIC_KINDS


class Circuit:
    """Ordered gate list over `num_qubits` physical qubits.

    If a device graph is attached, every two-qubit gate must land on an
    edge of it.  `layout[s][q]` is the physical position of logical qubit
    q after the first s gates (layout changes only at SWAPs);
    `final_permutation` is the last entry of that trace.
    """

    def __init__(self, num_qubits: int, device: Graph | None = None,
                 initial_layout=None):
        if device is not None and device.n != num_qubits:
            raise ValueError("device size must match qubit count")
        self.num_qubits = num_qubits
        self.device = device
        self.gates: list[Gate] = []
        if initial_layout is None:
            initial_layout = tuple(range(num_qubits))
        else:
            initial_layout = tuple(initial_layout)
            if sorted(initial_layout) != list(range(num_qubits)):
                raise ValueError("initial layout must be a permutation")
        self._trace: list[tuple[int, ...]] = [initial_layout]

    def append(self, gate: Gate) -> None:
        for q in gate.qubits:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"qubit {q} out of range")
        if self.device is not None and len(gate.qubits) == 2:
            a, b = gate.qubits
            if not self.device.has_edge(a, b):
                raise DeviceViolation(f"{gate.kind} on non-adjacent ({a},{b})")
        self.gates.append(gate)
        cur = self._trace[-1]
        if gate.kind == "SWAP":
            a, b = gate.qubits
            nxt = list(cur)
            for q, pos in enumerate(cur):
                if pos == a:
                    nxt[q] = b
                elif pos == b:
                    nxt[q] = a
            cur = tuple(nxt)
        self._trace.append(cur)

    def extend(self, gates) -> None:
        for g in gates:
            self.append(g)

    # convenience constructors --------------------------------------------
    def h(self, q): self.append(Gate("H", (q,)))
    def x(self, q): self.append(Gate("X", (q,)))
    def ry(self, q, theta): self.append(Gate("Ry", (q,), theta=theta))
    def rz(self, q, theta): self.append(Gate("Rz", (q,), theta=theta))
    def rk(self, q, d): self.append(Gate("Rk", (q,), d=d))
    def cnot(self, c, t): self.append(Gate("CNOT", (c, t)))
    def cry(self, c, t, theta): self.append(Gate("CRy", (c, t), theta=theta))
    def crz(self, c, t, theta): self.append(Gate("CRz", (c, t), theta=theta))
    def crd(self, c, t, d): self.append(Gate("CRd", (c, t), d=d))
    def swap(self, a, b): self.append(Gate("SWAP", (a, b)))

    @property
    def layout(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self._trace)

    @property
    def final_permutation(self) -> tuple[int, ...]:
        return self._trace[-1]

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    def copy_empty(self) -> "Circuit":
        return Circuit(self.num_qubits, device=self.device,
                       initial_layout=self._trace[0])

    def __len__(self) -> int:
        return len(self.gates)

    def __repr__(self) -> str:
        return f"Circuit(num_qubits={self.num_qubits}, gates={len(self.gates)})"


# ---------------------------------------------------------------------------
# Decomposition into {H, X, Ry, Rz, CNOT}.
#
# CRy(t) on (c,v):        Ry_v(t/2) . CX . Ry_v(-t/2) . CX          (2 CNOTs)
# CRz(t) on (c,v):        Rz_v(t/2) . CX . Rz_v(-t/2) . CX          (2 CNOTs)
# CRd(d), a = pi/2^(d-1): Rz_v(-a/2) . CX . Rz_v(a/2) . CX . Rz_c(-a/2),
#                         equal to the controlled phase up to e^{-ia/4}.
# SWAP:                   CX(a,b) . CX(b,a) . CX(a,b)               (3 CNOTs)
# CR?+SWAP on one pair fuses to a 3-CNOT block: the trailing CX of the
# rotation annihilates the leading CX of the SWAP.
# ---------------------------------------------------------------------------


def _basic_cr(kind: str, c: int, t: int, half: float) -> list[Gate]:
    rot = "Ry" if kind == "CRy" else "Rz"
    return [
        Gate(rot, (t,), theta=half),
        Gate("CNOT", (c, t)),
        Gate(rot, (t,), theta=-half),
        Gate("CNOT", (c, t)),
    ]


def _lower(gate: Gate, fuse_swap: bool) -> list[Gate]:
    kind = gate.kind
    if kind in ("H", "X", "Ry", "Rz", "CNOT"):
        return [gate]
    if kind == "Rk":
        alpha = math.pi / 2 ** (gate.d - 1)
        return [Gate("Rz", gate.qubits, theta=-alpha)]
    if kind == "SWAP":
        a, b = gate.qubits
        return [Gate("CNOT", (a, b)), Gate("CNOT", (b, a)),
                Gate("CNOT", (a, b))]
    c, t = gate.qubits
    if kind in ("CRy", "CRz"):
        out = _basic_cr(kind, c, t, gate.theta / 2)
    else:  # CRd: with Rz = diag(e^{it/2}, e^{-it/2}) the half-angles invert
        alpha = math.pi / 2 ** (gate.d - 1)
        out = _basic_cr("CRz", c, t, -alpha / 2) + [Gate("Rz", (c,), theta=-alpha / 2)]
        if fuse_swap:
            # move the control phase before the CNOT pair it commutes with
            out = out[:3] + [out[4]] + [out[3]]
    if fuse_swap:
        # drop the trailing CX; together with the SWAP's leading CX it cancels
        assert out[-1] == Gate("CNOT", (c, t))
        out = out[:-1] + [Gate("CNOT", (t, c)), Gate("CNOT", (c, t))]
    return out


def decompose(c: Circuit) -> Circuit:
    """Rewrite onto the basic gate set, fusing CR+SWAP pairs on one edge."""
    out = Circuit(c.num_qubits, device=c.device)
    i = 0
    while i < len(c.gates):
        g = c.gates[i]
        nxt = c.gates[i + 1] if i + 1 < len(c.gates) else None
        fuse = (
            g.kind in ("CRy", "CRz", "CRd")
            and nxt is not None
            and nxt.kind == "SWAP"
            and set(nxt.qubits) == set(g.qubits)
        )
        out.extend(_lower(g, fuse))
        i += 2 if fuse else 1
    return out


def cancel_adjacent_cnots(c: Circuit) -> Circuit:
    """Remove identical CNOT pairs with nothing touching either qubit in
    between; repeats to a fixed point."""
    gates = list(c.gates)
    changed = True
    while changed:
        changed = False
        keep = [True] * len(gates)
        for i, g in enumerate(gates):
            if not keep[i] or g.kind != "CNOT":
                continue
            touched = set(g.qubits)
            for j in range(i + 1, len(gates)):
                if not keep[j]:
                    continue
                other = gates[j]
                if not touched.isdisjoint(other.qubits):
                    if other == g:
                        keep[i] = keep[j] = False
                        changed = True
                    break
        gates = [g for g, k in zip(gates, keep) if k]
    out = Circuit(c.num_qubits, device=c.device)
    out.extend(gates)
    return out


def cnot_cost(c: Circuit) -> int:
    """CNOT count of the decomposed (and peephole-cancelled) circuit."""
    return cancel_adjacent_cnots(decompose(c)).count("CNOT")


@dataclass(frozen=True)
class CostReport:
    """CNOT count next to the closed-form value it should meet."""

    cnot_count: int
    formula_value: int
    formula_name: str
    parameters: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.cnot_count == self.formula_value

    @property
    def within_bound(self) -> bool:
        return self.cnot_count <= self.formula_value


# ---------------------------------------------------------------------------
# External formats.
# ---------------------------------------------------------------------------


def to_qasm(c: Circuit) -> str:
    """QASM-flavored text; composite gates are lowered first."""
    if any(not g.is_basic for g in c.gates):
        c = decompose(c)
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{c.num_qubits}];",
    ]
    for g in c.gates:
        if g.kind == "H":
            lines.append(f"h q[{g.qubits[0]}];")
        elif g.kind == "X":
            lines.append(f"x q[{g.qubits[0]}];")
        elif g.kind == "Ry":
            lines.append(f"ry({g.theta:.17g}) q[{g.qubits[0]}];")
        elif g.kind == "Rz":
            lines.append(f"rz({g.theta:.17g}) q[{g.qubits[0]}];")
        elif g.kind == "CNOT":
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        else:  # pragma: no cover - decompose() leaves only basic kinds
            raise AssertionError(f"unlowered gate {g.kind}")
    return "\n".join(lines) + "\n"


def circuit_to_json_dict(c: Circuit) -> dict:
    gates = []
    for g in c.gates:
        entry: dict = {"kind": g.kind, "qubits": list(g.qubits)}
        if g.theta is not None:
            entry["theta"] = g.theta
        if g.d is not None:
            entry["d"] = g.d
        gates.append(entry)
    return {"num_qubits": c.num_qubits, "gates": gates}


def circuit_from_json_dict(data: dict, device: Graph | None = None) -> Circuit:
    c = Circuit(int(data["num_qubits"]), device=device)
    for entry in data["gates"]:
        c.append(
            Gate(
                entry["kind"],
                tuple(entry["qubits"]),
                theta=entry.get("theta"),
                d=entry.get("d"),
            )
        )
    return c


def dump_circuit(c: Circuit) -> str:
    return json.dumps(circuit_to_json_dict(c), sort_keys=True) + "\n"


def load_circuit(text: str, device: Graph | None = None) -> Circuit:
    return circuit_from_json_dict(json.loads(text), device=device)
