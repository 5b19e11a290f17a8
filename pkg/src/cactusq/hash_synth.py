"""Shallow quantum-hashing synthesis along a covering path.

One application walks the covering path with the rotation target, firing a
controlled Ry from every other qubit exactly once: off-path neighbors fire
where the walk first passes them, path vertices fire fused with the SWAP
that moves the target onward.  Repeated applications alternate walk
direction so consecutive applications meet on a shared control, and that
boundary pair merges into one double-angle rotation.  Also contains the
Theorem-style cost formula, the good-coefficient-set search, and the full
MOD_p automaton circuit (H sandwich around the repeated operator).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .circuit_ir import Circuit, CostReport, Gate, cnot_cost
from .covering_path import CoveringPath, solve_cactus
from .graph_core import Graph


class PathNotCovering(Exception):
    """Some control qubit is never adjacent to the walking target."""


class SearchExhausted(Exception):
    """No good coefficient set found within the trial budget."""


@dataclass(frozen=True)
class HashParams:
    """Modulus, error bound, and the drawn coefficient set with its angles.

    `t` is the fingerprint count ceil((2/epsilon) ln 2p); the drawn set may
    deliberately have a different size (e.g. one coefficient per control
    qubit).  Circuit angles are 4*pi*k/p: the controlled Ry applies half its
    angle to the amplitude, so after l applications the all-zero amplitude
    picks up cos(2*pi*k*l/p) per control and closes exactly at l = 0 mod p.
    """

    p: int
    epsilon: float
    t: int
    coefficients: tuple[int, ...]
    angles: tuple[float, ...]

    @staticmethod
    def from_coefficients(p: int, epsilon: float, coefficients) -> "HashParams":
        ks = tuple(int(k) for k in coefficients)
        t = math.ceil((2.0 / epsilon) * math.log(2 * p))
        return HashParams(
            p=p,
            epsilon=epsilon,
            t=t,
            coefficients=ks,
            angles=tuple(4.0 * math.pi * k / p for k in ks),
        )


@dataclass(frozen=True)
class HashSynthesisResult:
    circuit: Circuit
    path: CoveringPath
    cost: CostReport
    target_start: int
    l: int


def theorem1_cost(n: int, k: int, k_distinct: int, l: int) -> int:
    """CNOT count of the merged l-fold circuit: (3k + 2(n-k'))l - 5l + 2,
    with k the covering-path element count and k' its distinct count."""
    return (3 * k + 2 * (n - k_distinct)) * l - 5 * l + 2


def _angle_of(angles, g: Graph, target: int):
    """Normalize the angle spec to a per-vertex lookup (controls only)."""
    if isinstance(angles, dict):
        return lambda v: angles[v]
    seq = list(angles)
    if len(seq) == g.n:
        return lambda v: seq[v]
    if len(seq) == g.n - 1:
        controls = [v for v in range(g.n) if v != target]
        table = dict(zip(controls, seq))
        return lambda v: table[v]
    raise ValueError(
        f"need {g.n} per-vertex or {g.n - 1} per-control angles, got {len(seq)}"
    )


def construct_for_path(g: Graph, path, angles, direction: str = "forward",
                       lead_control: int | None = None) -> Circuit:
    """One application of the hashing operator along a covering path.

    Emits, walking the path: a CRy from each not-yet-used neighbor that is
    not a path vertex, then a CRy+SWAP moving the target one step (bare
    SWAP on revisits); finally CRys from the leftover neighbors of the
    path end.  `reverse` walks the path backward with descending neighbor
    order.  The rotations fired at one vertex commute, so `lead_control`
    (when present in the opening batch) is moved to the front; repeated
    applications use it to start on the control the previous application
    ended with, making the boundary pair mergeable.
    """
    if direction not in ("forward", "reverse"):
        raise ValueError("direction must be 'forward' or 'reverse'")
    verts = list(path.vertices if isinstance(path, CoveringPath) else path)
    if direction == "reverse":
        verts.reverse()
    on_path = set(verts)
    start = verts[0]
    ang = _angle_of(angles, g, start)
    descending = direction == "reverse"
    c = Circuit(g.n, device=g)
    used: set[int] = set()
    opening = [True]

    def fire_neighbors(at: int) -> None:
        nbrs = [u for u in g.adjacency[at] if u not in on_path and u not in used]
        nbrs.sort(reverse=descending)
        if opening[0]:
            opening[0] = False
            if lead_control in nbrs:
                nbrs.remove(lead_control)
                nbrs.insert(0, lead_control)
        for u in nbrs:
            c.cry(u, at, ang(u))
            used.add(u)

    for j in range(len(verts) - 1):
        cur, nxt = verts[j], verts[j + 1]
        fire_neighbors(cur)
        if nxt not in used:
            c.cry(nxt, cur, ang(nxt))
            used.add(nxt)
        c.swap(cur, nxt)
    fire_neighbors(verts[-1])
    missed = set(range(g.n)) - used - {start}
    if missed:
        raise PathNotCovering(f"vertices never reached as controls: {sorted(missed)}")
    return c


def _merge_boundary(gates: list[Gate], incoming: list[Gate]) -> list[Gate]:
    """Concatenate applications, merging the shared boundary CRy pair."""
    if (
        gates
        and incoming
        and gates[-1].kind == "CRy"
        and incoming[0].kind == "CRy"
        and gates[-1].qubits == incoming[0].qubits
    ):
        merged = Gate(
            "CRy", gates[-1].qubits, theta=gates[-1].theta + incoming[0].theta
        )
        return gates[:-1] + [merged] + incoming[1:]
    return gates + incoming


def _fold_applications(g: Graph, path: CoveringPath, per_logical, l: int) -> list[Gate]:
    """Alternate forward/reverse applications with boundary merges.

    Angles attach to logical qubits, and the SWAPs shift logical qubits
    along the path, so each application's per-vertex angle table is built
    from the occupancy at that application's start (any control fires
    before the walk first disturbs its vertex, so that table is exact).
    """
    occ = list(range(g.n))  # occ[u] = logical qubit currently at vertex u
    gates: list[Gate] = []
    for i in range(l):
        direction = "forward" if i % 2 == 0 else "reverse"
        verts = path.vertices if direction == "forward" else path.vertices[::-1]
        angle_map = {u: per_logical(occ[u]) for u in range(g.n) if u != verts[0]}
        lead = gates[-1].qubits[0] if gates and gates[-1].kind == "CRy" else None
        app = construct_for_path(g, path, angle_map, direction, lead_control=lead)
        gates = _merge_boundary(gates, app.gates)
        for cur, nxt in zip(verts, verts[1:]):
            occ[cur], occ[nxt] = occ[nxt], occ[cur]
    return gates


def synthesize_hash(g: Graph, l: int, params: HashParams) -> HashSynthesisResult:
    """l-fold hashing operator on the device graph, with boundary merges."""
    if l < 1:
        raise ValueError("application count must be at least 1")
    if g.n < 2:
        raise ValueError("hashing needs at least 2 qubits")
    path = solve_cactus(g)
    per_logical = _angle_of(params.angles, g, path.vertices[0])
    circuit = Circuit(g.n, device=g)
    circuit.extend(_fold_applications(g, path, per_logical, l))
    cost = CostReport(
        cnot_count=cnot_cost(circuit),
        formula_value=theorem1_cost(g.n, path.k, path.k_distinct, l),
        formula_name="merged l-fold cost (3k + 2(n-k'))l - 5l + 2",
        parameters={"n": g.n, "k": path.k, "k_distinct": path.k_distinct, "l": l},
    )
    return HashSynthesisResult(
        circuit=circuit,
        path=path,
        cost=cost,
        target_start=path.vertices[0],
        l=l,
    )


def hash_reference_circuit(g: Graph, l: int, angles, target_start: int) -> Circuit:
    """Device-free comparator for the l-fold operator: one CRy per control,
    aimed straight at the target qubit with the l-fold angle."""
    lookup = _angle_of(angles, g, target_start)
    c = Circuit(g.n)
    for v in range(g.n):
        if v != target_start:
            c.cry(v, target_start, l * lookup(v))
    return c


def _direct_ok(ks, p: int, epsilon: float) -> bool:
    t = len(ks)
    for g in range(1, p):
        mean = sum(math.cos(2 * math.pi * k * g / p) for k in ks) / t
        if mean * mean >= epsilon:
            return False
    return True


def _induced_ok(ks, p: int, epsilon: float) -> bool:
    """Bound the automaton's all-zero amplitude at every nonzero residue:
    the w independent controls realize all 2^w subset sums, whose cosine
    average factors as prod_j cos(pi g k_j / p) * cos(pi g sum(k) / p)."""
    total = sum(ks)
    for g in range(1, p):
        amp = math.cos(math.pi * g * total / p)
        for k in ks:
            amp *= math.cos(math.pi * g * k / p)
        if amp * amp >= epsilon:
            return False
    return True


def find_good_set(p: int, epsilon: float, seed: int = 0,
                  max_trials: int = 20000, size: int | None = None) -> HashParams:
    """Random search for a coefficient set keeping every nonzero residue's
    acceptance below epsilon (both per the direct mean-cosine condition and
    for the subset-sum automaton).  Deterministic under `seed`.
    """
    if p < 2:
        raise ValueError("modulus must be at least 2")
    if not 0.0 < epsilon < 0.5:
        raise ValueError("epsilon must lie in (0, 0.5)")
    t = math.ceil((2.0 / epsilon) * math.log(2 * p))
    draw = size if size is not None else t
    rng = random.Random(seed)
    for _ in range(max_trials):
        ks = tuple(rng.randrange(1, p) for _ in range(draw))
        if _direct_ok(ks, p, epsilon) and _induced_ok(ks, p, epsilon):
            return HashParams(
                p=p,
                epsilon=epsilon,
                t=t,
                coefficients=ks,
                angles=tuple(4.0 * math.pi * k / p for k in ks),
            )
    raise SearchExhausted(
        f"no good set of size {draw} for p={p}, epsilon={epsilon} "
        f"in {max_trials} trials"
    )


def build_modp_automaton(g: Graph, l: int, params: HashParams) -> Circuit:
    """MOD_p acceptance circuit: H on all control qubits, l applications of
    the hashing operator, and closing H gates at each control's final
    physical position.  Accepts on the all-zero outcome."""
    if l < 0:
        raise ValueError("application count must be nonnegative")
    if g.n < 2:
        raise ValueError("the automaton needs at least 2 qubits")
    if len(params.coefficients) != g.n - 1:
        raise ValueError(
            f"need one coefficient per control ({g.n - 1}), "
            f"got {len(params.coefficients)}"
        )
    path = solve_cactus(g)
    target = path.vertices[0]
    controls = [v for v in range(g.n) if v != target]
    circuit = Circuit(g.n, device=g)
    for v in controls:
        circuit.h(v)
    if l > 0:
        per_logical = _angle_of(params.angles, g, target)
        circuit.extend(_fold_applications(g, path, per_logical, l))
    final = circuit.final_permutation
    for v in controls:
        circuit.h(final[v])
    return circuit
