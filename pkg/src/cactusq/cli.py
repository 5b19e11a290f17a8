"""Command-line front end for the toolkit.

Subcommands: `path` (solve the covering path), `hash` (synthesize the
l-fold hashing operator), `qft` (synthesize the QFT circuit), `verify`
(simulate and compare against the unconstrained reference), `cost`
(print all formula checks without emitting circuits), and `gen` (write a
seeded random cactus).  Machine-readable JSON goes to stdout, diagnostics
to stderr.  Exit codes: 0 success, 1 validation error, 2 internal
assertion failure.

`--graph` accepts a JSON file ({"n": int, "edges": [[u, v], ...]}) or,
when no such file exists, a bundled family name: fig3, lineN, cycleN,
starN, kN (complete), chain4xT (chain of T 4-cycles), with an optional
.json suffix.
"""

from __future__ import annotations

import functools
import json
import os
import re
import sys

import click

from . import families
from .circuit_ir import (
    Circuit,
    CostReport,
    DeviceViolation,
    cnot_cost,
    dump_circuit,
    to_qasm,
)
from .covering_path import TooLarge, solve_cactus
from .graph_core import (
    Graph,
    GraphError,
    dump_graph,
    graph_to_json_dict,
    load_graph,
    random_cactus,
)
from .hash_synth import (
    HashParams,
    PathNotCovering,
    SearchExhausted,
    find_good_set,
    hash_reference_circuit,
    synthesize_hash,
    theorem1_cost,
)
from .qft_synth import DisconnectedRemainder, construct_s, synthesize_qft
from .verify_sim import (
    MAX_QUBITS,
    TooManyQubits,
    equiv_up_to_permutation,
    qft_reference_unitary,
    unitary_of,
)

_VALIDATION_ERRORS = (
    GraphError,
    DeviceViolation,
    TooLarge,
    TooManyQubits,
    PathNotCovering,
    SearchExhausted,
    DisconnectedRemainder,
    ValueError,
    OSError,
)

_FAMILY_PATTERNS = [
    (re.compile(r"^fig3$"), lambda m: families.fig3_cactus()),
    (re.compile(r"^line(\d+)$"), lambda m: families.line(int(m.group(1)))),
    (re.compile(r"^cycle(\d+)$"), lambda m: families.cycle(int(m.group(1)))),
    (re.compile(r"^star(\d+)$"), lambda m: families.star(int(m.group(1)))),
    (re.compile(r"^k(\d+)$"), lambda m: families.complete(int(m.group(1)))),
    (re.compile(r"^chain4x(\d+)$"), lambda m: families.chain_of_squares(int(m.group(1)))),
]


def _resolve_graph(spec: str) -> Graph:
    if os.path.exists(spec):
        return load_graph(spec)
    name = os.path.basename(spec)
    if name.endswith(".json"):
        name = name[: -len(".json")]
    for pattern, build in _FAMILY_PATTERNS:
        m = pattern.match(name)
        if m:
            return build(m)
    raise ValueError(
        f"no file {spec!r} and no bundled family matches {name!r} "
        "(try fig3, lineN, cycleN, starN, kN, or chain4xT)"
    )


def _print_json(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_circuit(circuit: Circuit, fmt: str, out: str | None) -> None:
    if fmt == "qasm":
        _write_text(to_qasm(circuit), out)
    else:
        _write_text(dump_circuit(circuit), out)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            fn(*args, **kwargs)
        except AssertionError as exc:
            click.echo(f"internal error: {exc}", err=True)
            sys.exit(2)
        except _VALIDATION_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
def cli() -> None:
    """Covering-path circuit synthesis for cactus-connected devices."""


@cli.command(name="path")
@click.option("--graph", "graph_spec", required=True, help="graph file or family name")
@click.option("--out", default=None, help="write JSON here instead of stdout")
@_guarded
def path_cmd(graph_spec: str, out: str | None) -> None:
    """Solve the shortest 1-covering path on a cactus."""
    g = _resolve_graph(graph_spec)
    walk = solve_cactus(g)
    _print_json(
        {
            "n": g.n,
            "path": list(walk.vertices),
            "length": walk.length,
            "element_count": walk.k,
            "distinct_count": walk.k_distinct,
            "fringe": sorted(walk.fringe),
        },
        out,
    )


@cli.command(name="gen")
@click.option("--n", "n", required=True, type=int, help="vertex count")
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--out", default=None, help="write JSON here instead of stdout")
@_guarded
def gen_cmd(n: int, seed: int, out: str | None) -> None:
    """Generate a seeded random cactus as graph JSON."""
    if n < 1:
        raise ValueError("--n must be at least 1")
    g = random_cactus(n, seed)
    _print_json(graph_to_json_dict(g), out)


def _hash_report(g: Graph, result, params: HashParams, seed: int) -> dict:
    n = g.n
    l = result.l
    rep: CostReport = result.cost
    low = 2 * n * l - 4 * l + 2
    high = 6 * n * l - 7 * l + 2
    return {
        "n": n,
        "l": l,
        "p": params.p,
        "epsilon": params.epsilon,
        "seed": seed,
        "coefficients": list(params.coefficients),
        "t": params.t,
        "path": list(result.path.vertices),
        "element_count": result.path.k,
        "distinct_count": result.path.k_distinct,
        "cnot_count": rep.cnot_count,
        "formula_value": rep.formula_value,
        "formula_exact": rep.exact,
        "corollary1": {"low": low, "high": high, "ok": low <= rep.formula_value <= high},
        "target_start": result.target_start,
        "final_permutation": list(result.circuit.final_permutation),
    }


@cli.command(name="hash")
@click.option("--graph", "graph_spec", required=True, help="graph file or family name")
@click.option("--l", "l", default=1, type=int, show_default=True, help="fold count")
@click.option("--p", default=5, type=int, show_default=True, help="modulus")
@click.option("--epsilon", default=0.25, type=float, show_default=True)
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--emit", type=click.Choice(["qasm", "json"]), default=None)
@click.option("--report", "report_flag", is_flag=True, help="print the cost report")
@click.option("--out", default=None, help="write the emitted circuit here")
@_guarded
def hash_cmd(graph_spec, l, p, epsilon, seed, emit, report_flag, out) -> None:
    """Synthesize the merged l-fold hashing operator."""
    g = _resolve_graph(graph_spec)
    if l < 1:
        raise ValueError("--l must be at least 1")
    params = find_good_set(p, epsilon, seed=seed, size=g.n - 1)
    result = synthesize_hash(g, l, params)
    if emit is not None and report_flag and out is None:
        raise ValueError("use --out for the circuit when both --emit and --report are given")
    if emit is not None:
        _emit_circuit(result.circuit, emit, out)
    if report_flag or emit is None:
        _print_json(_hash_report(g, result, params, seed))


def _qft_report(rep: CostReport) -> dict:
    p = rep.parameters
    cn = rep.cnot_count
    report = {
        "n": p["n"],
        "K": p["K"],
        "k1": p["k1"],
        "cnot_count": cn,
        "revisit_excess": p.get("revisit_excess", 0),
        "permutation_s": list(p["S"]),
        "theorem3": {"bound": rep.formula_value, "ok": cn <= rep.formula_value},
    }
    if "theorem2_bound" in p:
        report["theorem2"] = {"bound": p["theorem2_bound"], "ok": cn <= p["theorem2_bound"]}
    if "corollary2_bound" in p:
        report["corollary2"] = {"bound": p["corollary2_bound"], "ok": cn <= p["corollary2_bound"]}
    if "corollary3_high" in p:
        report["corollary3"] = {
            "low": p["corollary3_low"],
            "high": p["corollary3_high"],
            "ok": cn <= p["corollary3_high"],
        }
    return report


@cli.command(name="qft")
@click.option("--graph", "graph_spec", required=True, help="graph file or family name")
@click.option("--emit", type=click.Choice(["qasm", "json"]), default=None)
@click.option("--report", "report_flag", is_flag=True, help="print the cost report")
@click.option("--out", default=None, help="write the emitted circuit here")
@_guarded
def qft_cmd(graph_spec, emit, report_flag, out) -> None:
    """Synthesize the QFT circuit by cascades of covering paths."""
    g = _resolve_graph(graph_spec)
    circuit, rep = synthesize_qft(g)
    if emit is not None and report_flag and out is None:
        raise ValueError("use --out for the circuit when both --emit and --report are given")
    if emit is not None:
        _emit_circuit(circuit, emit, out)
    if report_flag or emit is None:
        _print_json(_qft_report(rep))


def _default_hash_params(n: int, p: int, epsilon: float) -> HashParams:
    ks = tuple((j - 1) % (p - 1) + 1 for j in range(1, n))
    return HashParams.from_coefficients(p, epsilon, ks)


@cli.command(name="verify")
@click.option("--graph", "graph_spec", required=True, help="graph file or family name")
@click.option("--what", type=click.Choice(["hash", "qft"]), required=True)
@click.option("--l", "l", default=1, type=int, show_default=True, help="fold count (hash)")
@click.option("--p", default=17, type=int, show_default=True, help="modulus for hash angles")
@click.option("--epsilon", default=0.25, type=float, show_default=True)
@_guarded
def verify_cmd(graph_spec, what, l, p, epsilon) -> None:
    """Simulate the synthesized circuit against the unconstrained reference."""
    g = _resolve_graph(graph_spec)
    if g.n > MAX_QUBITS:
        raise TooManyQubits(f"verification simulates densely; {g.n} > {MAX_QUBITS} qubits")
    if what == "hash":
        if l < 1:
            raise ValueError("--l must be at least 1")
        params = _default_hash_params(g.n, p, epsilon)
        result = synthesize_hash(g, l, params)
        circuit = result.circuit
        reference = unitary_of(
            hash_reference_circuit(g, l, params.angles, result.target_start)
        )
    else:
        circuit, rep = synthesize_qft(g)
        reference = qft_reference_unitary(rep.parameters["S"])
    perm = circuit.final_permutation
    ok, deviation = equiv_up_to_permutation(unitary_of(circuit), reference, perm=perm)
    _print_json(
        {
            "what": what,
            "n": g.n,
            "l": l if what == "hash" else None,
            "deviation": deviation,
            "permutation": list(perm),
            "ok": bool(ok),
        }
    )


@cli.command(name="cost")
@click.option("--graph", "graph_spec", required=True, help="graph file or family name")
@click.option("--l", "l", default=1, type=int, show_default=True, help="fold count (hash)")
@click.option("--p", default=17, type=int, show_default=True)
@click.option("--epsilon", default=0.25, type=float, show_default=True)
@_guarded
def cost_cmd(graph_spec, l, p, epsilon) -> None:
    """Print the formula checks for both syntheses without emitting circuits."""
    g = _resolve_graph(graph_spec)
    n = g.n
    out: dict = {"n": n}
    if n >= 2:
        walk = solve_cactus(g)
        out["path"] = {
            "path": list(walk.vertices),
            "length": walk.length,
            "element_count": walk.k,
            "distinct_count": walk.k_distinct,
            "lemma1_bound": 2 * n - 3,
            "lemma1_ok": walk.length <= 2 * n - 3,
        }
        params = _default_hash_params(n, p, epsilon)
        result = synthesize_hash(g, l, params)
        rep = result.cost
        low = 2 * n * l - 4 * l + 2
        high = 6 * n * l - 7 * l + 2
        out["hash"] = {
            "l": l,
            "cnot_count": rep.cnot_count,
            "theorem1_value": theorem1_cost(n, walk.k, walk.k_distinct, l),
            "theorem1_exact": rep.exact,
            "corollary1": {"low": low, "high": high, "ok": low <= rep.cnot_count <= high},
        }
    else:
        out["path"] = None
        out["hash"] = None
    _, qft_rep = synthesize_qft(g)
    out["qft"] = _qft_report(qft_rep)
    _print_json(out)


def main(argv=None):
    try:
        cli(args=argv, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    return 0


if __name__ == "__main__":
    main()
