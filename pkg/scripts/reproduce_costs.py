#!/usr/bin/env python3
"""Reproduce the headline cost numbers on the built-in graph families.

Prints three tables:
  1. shortest covering paths for lines, cycles, stars, square chains and
     the ten-vertex three-square example, against the 2n-3 length bound;
  2. hashing CNOT costs: per-application cost for square chains
     (8t-2 -> 22/30/38) and the three-square example (22, versus 28 for
     a visit-every-vertex path), plus l-fold totals;
  3. QFT CNOT costs per family against the 2n^2 and K+n^2-n-1 bounds,
     with the revisit surcharge shown where the latter is exceeded.

Usage: python3 scripts/reproduce_costs.py [--max-l 4]
"""

import argparse

from cactusq.circuit_ir import cnot_cost
from cactusq.covering_path import brute_force_visit_all, solve_cactus
from cactusq.families import chain_of_squares, complete, cycle, fig3_cactus, line, star
from cactusq.hash_synth import construct_for_path, synthesize_hash, theorem1_cost
from cactusq.hash_synth import HashParams
from cactusq.qft_synth import synthesize_qft


def path_table(families):
    print("shortest covering paths")
    print(f"{'graph':<14} {'n':>3} {'k':>3} {'k_dist':>6} {'length':>6} {'2n-3':>5}")
    for name, g in families:
        walk = solve_cactus(g)
        print(f"{name:<14} {g.n:>3} {walk.k:>3} {walk.k_distinct:>6} "
              f"{walk.length:>6} {2 * g.n - 3:>5}")
    print()


def hash_table(max_l):
    print("hashing CNOT costs")
    angles = lambda g: {v: 0.1 for v in range(g.n)}
    for t in (3, 4, 5):
        g = chain_of_squares(t)
        c = construct_for_path(g, solve_cactus(g), angles(g))
        print(f"chain4x{t}: per-application {cnot_cost(c)} (formula 8t-2 = {8 * t - 2})")
    g = fig3_cactus()
    walk = solve_cactus(g)
    c = construct_for_path(g, walk, angles(g))
    red = brute_force_visit_all(g)
    print(f"fig3: per-application {cnot_cost(c)}; visit-all path of length "
          f"{red.length} would give 3(k-2)+4 = {3 * (red.length - 2) + 4}")
    params = HashParams.from_coefficients(17, 0.25, tuple(range(1, g.n)))
    row = []
    for l in range(1, max_l + 1):
        res = synthesize_hash(g, l, params)
        expect = theorem1_cost(g.n, res.path.k, res.path.k_distinct, l)
        row.append(f"l={l}: {res.cost.cnot_count} (formula {expect})")
    print("fig3 l-fold totals: " + ", ".join(row))
    print()


def qft_table(families):
    print("QFT CNOT costs")
    print(f"{'graph':<14} {'n':>3} {'cnots':>5} {'K+n^2-n-1':>9} {'revisit':>7} "
          f"{'2n^2':>5} {'CRd':>4}")
    for name, g in families:
        circuit, report = synthesize_qft(g)
        p = report.parameters
        print(f"{name:<14} {g.n:>3} {report.cnot_count:>5} {report.formula_value:>9} "
              f"{p['revisit_excess']:>7} {p['theorem2_bound']:>5} "
              f"{circuit.count('CRd'):>4}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-l", type=int, default=4,
                        help="largest fold count for the hashing table")
    args = parser.parse_args()

    cacti = [
        ("line8", line(8)),
        ("cycle8", cycle(8)),
        ("star8", star(8)),
        ("chain4x3", chain_of_squares(3)),
        ("chain4x4", chain_of_squares(4)),
        ("chain4x5", chain_of_squares(5)),
        ("fig3", fig3_cactus()),
    ]
    path_table(cacti)
    hash_table(args.max_l)
    qft_table(cacti + [("k5", complete(5))])


if __name__ == "__main__":
    main()
