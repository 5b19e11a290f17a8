"""Shared helpers: seeded random circuits for fidelity tests."""

import math
import random

from cactusq.circuit_ir import Circuit


def random_circuit(n: int, seed: int, length: int = 20) -> Circuit:
    """Unconstrained circuit over all gate kinds with seeded parameters."""
    rng = random.Random(seed)
    c = Circuit(n)
    kinds = ["H", "X", "Ry", "Rz", "Rk"]
    if n >= 2:
        kinds += ["CNOT", "CRy", "CRz", "CRd", "SWAP"]
    for _ in range(length):
        kind = rng.choice(kinds)
        q = rng.randrange(n)
        theta = rng.uniform(-2 * math.pi, 2 * math.pi)
        if kind == "H":
            c.h(q)
        elif kind == "X":
            c.x(q)
        elif kind == "Ry":
            c.ry(q, theta)
        elif kind == "Rz":
            c.rz(q, theta)
        elif kind == "Rk":
            c.rk(q, rng.randint(1, 5))
        else:
            other = rng.choice([x for x in range(n) if x != q])
            if kind == "CNOT":
                c.cnot(q, other)
            elif kind == "CRy":
                c.cry(q, other, theta)
            elif kind == "CRz":
                c.crz(q, other, theta)
            elif kind == "CRd":
                c.crd(q, other, rng.randint(2, 5))
            else:
                c.swap(q, other)
    return c
