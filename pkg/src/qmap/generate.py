"""Benchmark circuit generators."""

import math
import random

from .circuit import Circuit, Gate, GateKind


def gen_qft(n: int, reversal_swaps: bool = False) -> Circuit:
    """Quantum Fourier Transform over `n` qubits.

    For each qubit i: one Hadamard, then controlled-phase(pi / 2**(j-i))
    between qubits j and i for every j > i. The final bit-reversal SWAP
    stage is omitted by default: it is pure relabeling and would pollute
    the communication profile; pass reversal_swaps=True to append it.

    Gate count: n + n*(n-1)/2 (+ n//2 swaps when reversal_swaps).
    """
    if n < 1:
        raise ValueError("qft needs n >= 1")
    gates: list[Gate] = []
    for i in range(n):
        gates.append(Gate(GateKind.HADAMARD, (i,)))
        for j in range(i + 1, n):
            gates.append(Gate(GateKind.CPHASE, (j, i), angle=math.pi / 2 ** (j - i)))
    if reversal_swaps:
        for i in range(n // 2):
            gates.append(Gate(GateKind.SWAP, (i, n - 1 - i)))
    return Circuit(n, tuple(gates), name=f"qft{n}")


def gen_random(n: int, g: int, p2: float, seed: int) -> Circuit:
    """Random circuit: exactly `g` gates, round(p2*g) of them two-qubit.

    Two-qubit positions and operand pairs are drawn uniformly; the output
    is a pure function of the arguments (same seed, same circuit, on any
    platform).
    """
    if not 0.0 <= p2 <= 1.0:
        raise ValueError(f"two-qubit fraction must be in [0,1], got {p2}")
    if n < 1:
        raise ValueError("need n >= 1")
    if p2 > 0 and n < 2:
        raise ValueError("two-qubit gates need n >= 2")
    if g < 0:
        raise ValueError("gate count must be >= 0")
    rng = random.Random(seed)
    n2 = round(p2 * g)
    two_at = set(rng.sample(range(g), n2))
    gates: list[Gate] = []
    for i in range(g):
        if i in two_at:
            u, v = rng.sample(range(n), 2)
            if rng.random() < 0.5:
                gates.append(Gate(GateKind.CNOT, (u, v)))
            else:
                gates.append(Gate(GateKind.CPHASE, (u, v), angle=rng.uniform(0.0, 2 * math.pi)))
        else:
            q = rng.randrange(n)
            kind = GateKind.HADAMARD if rng.random() < 0.5 else GateKind.SINGLE
            gates.append(Gate(kind, (q,)))
    return Circuit(n, tuple(gates), name=f"random_n{n}_g{g}_p{p2}_s{seed}")
