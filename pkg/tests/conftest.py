"""Shared strategies and instance generators."""

import random

import pytest
from hypothesis import strategies as st

from qmap.arch import Architecture, build_arch
from qmap.circuit import Circuit, Gate, GateKind
from qmap.mapper import MapperConfig

_ONE_QUBIT = (GateKind.HADAMARD, GateKind.SINGLE)
_TWO_QUBIT = (GateKind.CNOT, GateKind.CPHASE, GateKind.SWAP)

_angles = st.floats(
    min_value=-16.0, max_value=16.0, allow_nan=False, allow_infinity=False
)


@st.composite
def circuits(draw, max_qubits: int = 6, max_gates: int = 12) -> Circuit:
    n = draw(st.integers(1, max_qubits))
    gates = []
    for _ in range(draw(st.integers(0, max_gates))):
        if n >= 2 and draw(st.booleans()):
            u = draw(st.integers(0, n - 1))
            v = draw(st.integers(0, n - 1).filter(lambda x: x != u))
            kind = draw(st.sampled_from(_TWO_QUBIT))
            angle = draw(_angles) if kind is GateKind.CPHASE else None
            gates.append(Gate(kind, (u, v), angle=angle))
        else:
            gates.append(Gate(draw(st.sampled_from(_ONE_QUBIT)), (draw(st.integers(0, n - 1)),)))
    for q in draw(st.permutations(range(n)))[: draw(st.integers(0, n))]:
        gates.append(Gate(GateKind.MEASURE, (q,)))
    return Circuit(n, tuple(gates))


def random_instance(seed: int, allow_measure: bool = True):
    """Seed-deterministic (circuit, arch, config) triple for mapper properties."""
    rng = random.Random(seed)
    n_cores = rng.choice((1, 2, 3, 4))
    qpc = rng.choice((2, 3, 4, 5))
    intra = rng.choice(("alltoall", "line", "grid"))
    inter = rng.choice(("alltoall", "line", "ring"))
    if intra == "grid" and qpc == 5:
        qpc = 4  # 5 slots have no grid layout
    arch = build_arch(n_cores, qpc, intra, inter)

    allow_full = rng.random() < 0.5
    cap = arch.n_qubits if allow_full else n_cores * (qpc - 1)
    cap = max(cap, 1)
    n = rng.randint(1, cap)
    gates = []
    for _ in range(rng.randint(0, 24)):
        if n >= 2 and rng.random() < 0.6:
            u, v = rng.sample(range(n), 2)
            gates.append(Gate(GateKind.CNOT, (u, v)))
        else:
            gates.append(Gate(GateKind.HADAMARD, (rng.randrange(n),)))
    if allow_measure:
        for q in rng.sample(range(n), rng.randint(0, n)):
            gates.append(Gate(GateKind.MEASURE, (q,)))
    circuit = Circuit(n, tuple(gates), name=f"inst{seed}")
    config = MapperConfig(
        placement=rng.choice(("block", "random")),
        seed=rng.randrange(1 << 16),
        allow_full=allow_full,
    )
    return circuit, arch, config


@pytest.fixture
def arch_2x2() -> Architecture:
    return build_arch(2, 2, "alltoall", "alltoall")


@pytest.fixture
def fixture_cnot02(arch_2x2):
    """The forced-teleport instance: CNOT(0,2) on 2 cores x 2 slots.

    Block placement puts v0,v1 in core 0 and v2 in core 1, so the gate
    needs exactly one teleport (v0 into the free slot 3).
    """
    from qmap.mapper import map_circuit

    circuit = Circuit(3, (Gate(GateKind.CNOT, (0, 2)),), name="cnot02")
    config = MapperConfig(allow_full=True)  # 3 states on 4 slots busts the headroom rule
    return map_circuit(circuit, arch_2x2, config)
