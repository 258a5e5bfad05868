"""Circuit intermediate representation: ordered gates over virtual qubits.

A circuit is a fixed gate sequence; its dependency structure (immediate
shared-operand predecessors and ASAP layers) is derived on demand with
:func:`build_dag`. All types are immutable after construction.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum


class GateKind(Enum):
    """Minimal gate vocabulary. Values are the textual mnemonics."""

    SINGLE = "x"  # generic single-qubit gate
    HADAMARD = "h"
    CPHASE = "cp"
    CNOT = "cx"
    SWAP = "swap"
    MEASURE = "measure"

    @property
    def arity(self) -> int:
        return 2 if self in TWO_QUBIT_KINDS else 1


TWO_QUBIT_KINDS = frozenset({GateKind.CPHASE, GateKind.CNOT, GateKind.SWAP})


@dataclass(frozen=True)
class Gate:
    """One gate application on 1 or 2 distinct virtual qubits.

    `angle` (radians) is required for controlled-phase gates and forbidden
    otherwise; the mapper ignores it, it is carried for serialization
    fidelity. `label` is free provenance text and never affects equality.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    angle: float | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if len(self.qubits) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} takes {self.kind.arity} operand(s), got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate operands on {self.kind.value}: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative operand index: {self.qubits}")
        if self.kind is GateKind.CPHASE:
            if self.angle is None:
                raise ValueError("cp requires an angle")
        elif self.angle is not None:
            raise ValueError(f"{self.kind.value} does not take an angle")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in TWO_QUBIT_KINDS


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over `n_qubits` virtual qubits.

    Measurements may only appear as a trailing suffix of the program.
    """

    n_qubits: int
    gates: tuple[Gate, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        measuring = False
        for i, g in enumerate(self.gates):
            if max(g.qubits) >= self.n_qubits:
                raise ValueError(
                    f"gate {i} ({g.kind.value}) operand out of range for {self.n_qubits} qubits"
                )
            if g.kind is GateKind.MEASURE:
                measuring = True
            elif measuring:
                raise ValueError(f"gate {i} ({g.kind.value}) follows a measure gate")


@dataclass(frozen=True)
class DependencyDag:
    """Immediate dependencies and ASAP layers, index-aligned with the gate list.

    Gate g depends on gate h iff h is the latest earlier gate sharing an
    operand with g (one immediate predecessor per shared operand).
    layer(g) = 1 + max(layer of predecessors); sources sit at layer 0.
    """

    preds: tuple[tuple[int, ...], ...]
    layer: tuple[int, ...]

    @property
    def depth(self) -> int:
        return max(self.layer) + 1 if self.layer else 0


def build_dag(circuit: Circuit) -> DependencyDag:
    last: list[int | None] = [None] * circuit.n_qubits
    preds: list[tuple[int, ...]] = []
    layer: list[int] = []
    for i, g in enumerate(circuit.gates):
        ps = sorted({last[q] for q in g.qubits if last[q] is not None})
        preds.append(tuple(ps))
        layer.append(max((layer[p] for p in ps), default=-1) + 1)
        for q in g.qubits:
            last[q] = i
    return DependencyDag(tuple(preds), tuple(layer))


@dataclass(frozen=True)
class CircuitStats:
    n_gates: int
    counts: dict
    two_qubit_count: int
    depth: int


def circuit_stats(circuit: Circuit) -> CircuitStats:
    """Gate counts by kind, two-qubit gate count, and ASAP depth."""
    counts = Counter(g.kind for g in circuit.gates)
    return CircuitStats(
        n_gates=len(circuit.gates),
        counts={kind: counts.get(kind, 0) for kind in GateKind},
        two_qubit_count=sum(1 for g in circuit.gates if g.is_two_qubit),
        depth=build_dag(circuit).depth,
    )
