"""Workload characterization of a mapped circuit.

Every analysis is a pure function of a verified MappedCircuit: teleport
traffic by ordered core pair, per-virtual-qubit load attribution, an
activity raster (idle/compute/communicate per timestep and physical slot),
control/readout bandwidth series, and scalar summary metrics. Inputs that
fail verification are rejected.
"""

import logging
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .arch import CostModel
from .circuit import GateKind
from .errors import VerificationError
from .kernels import (
    COMMUNICATE,
    COMPUTE,
    K_EXCHANGE,
    K_GATE1,
    K_GATE2,
    K_SWAP,
    K_TELEPORT,
    STATE_CHARS,
    fill_raster,
    replay_counts,
)
from .mapper import OP_EXCHANGE, OP_GATE, OP_SWAP, OP_TELEPORT, MappedCircuit, verify_mapped

log = logging.getLogger(__name__)

# Flag configurations spending more than this per vertical bit: budgets
# beyond a few fJ/bit exceed what cryocooler heat lift tolerates.
ENERGY_WARN_J_PER_BIT = 10e-15


@dataclass(frozen=True)
class PerQubitCounts:
    teleports: np.ndarray  # per virtual qubit
    intra_ops: np.ndarray


@dataclass(frozen=True)
class VerticalSeries:
    control_bits: np.ndarray  # per timestep: bits triggered by op starts
    readout_bps: np.ndarray  # per timestep: readout bandwidth demand
    peak_control_bits: float
    peak_readout_bps: float
    projection_qubits: int
    projection_bps: float


@dataclass(frozen=True)
class EnergyEstimate:
    joules_per_bit: float
    total_vertical_bits: float
    total_joules: float
    exceeds_budget: bool


@dataclass(frozen=True)
class Summary:
    depth: int
    total_gates: int
    total_swaps: int
    total_teleports: int  # an exchange contributes 2
    comm_ratio: float
    load_cov: float


@dataclass(frozen=True)
class TrafficReport:
    core_matrix: np.ndarray
    core_matrix_sym: np.ndarray
    per_qubit: PerQubitCounts
    raster: np.ndarray
    vertical: VerticalSeries
    energy: EnergyEstimate
    summary: Summary


_OpArrays = namedtuple("_OpArrays", "kind p q start dur code is_measure")

_KIND_CODE = {OP_SWAP: K_SWAP, OP_TELEPORT: K_TELEPORT, OP_EXCHANGE: K_EXCHANGE}


def _op_arrays(m: MappedCircuit) -> _OpArrays:
    n = len(m.ops)
    kind = np.empty(n, dtype=np.int8)
    p = np.empty(n, dtype=np.int64)
    q = np.empty(n, dtype=np.int64)
    start = np.empty(n, dtype=np.int64)
    dur = np.empty(n, dtype=np.int64)
    code = np.empty(n, dtype=np.int8)
    is_measure = np.zeros(n, dtype=bool)
    for i, op in enumerate(m.ops):
        if op.kind == OP_GATE:
            kind[i] = K_GATE2 if op.q >= 0 else K_GATE1
            code[i] = COMPUTE
            is_measure[i] = m.circuit.gates[op.gate_id].kind is GateKind.MEASURE
        else:
            kind[i] = _KIND_CODE[op.kind]
            code[i] = COMMUNICATE
        p[i], q[i], start[i], dur[i] = op.p, op.q, op.t, op.dur
    return _OpArrays(kind, p, q, start, dur, code, is_measure)


def _require_verified(m: MappedCircuit) -> None:
    report = verify_mapped(m)
    if not report.ok:
        raise VerificationError(report.error)


def _replay(m: MappedCircuit, arrays: _OpArrays):
    return replay_counts(
        arrays.kind,
        arrays.p,
        arrays.q,
        np.asarray(m.initial.p2v(), dtype=np.int64),
        m.circuit.n_qubits,
        m.config.cost.swap_primitive_count,
    )


def _core_matrix(m: MappedCircuit) -> np.ndarray:
    qpc = m.arch.qubits_per_core
    matrix = np.zeros((m.arch.n_cores, m.arch.n_cores), dtype=np.int64)
    for op in m.ops:
        if op.kind == OP_TELEPORT:
            matrix[op.p // qpc, op.q // qpc] += 1
        elif op.kind == OP_EXCHANGE:
            matrix[op.p // qpc, op.q // qpc] += 1
            matrix[op.q // qpc, op.p // qpc] += 1
    return matrix


def core_traffic_matrix(m: MappedCircuit) -> np.ndarray:
    """Teleport counts per ordered (source core, destination core) pair.

    An exchange moves one state each way and contributes to both orders.
    """
    _require_verified(m)
    return _core_matrix(m)


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    """Undirected view: entry (i,j) = (i,j) + (j,i)."""
    return matrix + matrix.T


def per_qubit_counts(m: MappedCircuit) -> PerQubitCounts:
    """Loads attributed to virtual qubits by replaying the placement.

    A teleport credits the state moved (each exchanged state counts one
    teleport); gates credit each operand one intra-core op; a swap credits
    each state involved swap_primitive_count ops.
    """
    _require_verified(m)
    _, _, tel, intra, _ = _replay(m, _op_arrays(m))
    return PerQubitCounts(teleports=tel, intra_ops=intra)


def activity_raster(m: MappedCircuit) -> np.ndarray:
    """depth x n_phys grid: 0 idle, 1 compute, 2 communicate.

    Swaps, teleports and exchanges mark both endpoint slots as
    communicating for their full duration; gates mark their operands as
    computing.
    """
    _require_verified(m)
    a = _op_arrays(m)
    return fill_raster(a.start, a.dur, a.code, a.p, a.q, m.depth, m.arch.n_qubits)


def readout_projection(n_qubits: int, cost: CostModel) -> float:
    """Aggregate readout demand (bits/s) if n_qubits were read out at once."""
    return n_qubits * cost.readout_rate


def vertical_bandwidth(
    m: MappedCircuit, cost: CostModel | None = None, projection_qubits: int = 10**6
) -> VerticalSeries:
    """Per-timestep control and readout traffic between host and cores.

    Control: every op start triggers control_bits_per_gate bits. Readout:
    each active measure op demands readout_rate bits/s for its duration.
    """
    _require_verified(m)
    cost = cost or m.config.cost
    a = _op_arrays(m)
    control = np.bincount(a.start, minlength=m.depth).astype(np.float64)[: max(m.depth, 0)]
    control *= cost.control_bits_per_gate
    active = np.zeros(m.depth + 1, dtype=np.int64)
    for t, d in zip(a.start[a.is_measure], a.dur[a.is_measure]):
        active[t] += 1
        active[t + d] -= 1
    readout = np.cumsum(active[: m.depth]).astype(np.float64) * cost.readout_rate
    return VerticalSeries(
        control_bits=control,
        readout_bps=readout,
        peak_control_bits=float(control.max()) if control.size else 0.0,
        peak_readout_bps=float(readout.max()) if readout.size else 0.0,
        projection_qubits=projection_qubits,
        projection_bps=readout_projection(projection_qubits, cost),
    )


def energy_estimate(vertical: VerticalSeries, joules_per_bit: float = 1e-15) -> EnergyEstimate:
    """Vertical-link energy at a configurable cost per bit.

    Total bits counts control bits plus readout at one timestep per second
    of readout activity (a reporting convention, not a physical claim).
    """
    total_bits = float(vertical.control_bits.sum() + vertical.readout_bps.sum())
    exceeds = joules_per_bit > ENERGY_WARN_J_PER_BIT
    if exceeds:
        log.warning(
            "energy setting %.3g J/bit exceeds the %.3g J/bit cryo budget",
            joules_per_bit,
            ENERGY_WARN_J_PER_BIT,
        )
    return EnergyEstimate(
        joules_per_bit=joules_per_bit,
        total_vertical_bits=total_bits,
        total_joules=total_bits * joules_per_bit,
        exceeds_budget=exceeds,
    )


def _summary(m: MappedCircuit, tel: np.ndarray, intra: np.ndarray) -> Summary:
    n_gates = n_swaps = n_teleports = 0
    for op in m.ops:
        if op.kind == OP_GATE:
            n_gates += 1
        elif op.kind == OP_SWAP:
            n_swaps += 1
        elif op.kind == OP_TELEPORT:
            n_teleports += 1
        else:
            n_teleports += 2
    routing = n_swaps + n_teleports
    total = n_gates + routing
    loads = (tel + intra).astype(np.float64)
    mean = float(loads.mean()) if loads.size else 0.0
    cov = float(loads.std() / mean) if mean > 0 else 0.0
    return Summary(
        depth=m.depth,
        total_gates=n_gates,
        total_swaps=n_swaps,
        total_teleports=n_teleports,
        comm_ratio=routing / total if total else 0.0,
        load_cov=cov,
    )


def summarize(m: MappedCircuit) -> Summary:
    """Depth, op totals, communication ratio, and per-qubit load imbalance."""
    _require_verified(m)
    _, _, tel, intra, _ = _replay(m, _op_arrays(m))
    return _summary(m, tel, intra)


def build_report(
    m: MappedCircuit,
    projection_qubits: int = 10**6,
    joules_per_bit: float = 1e-15,
) -> TrafficReport:
    """All analyses in one pass; verifies the mapping once."""
    _require_verified(m)
    a = _op_arrays(m)
    _, _, tel, intra, _ = _replay(m, a)
    cost = m.config.cost
    matrix = _core_matrix(m)
    raster = fill_raster(a.start, a.dur, a.code, a.p, a.q, m.depth, m.arch.n_qubits)
    control = np.bincount(a.start, minlength=m.depth).astype(np.float64)[: max(m.depth, 0)]
    control *= cost.control_bits_per_gate
    active = np.zeros(m.depth + 1, dtype=np.int64)
    for t, d in zip(a.start[a.is_measure], a.dur[a.is_measure]):
        active[t] += 1
        active[t + d] -= 1
    readout = np.cumsum(active[: m.depth]).astype(np.float64) * cost.readout_rate
    vertical = VerticalSeries(
        control_bits=control,
        readout_bps=readout,
        peak_control_bits=float(control.max()) if control.size else 0.0,
        peak_readout_bps=float(readout.max()) if readout.size else 0.0,
        projection_qubits=projection_qubits,
        projection_bps=readout_projection(projection_qubits, cost),
    )
    return TrafficReport(
        core_matrix=matrix,
        core_matrix_sym=symmetrize(matrix),
        per_qubit=PerQubitCounts(teleports=tel, intra_ops=intra),
        raster=raster,
        vertical=vertical,
        energy=energy_estimate(vertical, joules_per_bit),
        summary=_summary(m, tel, intra),
    )


# ---------------------------------------------------------------------------
# Exports: five CSVs with stable headers plus one aggregate JSON dict
# ---------------------------------------------------------------------------


def render_csvs(report: TrafficReport) -> dict[str, str]:
    """CSV payloads keyed by file name; byte-stable for identical reports."""
    out: dict[str, str] = {}

    rows = ["src,dst,count"]
    n_cores = report.core_matrix.shape[0]
    for i in range(n_cores):
        for j in range(n_cores):
            rows.append(f"{i},{j},{report.core_matrix[i, j]}")
    out["core_matrix.csv"] = "\n".join(rows) + "\n"

    rows = ["vqubit,teleports,intra_ops"]
    for v in range(report.per_qubit.teleports.shape[0]):
        rows.append(f"{v},{report.per_qubit.teleports[v]},{report.per_qubit.intra_ops[v]}")
    out["per_qubit.csv"] = "\n".join(rows) + "\n"

    rows = ["timestep,pqubit,state"]
    depth, n_phys = report.raster.shape
    for t in range(depth):
        row = report.raster[t]
        rows.extend(f"{t},{p},{STATE_CHARS[row[p]]}" for p in range(n_phys))
    out["raster.csv"] = "\n".join(rows) + "\n"

    rows = ["timestep,control_bits,readout_bps"]
    for t in range(depth):
        rows.append(
            f"{t},{float(report.vertical.control_bits[t])!r},{float(report.vertical.readout_bps[t])!r}"
        )
    out["vertical.csv"] = "\n".join(rows) + "\n"

    s = report.summary
    out["summary.csv"] = (
        "metric,value\n"
        f"depth,{s.depth}\n"
        f"total_gates,{s.total_gates}\n"
        f"total_swaps,{s.total_swaps}\n"
        f"total_teleports,{s.total_teleports}\n"
        f"comm_ratio,{s.comm_ratio!r}\n"
        f"load_cov,{s.load_cov!r}\n"
    )
    return out


def report_to_dict(report: TrafficReport) -> dict:
    """JSON-ready aggregate of all five analyses."""
    s = report.summary
    return {
        "summary": {
            "depth": s.depth,
            "total_gates": s.total_gates,
            "total_swaps": s.total_swaps,
            "total_teleports": s.total_teleports,
            "comm_ratio": s.comm_ratio,
            "load_cov": s.load_cov,
        },
        "core_matrix": report.core_matrix.tolist(),
        "core_matrix_symmetrized": report.core_matrix_sym.tolist(),
        "per_qubit": {
            "teleports": report.per_qubit.teleports.tolist(),
            "intra_ops": report.per_qubit.intra_ops.tolist(),
        },
        "raster": ["".join(STATE_CHARS[c] for c in row) for row in report.raster],
        "vertical": {
            "control_bits": report.vertical.control_bits.tolist(),
            "readout_bps": report.vertical.readout_bps.tolist(),
            "peak_control_bits": report.vertical.peak_control_bits,
            "peak_readout_bps": report.vertical.peak_readout_bps,
            "projection_qubits": report.vertical.projection_qubits,
            "projection_bps": report.vertical.projection_bps,
        },
        "energy": {
            "joules_per_bit": report.energy.joules_per_bit,
            "total_vertical_bits": report.energy.total_vertical_bits,
            "total_joules": report.energy.total_joules,
            "exceeds_budget": report.energy.exceeds_budget,
        },
    }
