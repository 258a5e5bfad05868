"""qmap: circuit mapping and qubit-traffic analysis for multi-core quantum machines."""

__version__ = "0.1.0"

from .arch import Architecture, CostModel, build_arch
from .circuit import Circuit, DependencyDag, Gate, GateKind, build_dag, circuit_stats
from .generate import gen_qft, gen_random
from .mapper import (
    MappedCircuit,
    MapperConfig,
    Placement,
    TimedOp,
    final_permutation,
    initial_placement,
    map_circuit,
    verify_mapped,
)
from .oracle import oracle_min_route
from .qasm import parse_circuit, serialize_circuit
from .traffic import (
    activity_raster,
    build_report,
    core_traffic_matrix,
    per_qubit_counts,
    readout_projection,
    summarize,
    vertical_bandwidth,
)

__all__ = [
    "Architecture",
    "Circuit",
    "CostModel",
    "DependencyDag",
    "Gate",
    "GateKind",
    "MappedCircuit",
    "MapperConfig",
    "Placement",
    "TimedOp",
    "activity_raster",
    "build_arch",
    "build_dag",
    "build_report",
    "circuit_stats",
    "core_traffic_matrix",
    "final_permutation",
    "gen_qft",
    "gen_random",
    "initial_placement",
    "map_circuit",
    "oracle_min_route",
    "parse_circuit",
    "per_qubit_counts",
    "readout_projection",
    "serialize_circuit",
    "summarize",
    "verify_mapped",
    "vertical_bandwidth",
]
