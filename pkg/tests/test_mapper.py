import dataclasses

import pytest

from qmap.arch import CostModel, build_arch
from qmap.circuit import Circuit, Gate, GateKind, build_dag
from qmap.errors import CapacityError, RoutingDeadlockError
from qmap.generate import gen_qft, gen_random
from qmap.mapper import (
    OP_EXCHANGE,
    OP_GATE,
    OP_SWAP,
    OP_TELEPORT,
    MappedCircuit,
    MapperConfig,
    Placement,
    TimedOp,
    final_permutation,
    initial_placement,
    load_mapped,
    map_circuit,
    routing_op_count,
    serialize_mapped,
    verify_mapped,
)

from conftest import random_instance


def _ops_of(m: MappedCircuit, kind: str) -> list[TimedOp]:
    return [op for op in m.ops if op.kind == kind]


class TestPlacement:
    def test_block_fills_cores_in_order(self):
        arch = build_arch(2, 4, "alltoall", "alltoall")
        pl = initial_placement(Circuit(4), arch, MapperConfig())
        assert pl.v2p == (0, 1, 2, 3)  # all four in core 0

    def test_block_fills_whole_machine(self):
        arch = build_arch(8, 8, "alltoall", "alltoall")
        pl = initial_placement(gen_qft(64), arch, MapperConfig())
        assert pl.v2p == tuple(range(64))
        assert pl.free_slots() == ()

    def test_capacity(self):
        arch = build_arch(1, 2, "alltoall", "alltoall")
        with pytest.raises(CapacityError):
            initial_placement(Circuit(3), arch, MapperConfig())

    def test_random_is_seed_deterministic(self):
        arch = build_arch(2, 4, "alltoall", "alltoall")
        cfg = MapperConfig(placement="random", seed=9)
        a = initial_placement(Circuit(5), arch, cfg)
        assert a == initial_placement(Circuit(5), arch, cfg)
        assert a != initial_placement(Circuit(5), arch, MapperConfig(placement="random", seed=10))
        assert len(set(a.v2p)) == 5

    def test_placement_validation(self):
        with pytest.raises(ValueError):
            Placement((0, 0), 4)
        with pytest.raises(ValueError):
            Placement((0, 9), 4)


class TestMapCircuitBasics:
    def test_single_core_alltoall_needs_no_routing(self):
        arch = build_arch(1, 8, "alltoall", "alltoall")
        circuit = gen_random(8, 40, 0.5, 3)
        m = map_circuit(circuit, arch, MapperConfig(allow_full=True))
        assert routing_op_count(m) == 0
        assert verify_mapped(m).ok
        # with unit durations every gate sits exactly at its ASAP layer
        dag = build_dag(circuit)
        for op in m.ops:
            assert op.t == dag.layer[op.gate_id]

    def test_forced_single_teleport(self, fixture_cnot02):
        m = fixture_cnot02
        teleports = _ops_of(m, OP_TELEPORT)
        assert len(teleports) == 1
        assert len(_ops_of(m, OP_GATE)) == 1
        assert len(m.ops) == 2
        tp = teleports[0]
        assert (tp.p, tp.q) == (0, 3)  # v0 moves into the free slot of core 1
        assert (tp.core_p, tp.core_q) == (0, 1)
        assert verify_mapped(m).ok

    def test_headroom_rule(self):
        arch = build_arch(8, 8, "alltoall", "alltoall")
        with pytest.raises(CapacityError, match="allow_full"):
            map_circuit(gen_qft(64), arch, MapperConfig())
        m = map_circuit(gen_qft(64), arch, MapperConfig(allow_full=True))
        assert verify_mapped(m).ok

    def test_full_machine_uses_exchange(self):
        arch = build_arch(2, 2, "alltoall", "alltoall")
        circuit = Circuit(4, (Gate(GateKind.CNOT, (0, 2)),))
        m = map_circuit(circuit, arch, MapperConfig(allow_full=True))
        exchanges = _ops_of(m, OP_EXCHANGE)
        assert len(exchanges) == 1
        assert len(m.ops) == 2
        # v0 at slot 0 exchanges with the victim at slot 3 (slot 2 holds v2)
        assert (exchanges[0].p, exchanges[0].q) == (0, 3)
        assert routing_op_count(m) == 2  # an exchange counts as two teleports
        assert verify_mapped(m).ok

    def test_both_cores_full_routes_through_third(self):
        arch = build_arch(4, 2, "alltoall", "alltoall")
        # block placement: v0,v1 fill core 0 and v2,v3 fill core 1
        circuit = Circuit(4, (Gate(GateKind.CNOT, (0, 2)),))
        m = map_circuit(circuit, arch, MapperConfig())
        teleports = _ops_of(m, OP_TELEPORT)
        assert len(teleports) == 2
        assert {tp.q for tp in teleports} == {4, 5}  # both land in core 2
        assert verify_mapped(m).ok

    def test_deadlock_is_an_error(self):
        arch = build_arch(2, 1, "alltoall", "alltoall")
        circuit = Circuit(2, (Gate(GateKind.CNOT, (0, 1)),))
        with pytest.raises(RoutingDeadlockError):
            map_circuit(circuit, arch, MapperConfig(allow_full=True))

    def test_swap_chain_on_a_line(self):
        arch = build_arch(1, 4, "line", "alltoall")
        circuit = Circuit(4, (Gate(GateKind.CNOT, (0, 3)),))
        m = map_circuit(circuit, arch, MapperConfig(allow_full=True))
        swaps = _ops_of(m, OP_SWAP)
        assert [(s.p, s.q) for s in swaps] == [(0, 1), (1, 2)]
        gate = _ops_of(m, OP_GATE)[0]
        assert (gate.p, gate.q) == (2, 3)
        assert verify_mapped(m).ok

    def test_lookahead_reserved(self):
        arch = build_arch(1, 2, "alltoall", "alltoall")
        with pytest.raises(ValueError, match="lookahead"):
            map_circuit(Circuit(1), arch, MapperConfig(lookahead=2))

    def test_determinism(self):
        circuit, arch, config = random_instance(77)
        a = serialize_mapped(map_circuit(circuit, arch, config))
        b = serialize_mapped(map_circuit(circuit, arch, config))
        assert a == b


class TestSchedule:
    def test_durations_respected(self):
        cost = CostModel(dur_1q=2, dur_2q=3, dur_teleport=5)
        arch = build_arch(2, 2, "alltoall", "alltoall")
        circuit = Circuit(3, (Gate(GateKind.HADAMARD, (0,)), Gate(GateKind.CNOT, (0, 2))))
        m = map_circuit(circuit, arch, MapperConfig(cost=cost, allow_full=True))
        h, tp, cx = m.ops
        assert (h.t, h.dur) == (0, 2)
        assert (tp.t, tp.dur) == (2, 5)  # teleport waits for the hadamard
        assert (cx.t, cx.dur) == (7, 3)
        assert m.depth == 10
        assert verify_mapped(m).ok

    def test_disjoint_ops_share_timesteps(self):
        arch = build_arch(1, 4, "alltoall", "alltoall")
        circuit = Circuit(4, (Gate(GateKind.CNOT, (0, 1)), Gate(GateKind.CNOT, (2, 3))))
        m = map_circuit(circuit, arch, MapperConfig(allow_full=True))
        assert m.ops[0].t == m.ops[1].t == 0
        assert m.depth == 1


class TestVerifier:
    def test_passes_on_mapper_output(self):
        for seed in range(40):
            circuit, arch, config = random_instance(seed)
            assert verify_mapped(map_circuit(circuit, arch, config)).ok

    def test_rejects_cross_core_gate(self):
        arch = build_arch(2, 2, "alltoall", "alltoall")
        circuit = Circuit(3, (Gate(GateKind.CNOT, (0, 2)),))
        bad = MappedCircuit(
            arch=arch,
            circuit=circuit,
            config=MapperConfig(),
            initial=Placement((0, 1, 2), 4),
            ops=(TimedOp(t=0, kind=OP_GATE, dur=1, p=0, q=2, gate_id=0),),
            final=Placement((0, 1, 2), 4),
            depth=1,
        )
        report = verify_mapped(bad)
        assert not report.ok
        assert "non-adjacent" in report.error

    def test_rejects_resource_conflict(self):
        arch = build_arch(1, 3, "alltoall", "alltoall")
        circuit = Circuit(3, (Gate(GateKind.CNOT, (0, 1)), Gate(GateKind.CNOT, (1, 2))))
        bad = MappedCircuit(
            arch=arch,
            circuit=circuit,
            config=MapperConfig(),
            initial=Placement((0, 1, 2), 3),
            ops=(
                TimedOp(t=0, kind=OP_GATE, dur=1, p=0, q=1, gate_id=0),
                TimedOp(t=0, kind=OP_GATE, dur=1, p=1, q=2, gate_id=1),  # qubit 1 reused
            ),
            final=Placement((0, 1, 2), 3),
            depth=1,
        )
        report = verify_mapped(bad)
        assert not report.ok
        assert "busy" in report.error

    def test_rejects_wrong_operands(self):
        arch = build_arch(1, 3, "alltoall", "alltoall")
        circuit = Circuit(3, (Gate(GateKind.CNOT, (0, 2)),))
        bad = MappedCircuit(
            arch=arch,
            circuit=circuit,
            config=MapperConfig(),
            initial=Placement((0, 1, 2), 3),
            ops=(TimedOp(t=0, kind=OP_GATE, dur=1, p=0, q=1, gate_id=0),),
            final=Placement((0, 1, 2), 3),
            depth=1,
        )
        report = verify_mapped(bad)
        assert not report.ok
        assert "expects virtual" in report.error

    def test_rejects_missing_and_duplicate_gates(self):
        arch = build_arch(1, 2, "alltoall", "alltoall")
        circuit = Circuit(2, (Gate(GateKind.HADAMARD, (0,)), Gate(GateKind.HADAMARD, (1,))))
        base = dict(
            arch=arch, circuit=circuit, config=MapperConfig(),
            initial=Placement((0, 1), 2), final=Placement((0, 1), 2),
        )
        missing = MappedCircuit(
            **base, ops=(TimedOp(t=0, kind=OP_GATE, dur=1, p=0, gate_id=0),), depth=1
        )
        assert "1 of 2 gates" in verify_mapped(missing).error
        dup = MappedCircuit(
            **base,
            ops=(
                TimedOp(t=0, kind=OP_GATE, dur=1, p=0, gate_id=0),
                TimedOp(t=1, kind=OP_GATE, dur=1, p=0, gate_id=0),
            ),
            depth=2,
        )
        assert "twice" in verify_mapped(dup).error

    def test_rejects_dependency_violation(self):
        arch = build_arch(1, 2, "alltoall", "alltoall")
        circuit = Circuit(2, (Gate(GateKind.HADAMARD, (0,)), Gate(GateKind.CNOT, (0, 1))))
        bad = MappedCircuit(
            arch=arch,
            circuit=circuit,
            config=MapperConfig(),
            initial=Placement((0, 1), 2),
            ops=(
                TimedOp(t=0, kind=OP_GATE, dur=1, p=0, q=1, gate_id=1),
                TimedOp(t=1, kind=OP_GATE, dur=1, p=0, gate_id=0),
            ),
            final=Placement((0, 1), 2),
            depth=2,
        )
        assert "predecessor" in verify_mapped(bad).error

    def test_rejects_teleport_to_occupied_slot(self):
        arch = build_arch(2, 2, "alltoall", "alltoall")
        circuit = Circuit(4)
        bad = MappedCircuit(
            arch=arch,
            circuit=circuit,
            config=MapperConfig(allow_full=True),
            initial=Placement((0, 1, 2, 3), 4),
            ops=(TimedOp(t=0, kind=OP_TELEPORT, dur=1, p=0, q=2, core_p=0, core_q=1),),
            final=Placement((2, 1, 0, 3), 4),
            depth=1,
        )
        assert "occupied" in verify_mapped(bad).error

    def test_rejects_wrong_final_placement(self, fixture_cnot02):
        bad = dataclasses.replace(fixture_cnot02, final=fixture_cnot02.initial)
        assert "final placement" in verify_mapped(bad).error


class TestFinalPermutation:
    def test_identity_without_routing(self):
        arch = build_arch(1, 4, "alltoall", "alltoall")
        circuit = gen_random(4, 10, 0.5, 5)
        m = map_circuit(circuit, arch, MapperConfig(allow_full=True))
        assert final_permutation(m) == m.initial

    def test_swap_exchanges_two_images(self):
        arch = build_arch(1, 3, "line", "alltoall")
        circuit = Circuit(3, (Gate(GateKind.CNOT, (0, 2)),))
        m = map_circuit(circuit, arch, MapperConfig(allow_full=True))
        # one swap 0->1 happens, so v0 ends at slot 1 and v1 at slot 0
        assert final_permutation(m).v2p == (1, 0, 2)

    def test_teleport_moves_one_image(self, fixture_cnot02):
        assert final_permutation(fixture_cnot02).v2p == (3, 1, 2)

    def test_conservation_of_live_states(self):
        for seed in range(20):
            circuit, arch, config = random_instance(seed + 500)
            m = map_circuit(circuit, arch, config)
            assert sorted(m.final.v2p) == sorted(set(m.final.v2p))
            assert len(m.final.v2p) == circuit.n_qubits


class TestSerialization:
    def _assert_equal(self, a: MappedCircuit, b: MappedCircuit):
        assert a.ops == b.ops
        assert a.initial == b.initial
        assert a.final == b.final
        assert a.depth == b.depth
        assert a.circuit == b.circuit
        assert a.config == b.config
        assert a.arch.shorthand() == b.arch.shorthand()

    def test_round_trip(self):
        for seed in (1, 19, 42):
            circuit, arch, config = random_instance(seed)
            m = map_circuit(circuit, arch, config)
            loaded = load_mapped(serialize_mapped(m))
            self._assert_equal(m, loaded)
            assert verify_mapped(loaded).ok

    def test_stable_op_lines(self, fixture_cnot02):
        text = serialize_mapped(fixture_cnot02)
        assert "t=0 teleport p=0 q=3 pc=0 qc=1" in text
        assert "t=1 gate id=0 p=3 q=2" in text

    def test_tampered_digest_rejected(self, fixture_cnot02):
        from qmap.errors import MappedFormatError

        text = serialize_mapped(fixture_cnot02).replace("allow_full=true", "allow_full=false")
        with pytest.raises(MappedFormatError, match="digest"):
            load_mapped(text)
