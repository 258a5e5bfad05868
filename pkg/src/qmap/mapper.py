"""Placement, routing, and scheduling of circuits onto modular machines.

map_circuit processes gates in program order (a topological order of the
dependency DAG). Single-qubit gates execute in place. A two-qubit gate
whose operands sit in different cores first gets a state transfer:

  1. teleport the first operand into the partner core's lowest free slot,
  2. else teleport the second operand the other way,
  3. else (only when the mapping allows full cores) exchange the first
     operand with a victim state in the partner core - one scheduled op,
     counted as two teleports everywhere,
  4. else move both operands to the lowest-index third core having two
     free slots,
  5. else fail with RoutingDeadlockError.

Once co-located, the first operand is swapped along a shortest intra-core
path (ties broken toward the lowest physical index) until the operands are
coupled, and the gate is emitted. Timesteps are assigned ASAP: each op
starts when all its operands are released; ops on disjoint qubits may
overlap in time.
"""

import hashlib
import random
from dataclasses import dataclass, field, replace

from .arch import Architecture, CostModel, parse_arch_shorthand
from .circuit import Circuit, Gate, GateKind, build_dag
from .errors import CapacityError, MappedFormatError, RoutingDeadlockError
from .qasm import parse_circuit

OP_GATE = "gate"
OP_SWAP = "swap"
OP_TELEPORT = "teleport"
OP_EXCHANGE = "exchange"


@dataclass(frozen=True)
class Placement:
    """Injective assignment of virtual qubits to physical slots.

    v2p[v] is the physical slot of virtual qubit v; slots outside the
    image are free.
    """

    v2p: tuple[int, ...]
    n_phys: int

    def __post_init__(self):
        object.__setattr__(self, "v2p", tuple(self.v2p))
        if any(not 0 <= p < self.n_phys for p in self.v2p):
            raise ValueError("placement target out of range")
        if len(set(self.v2p)) != len(self.v2p):
            raise ValueError("placement is not injective")

    def p2v(self) -> list[int]:
        """Inverse table; -1 marks a free slot."""
        table = [-1] * self.n_phys
        for v, p in enumerate(self.v2p):
            table[p] = v
        return table

    def free_slots(self) -> tuple[int, ...]:
        used = set(self.v2p)
        return tuple(p for p in range(self.n_phys) if p not in used)


@dataclass(frozen=True)
class TimedOp:
    """One scheduled operation.

    kind "gate": p (and q for two-qubit gates) are the physical operands,
    gate_id indexes the source circuit. kind "swap": exchange the states of
    coupled same-core slots p,q. kind "teleport": move the state at p into
    free slot q of another core. kind "exchange": symmetric cross-core state
    swap between occupied slots p,q (counted as two teleports in metrics).
    core_p/core_q are filled for cross-core ops.
    """

    t: int
    kind: str
    dur: int
    p: int
    q: int = -1
    gate_id: int = -1
    core_p: int = -1
    core_q: int = -1


@dataclass(frozen=True)
class MapperConfig:
    placement: str = "block"  # "block" | "random"
    seed: int = 0
    eviction: str = "move-to-free"
    cost: CostModel = field(default_factory=CostModel)
    lookahead: int = 0
    allow_full: bool = False

    def __post_init__(self):
        if self.placement not in ("block", "random"):
            raise ValueError(f"unknown placement strategy {self.placement!r}")
        if self.eviction != "move-to-free":
            raise ValueError(f"unknown eviction policy {self.eviction!r}")
        if self.lookahead < 0:
            raise ValueError("lookahead window must be >= 0")

    def canonical(self) -> str:
        c = self.cost
        cost = (
            f"dur_1q={c.dur_1q} dur_2q={c.dur_2q} dur_swap={c.dur_swap} "
            f"dur_teleport={c.dur_teleport} swap_primitive_count={c.swap_primitive_count} "
            f"readout_rate={c.readout_rate!r} control_bits_per_gate={c.control_bits_per_gate!r}"
        )
        return (
            f"placement={self.placement} seed={self.seed} eviction={self.eviction} "
            f"lookahead={self.lookahead} allow_full={str(self.allow_full).lower()} {cost}"
        )

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]


@dataclass
class MappedCircuit:
    arch: Architecture
    circuit: Circuit
    config: MapperConfig
    initial: Placement
    ops: tuple[TimedOp, ...]
    final: Placement
    depth: int


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    error: str | None = None
    op_index: int = -1


def initial_placement(circuit: Circuit, arch: Architecture, config: MapperConfig) -> Placement:
    """Block placement maps virtual qubit v to physical slot v (cores fill
    in index order); random placement is a seed-deterministic uniform
    injective draw."""
    if circuit.n_qubits > arch.n_qubits:
        raise CapacityError(
            f"circuit has {circuit.n_qubits} qubits but the machine has {arch.n_qubits}"
        )
    if config.placement == "block":
        v2p = tuple(range(circuit.n_qubits))
    else:
        rng = random.Random(config.seed)
        v2p = tuple(rng.sample(range(arch.n_qubits), circuit.n_qubits))
    return Placement(v2p, arch.n_qubits)


def _duration(kind: str, two_qubit: bool, cost: CostModel) -> int:
    if kind == OP_GATE:
        return cost.dur_2q if two_qubit else cost.dur_1q
    if kind == OP_SWAP:
        return cost.dur_swap
    return cost.dur_teleport  # teleport and exchange


def map_circuit(circuit: Circuit, arch: Architecture, config: MapperConfig) -> MappedCircuit:
    if config.lookahead != 0:
        raise ValueError("lookahead > 0 is reserved and not implemented")
    headroom = arch.n_cores * (arch.qubits_per_core - 1)
    if not config.allow_full and circuit.n_qubits > headroom:
        raise CapacityError(
            f"circuit has {circuit.n_qubits} qubits but only {headroom} slots are usable "
            f"when one free slot per core is reserved (use allow_full to lift this)"
        )
    init = initial_placement(circuit, arch, config)

    cost = config.cost
    qpc = arch.qubits_per_core
    v2p = list(init.v2p)
    p2v = init.p2v()
    busy = [0] * arch.n_qubits
    ops: list[TimedOp] = []

    def emit(kind: str, p: int, q: int, dur: int, gate_id: int = -1) -> None:
        t = busy[p] if q < 0 else max(busy[p], busy[q])
        cp = cq = -1
        if kind in (OP_TELEPORT, OP_EXCHANGE):
            cp, cq = p // qpc, q // qpc
        ops.append(TimedOp(t=t, kind=kind, dur=dur, p=p, q=q, gate_id=gate_id, core_p=cp, core_q=cq))
        busy[p] = t + dur
        if q >= 0:
            busy[q] = t + dur

    def do_swap(p: int, q: int) -> None:
        emit(OP_SWAP, p, q, cost.dur_swap)
        va, vb = p2v[p], p2v[q]
        p2v[p], p2v[q] = vb, va
        if va >= 0:
            v2p[va] = q
        if vb >= 0:
            v2p[vb] = p

    def do_teleport(src: int, dst: int) -> None:
        emit(OP_TELEPORT, src, dst, cost.dur_teleport)
        v = p2v[src]
        p2v[dst], p2v[src] = v, -1
        v2p[v] = dst

    def do_exchange(p: int, q: int) -> None:
        emit(OP_EXCHANGE, p, q, cost.dur_teleport)
        va, vb = p2v[p], p2v[q]
        p2v[p], p2v[q] = vb, va
        v2p[va], v2p[vb] = q, p

    def free_in_core(core: int) -> list[int]:
        return [s for s in arch.core_slots(core) if p2v[s] < 0]

    def resolve_cross_core(u: int, v: int, gate_index: int) -> None:
        pu, pv = v2p[u], v2p[v]
        cu, cv = pu // qpc, pv // qpc
        free_v = free_in_core(cv)
        if free_v:
            do_teleport(pu, free_v[0])
            return
        free_u = free_in_core(cu)
        if free_u:
            do_teleport(pv, free_u[0])
            return
        if config.allow_full:
            victims = [s for s in arch.core_slots(cv) if s != pv]
            if victims:
                do_exchange(pu, victims[0])
                return
        for cc in range(arch.n_cores):
            if cc in (cu, cv):
                continue
            free_c = free_in_core(cc)
            if len(free_c) >= 2:
                do_teleport(pu, free_c[0])
                do_teleport(pv, free_c[1])
                return
        raise RoutingDeadlockError(
            f"gate {gate_index}: operand cores {cu} and {cv} are full and no core has two free slots"
        )

    def route_intra(moving: int, target: int) -> int:
        """Swap the state at `moving` toward `target` until coupled."""
        while not arch.are_adjacent(moving, target):
            step = min(
                arch.intra_neighbors(moving),
                key=lambda nb: (arch.intra_distance(nb, target), nb),
            )
            do_swap(moving, step)
            moving = step
        return moving

    for gate_index, g in enumerate(circuit.gates):
        if not g.is_two_qubit:
            emit(OP_GATE, v2p[g.qubits[0]], -1, cost.dur_1q, gate_id=gate_index)
            continue
        u, v = g.qubits
        if v2p[u] // qpc != v2p[v] // qpc:
            resolve_cross_core(u, v, gate_index)
        pu = route_intra(v2p[u], v2p[v])
        emit(OP_GATE, pu, v2p[v], cost.dur_2q, gate_id=gate_index)

    depth = max((op.t + op.dur for op in ops), default=0)
    return MappedCircuit(
        arch=arch,
        circuit=circuit,
        config=config,
        initial=init,
        ops=tuple(ops),
        final=Placement(tuple(v2p), arch.n_qubits),
        depth=depth,
    )


def verify_mapped(m: MappedCircuit) -> VerificationReport:
    """Check every structural invariant plus symbolic semantic equivalence.

    Replays the op list from the initial placement: every emitted gate must
    act on the current physical locations of exactly its source operands,
    two-qubit gates on coupled same-core slots, in a dependency-respecting
    order, with no physical qubit in two overlapping ops; the replayed
    placement must land on the declared final placement.
    """

    def fail(i: int, msg: str) -> VerificationReport:
        where = f"op {i}: " if i >= 0 else ""
        return VerificationReport(ok=False, error=where + msg, op_index=i)

    arch, circuit, cost = m.arch, m.circuit, m.config.cost
    qpc = arch.qubits_per_core
    if len(m.initial.v2p) != circuit.n_qubits or m.initial.n_phys != arch.n_qubits:
        return fail(-1, "initial placement does not match circuit/architecture")

    dag = build_dag(circuit)
    p2v = m.initial.p2v()
    released = [0] * arch.n_qubits  # per-slot time of last release
    emitted: list[bool] = [False] * len(circuit.gates)
    n_emitted = 0

    for i, op in enumerate(m.ops):
        if op.t < 0:
            return fail(i, f"negative timestep {op.t}")
        touched = (op.p,) if op.q < 0 else (op.p, op.q)
        for s in touched:
            if not 0 <= s < arch.n_qubits:
                return fail(i, f"physical qubit {s} out of range")
        if len(touched) == 2 and op.p == op.q:
            return fail(i, "an op cannot use one qubit twice")
        for s in touched:
            if op.t < released[s]:
                return fail(i, f"qubit {s} is busy until t={released[s]} but op starts at t={op.t}")

        if op.kind == OP_GATE:
            if not 0 <= op.gate_id < len(circuit.gates):
                return fail(i, f"gate id {op.gate_id} out of range")
            if emitted[op.gate_id]:
                return fail(i, f"gate {op.gate_id} emitted twice")
            g = circuit.gates[op.gate_id]
            if op.dur != _duration(OP_GATE, g.is_two_qubit, cost):
                return fail(i, f"gate duration {op.dur} does not match the cost model")
            if (op.q >= 0) != g.is_two_qubit:
                return fail(i, f"gate {op.gate_id} arity mismatch")
            if g.is_two_qubit:
                if not arch.are_adjacent(op.p, op.q):
                    return fail(i, f"two-qubit gate on non-adjacent qubits ({op.p},{op.q})")
                if (p2v[op.p], p2v[op.q]) != g.qubits:
                    return fail(
                        i,
                        f"gate {op.gate_id} expects virtual {g.qubits} but slots "
                        f"({op.p},{op.q}) hold ({p2v[op.p]},{p2v[op.q]})",
                    )
            elif p2v[op.p] != g.qubits[0]:
                return fail(i, f"gate {op.gate_id} expects virtual {g.qubits[0]} at slot {op.p}")
            if any(not emitted[h] for h in dag.preds[op.gate_id]):
                return fail(i, f"gate {op.gate_id} emitted before a predecessor")
            emitted[op.gate_id] = True
            n_emitted += 1
        elif op.kind == OP_SWAP:
            if op.dur != cost.dur_swap:
                return fail(i, "swap duration does not match the cost model")
            if not arch.are_adjacent(op.p, op.q):
                return fail(i, f"swap on non-adjacent qubits ({op.p},{op.q})")
            p2v[op.p], p2v[op.q] = p2v[op.q], p2v[op.p]
        elif op.kind == OP_TELEPORT:
            if op.dur != cost.dur_teleport:
                return fail(i, "teleport duration does not match the cost model")
            if op.p // qpc == op.q // qpc:
                return fail(i, f"teleport within core {op.p // qpc}")
            if p2v[op.p] < 0:
                return fail(i, f"teleport source {op.p} is free")
            if p2v[op.q] >= 0:
                return fail(i, f"teleport destination {op.q} is occupied")
            if (op.core_p, op.core_q) != (op.p // qpc, op.q // qpc):
                return fail(i, "teleport core annotation mismatch")
            p2v[op.q], p2v[op.p] = p2v[op.p], -1
        elif op.kind == OP_EXCHANGE:
            if op.dur != cost.dur_teleport:
                return fail(i, "exchange duration does not match the cost model")
            if op.p // qpc == op.q // qpc:
                return fail(i, f"exchange within core {op.p // qpc}")
            if p2v[op.p] < 0 or p2v[op.q] < 0:
                return fail(i, "exchange requires two occupied slots")
            if (op.core_p, op.core_q) != (op.p // qpc, op.q // qpc):
                return fail(i, "exchange core annotation mismatch")
            p2v[op.p], p2v[op.q] = p2v[op.q], p2v[op.p]
        else:
            return fail(i, f"unknown op kind {op.kind!r}")

        for s in touched:
            released[s] = op.t + op.dur

    if n_emitted != len(circuit.gates):
        return fail(-1, f"{n_emitted} of {len(circuit.gates)} gates emitted")
    final = [-1] * circuit.n_qubits
    for p, v in enumerate(p2v):
        if v >= 0:
            final[v] = p
    if tuple(final) != m.final.v2p:
        return fail(-1, "declared final placement does not match replay")
    depth = max((op.t + op.dur for op in m.ops), default=0)
    if depth != m.depth:
        return fail(-1, f"declared depth {m.depth} != computed {depth}")
    return VerificationReport(ok=True)


def final_permutation(m: MappedCircuit) -> Placement:
    """Final placement, cross-checked against a replay of the op list."""
    p2v = m.initial.p2v()
    for op in m.ops:
        if op.kind == OP_SWAP or op.kind == OP_EXCHANGE:
            p2v[op.p], p2v[op.q] = p2v[op.q], p2v[op.p]
        elif op.kind == OP_TELEPORT:
            p2v[op.q], p2v[op.p] = p2v[op.p], -1
    v2p = [-1] * len(m.initial.v2p)
    for p, v in enumerate(p2v):
        if v >= 0:
            v2p[v] = p
    if tuple(v2p) != m.final.v2p:
        raise ValueError("final placement does not match replay of ops")
    return m.final


def routing_op_count(m: MappedCircuit) -> int:
    """Swaps + teleports, an exchange counting as two teleports."""
    total = 0
    for op in m.ops:
        if op.kind == OP_SWAP or op.kind == OP_TELEPORT:
            total += 1
        elif op.kind == OP_EXCHANGE:
            total += 2
    return total


# ---------------------------------------------------------------------------
# Mapped-circuit file format (stable line order for diff-based testing)
# ---------------------------------------------------------------------------

_HEADER = "# qmap mapped v1"


def serialize_mapped(m: MappedCircuit) -> str:
    cfg = m.config
    c = cfg.cost
    lines = [
        _HEADER,
        f"arch = {m.arch.shorthand()}",
        f"cost = dur_1q={c.dur_1q} dur_2q={c.dur_2q} dur_swap={c.dur_swap} "
        f"dur_teleport={c.dur_teleport} swap_primitive_count={c.swap_primitive_count} "
        f"readout_rate={c.readout_rate!r} control_bits_per_gate={c.control_bits_per_gate!r}",
        f"circuit = {m.circuit.name}",
        f"n_qubits = {m.circuit.n_qubits}",
        f"config = placement={cfg.placement} seed={cfg.seed} eviction={cfg.eviction} "
        f"lookahead={cfg.lookahead} allow_full={str(cfg.allow_full).lower()}",
        f"config_digest = {cfg.digest()}",
        f"gates = {len(m.circuit.gates)}",
    ]
    for g in m.circuit.gates:
        parts = ["gate", g.kind.value, *(str(q) for q in g.qubits)]
        if g.angle is not None:
            parts.append(repr(g.angle))
        lines.append(" ".join(parts))
    lines.append("initial = " + " ".join(str(p) for p in m.initial.v2p))
    lines.append(f"ops = {len(m.ops)}")
    for op in m.ops:
        if op.kind == OP_GATE:
            tail = f"gate id={op.gate_id} p={op.p}" + (f" q={op.q}" if op.q >= 0 else "")
        elif op.kind == OP_SWAP:
            tail = f"swap p={op.p} q={op.q}"
        else:
            tail = f"{op.kind} p={op.p} q={op.q} pc={op.core_p} qc={op.core_q}"
        lines.append(f"t={op.t} {tail}")
    lines.append("final = " + " ".join(str(p) for p in m.final.v2p))
    lines.append(f"depth = {m.depth}")
    return "\n".join(lines) + "\n"


def _parse_kv_line(line: str, key: str) -> str:
    prefix = key + " = "
    if not line.startswith(prefix):
        raise MappedFormatError(f"expected {key!r} line, got {line!r}")
    return line[len(prefix):]


def load_mapped(text: str) -> MappedCircuit:
    lines = text.splitlines()
    if not lines or lines[0] != _HEADER:
        raise MappedFormatError("not a qmap mapped-circuit file")
    try:
        arch = parse_arch_shorthand(_parse_kv_line(lines[1], "arch"))
        cost_fields = dict(kv.split("=", 1) for kv in _parse_kv_line(lines[2], "cost").split())
        cost = CostModel(
            dur_1q=int(cost_fields["dur_1q"]),
            dur_2q=int(cost_fields["dur_2q"]),
            dur_swap=int(cost_fields["dur_swap"]),
            dur_teleport=int(cost_fields["dur_teleport"]),
            swap_primitive_count=int(cost_fields["swap_primitive_count"]),
            readout_rate=float(cost_fields["readout_rate"]),
            control_bits_per_gate=float(cost_fields["control_bits_per_gate"]),
        )
        name = _parse_kv_line(lines[3], "circuit")
        n_qubits = int(_parse_kv_line(lines[4], "n_qubits"))
        cfg_fields = dict(kv.split("=", 1) for kv in _parse_kv_line(lines[5], "config").split())
        config = MapperConfig(
            placement=cfg_fields["placement"],
            seed=int(cfg_fields["seed"]),
            eviction=cfg_fields["eviction"],
            cost=cost,
            lookahead=int(cfg_fields["lookahead"]),
            allow_full=cfg_fields["allow_full"] == "true",
        )
        digest = _parse_kv_line(lines[6], "config_digest")
        n_gates = int(_parse_kv_line(lines[7], "gates"))
        at = 8
        gates = []
        for _ in range(n_gates):
            parts = lines[at].split()
            if parts[0] != "gate":
                raise MappedFormatError(f"expected gate line, got {lines[at]!r}")
            kind = GateKind(parts[1])
            nq = kind.arity
            qubits = tuple(int(x) for x in parts[2 : 2 + nq])
            angle = float(parts[2 + nq]) if len(parts) > 2 + nq else None
            gates.append(Gate(kind, qubits, angle=angle))
            at += 1
        circuit = Circuit(n_qubits, tuple(gates), name=name)
        initial = Placement(
            tuple(int(x) for x in _parse_kv_line(lines[at], "initial").split()), arch.n_qubits
        )
        at += 1
        n_ops = int(_parse_kv_line(lines[at], "ops"))
        at += 1
        ops = []
        for _ in range(n_ops):
            head, *rest = lines[at].split()
            t = int(head.removeprefix("t="))
            kind = rest[0]
            fields_ = dict(kv.split("=", 1) for kv in rest[1:])
            p = int(fields_["p"])
            q = int(fields_.get("q", -1))
            if kind == OP_GATE:
                gid = int(fields_["id"])
                dur = _duration(OP_GATE, circuit.gates[gid].is_two_qubit, cost)
                ops.append(TimedOp(t=t, kind=kind, dur=dur, p=p, q=q, gate_id=gid))
            elif kind == OP_SWAP:
                ops.append(TimedOp(t=t, kind=kind, dur=cost.dur_swap, p=p, q=q))
            elif kind in (OP_TELEPORT, OP_EXCHANGE):
                ops.append(
                    TimedOp(
                        t=t, kind=kind, dur=cost.dur_teleport, p=p, q=q,
                        core_p=int(fields_["pc"]), core_q=int(fields_["qc"]),
                    )
                )
            else:
                raise MappedFormatError(f"unknown op kind {kind!r}")
            at += 1
        final = Placement(
            tuple(int(x) for x in _parse_kv_line(lines[at], "final").split()), arch.n_qubits
        )
        at += 1
        depth = int(_parse_kv_line(lines[at], "depth"))
    except MappedFormatError:
        raise
    except (IndexError, KeyError, ValueError) as e:
        raise MappedFormatError(f"malformed mapped-circuit file: {e}") from None
    if digest != config.digest():
        raise MappedFormatError("config digest mismatch")
    return MappedCircuit(
        arch=arch, circuit=circuit, config=config,
        initial=initial, ops=tuple(ops), final=final, depth=depth,
    )


def mapped_from_ops(
    arch: Architecture,
    circuit: Circuit,
    config: MapperConfig,
    initial: Placement,
    raw_ops: list[tuple],
) -> MappedCircuit:
    """Build a MappedCircuit from (kind, p, q, gate_id) tuples, scheduling ASAP.

    Used to materialize externally produced op sequences (e.g. the
    exhaustive-search oracle) so they can run through verify_mapped.
    """
    busy = [0] * arch.n_qubits
    p2v = initial.p2v()
    ops = []
    for kind, p, q, gate_id in raw_ops:
        two = q >= 0
        dur = _duration(kind, two, config.cost)
        t = busy[p] if q < 0 else max(busy[p], busy[q])
        cp = cq = -1
        if kind in (OP_TELEPORT, OP_EXCHANGE):
            cp, cq = p // arch.qubits_per_core, q // arch.qubits_per_core
        ops.append(TimedOp(t=t, kind=kind, dur=dur, p=p, q=q, gate_id=gate_id, core_p=cp, core_q=cq))
        busy[p] = t + dur
        if q >= 0:
            busy[q] = t + dur
        if kind == OP_SWAP or kind == OP_EXCHANGE:
            p2v[p], p2v[q] = p2v[q], p2v[p]
        elif kind == OP_TELEPORT:
            p2v[q], p2v[p] = p2v[p], -1
    v2p = [-1] * circuit.n_qubits
    for p, v in enumerate(p2v):
        if v >= 0:
            v2p[v] = p
    return MappedCircuit(
        arch=arch, circuit=circuit, config=config, initial=initial,
        ops=tuple(ops), final=Placement(tuple(v2p), arch.n_qubits),
        depth=max((op.t + op.dur for op in ops), default=0),
    )
