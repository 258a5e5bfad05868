"""Exhaustive minimal-routing search for small instances.

Breadth-first search over (placement, gates-done) states. Transitions are
one swap of coupled same-core slots or one teleport of a state into a free
cross-core slot; gates whose dependencies are met execute for free whenever
their operands are coupled (executing never hurts, so every reached state
is closed under gate execution). The BFS layer of the first fully-executed
state is the minimum number of routing operations.
"""

from collections import deque
from dataclasses import dataclass

from .arch import Architecture
from .circuit import Circuit, build_dag
from .errors import OracleGuardError, RoutingDeadlockError
from .mapper import OP_GATE, OP_SWAP, OP_TELEPORT, Placement

ORACLE_MAX_PHYS = 8
ORACLE_MAX_GATES = 6


@dataclass(frozen=True)
class OracleResult:
    """Minimum routing-op count and one optimal op sequence realizing it.

    `ops` holds (kind, p, q, gate_id) tuples: gate executions interleaved
    with the optimal swaps/teleports, ready for mapped_from_ops.
    """

    min_routing_ops: int
    ops: tuple[tuple, ...]


def oracle_min_route(circuit: Circuit, arch: Architecture, placement: Placement) -> OracleResult:
    if arch.n_qubits > ORACLE_MAX_PHYS:
        raise OracleGuardError(
            f"{arch.n_qubits} physical qubits exceed the oracle guard of {ORACLE_MAX_PHYS}"
        )
    if len(circuit.gates) > ORACLE_MAX_GATES:
        raise OracleGuardError(
            f"{len(circuit.gates)} gates exceed the oracle guard of {ORACLE_MAX_GATES}"
        )
    if len(placement.v2p) != circuit.n_qubits or placement.n_phys != arch.n_qubits:
        raise ValueError("placement does not match circuit/architecture")

    dag = build_dag(circuit)
    n_gates = len(circuit.gates)
    all_done = (1 << n_gates) - 1
    qpc = arch.qubits_per_core
    adj_pairs = [
        (p, q)
        for p in range(arch.n_qubits)
        for q in range(p + 1, arch.n_qubits)
        if arch.are_adjacent(p, q)
    ]

    def closure(v2p: tuple[int, ...], done: int) -> tuple[int, tuple[tuple, ...]]:
        gate_ops = []
        progress = True
        while progress:
            progress = False
            for gid, g in enumerate(circuit.gates):
                if done >> gid & 1 or any(not done >> h & 1 for h in dag.preds[gid]):
                    continue
                if g.is_two_qubit:
                    pu, pv = v2p[g.qubits[0]], v2p[g.qubits[1]]
                    if not arch.are_adjacent(pu, pv):
                        continue
                    gate_ops.append((OP_GATE, pu, pv, gid))
                else:
                    gate_ops.append((OP_GATE, v2p[g.qubits[0]], -1, gid))
                done |= 1 << gid
                progress = True
        return done, tuple(gate_ops)

    start_v2p = tuple(placement.v2p)
    done0, gates0 = closure(start_v2p, 0)
    start = (start_v2p, done0)
    if done0 == all_done:
        return OracleResult(0, gates0)

    dist = {start: 0}
    parent: dict = {start: (None, None, gates0)}
    queue = deque([start])

    def reconstruct(goal) -> tuple[tuple, ...]:
        chunks = []
        cur = goal
        while cur is not None:
            prev, move, gate_ops = parent[cur]
            chunks.append(list(gate_ops))
            if move is not None:
                chunks.append([move])
            cur = prev
        return tuple(op for chunk in reversed(chunks) for op in chunk)

    while queue:
        state = queue.popleft()
        v2p, done = state
        d = dist[state]
        occupied = frozenset(v2p)
        moves = [(OP_SWAP, p, q, -1) for p, q in adj_pairs if p in occupied or q in occupied]
        free = sorted(set(range(arch.n_qubits)) - occupied)
        for p in sorted(occupied):
            moves.extend(
                (OP_TELEPORT, p, f, -1) for f in free if p // qpc != f // qpc
            )
        for move in moves:
            kind, p, q, _ = move
            if kind == OP_SWAP:
                nxt = tuple(q if x == p else p if x == q else x for x in v2p)
            else:
                nxt = tuple(q if x == p else x for x in v2p)
            ndone, gate_ops = closure(nxt, done)
            ns = (nxt, ndone)
            if ns in dist:
                continue
            dist[ns] = d + 1
            parent[ns] = (state, move, gate_ops)
            if ndone == all_done:
                return OracleResult(d + 1, reconstruct(ns))
            queue.append(ns)
    raise RoutingDeadlockError("no swap/teleport sequence can execute this circuit")
