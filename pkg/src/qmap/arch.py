"""Modular machine model: cores, intra-core coupling, inter-core links.

Physical qubit p lives in core p // qubits_per_core, at local slot
p % qubits_per_core. Two-qubit gates are executable only on coupled slots
of the same core; inter-core links carry state transfers only.
"""

import re
from collections import deque
from dataclasses import dataclass, fields

from .errors import ArchError

INTRA_TOPOLOGIES = ("alltoall", "line", "grid")
INTER_TOPOLOGIES = ("alltoall", "line", "ring", "grid")

_ALIASES = {
    "alltoall": "alltoall",
    "all-to-all": "alltoall",
    "all2all": "alltoall",
    "a2a": "alltoall",
    "line": "line",
    "ring": "ring",
    "grid": "grid",
    "2d-grid": "grid",
    "2dgrid": "grid",
}


@dataclass(frozen=True)
class CostModel:
    """Operation durations (timesteps) and vertical-bandwidth constants.

    swap_primitive_count is the number of gates a SWAP contributes to load
    metrics (its standard 3-gate decomposition) without being emitted.
    readout_rate is bits/s per actively measured qubit; control traffic is
    control_bits_per_gate bits per op start.
    """

    dur_1q: int = 1
    dur_2q: int = 1
    dur_swap: int = 1
    dur_teleport: int = 1
    swap_primitive_count: int = 3
    readout_rate: float = 1e6
    control_bits_per_gate: float = 1e3

    def __post_init__(self):
        for name in ("dur_1q", "dur_2q", "dur_swap", "dur_teleport"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {v!r}")
        if not isinstance(self.swap_primitive_count, int) or self.swap_primitive_count < 1:
            raise ValueError("swap_primitive_count must be an integer >= 1")
        if self.readout_rate <= 0 or self.control_bits_per_gate <= 0:
            raise ValueError("rates must be > 0")


def _grid_dims(n: int) -> tuple[int, int]:
    """Factor n as r*c with r <= c and r maximal; primes above 3 are rejected."""
    r = next(d for d in range(int(n**0.5), 0, -1) if n % d == 0)
    if r == 1 and n > 3:
        raise ArchError(f"cannot lay out {n} nodes as a grid (prime > 3)")
    return r, n // r


def _topology_adj(kind: str, n: int) -> list[list[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]

    def link(a: int, b: int):
        adj[a].add(b)
        adj[b].add(a)

    if kind == "alltoall":
        for a in range(n):
            for b in range(a + 1, n):
                link(a, b)
    elif kind in ("line", "ring"):
        for a in range(n - 1):
            link(a, a + 1)
        if kind == "ring" and n > 2:
            link(n - 1, 0)
    elif kind == "grid":
        rows, cols = _grid_dims(n)
        for r in range(rows):
            for c in range(cols):
                i = r * cols + c
                if c + 1 < cols:
                    link(i, i + 1)
                if r + 1 < rows:
                    link(i, i + cols)
    else:
        raise ArchError(f"unknown topology {kind!r}")
    return [sorted(s) for s in adj]


def _all_pairs_hops(adj: list[list[int]]) -> list[list[int]]:
    n = len(adj)
    table = []
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    dq.append(v)
        if any(d < 0 for d in dist):
            raise ArchError("disconnected topology")
        table.append(dist)
    return table


class Architecture:
    """n_cores uniform cores of qubits_per_core slots each; immutable."""

    def __init__(self, n_cores: int, qubits_per_core: int, intra: str, inter: str, name: str = ""):
        if n_cores < 1 or qubits_per_core < 1:
            raise ArchError("n_cores and qubits_per_core must be >= 1")
        try:
            intra = _ALIASES[intra.lower()]
            inter = _ALIASES[inter.lower()]
        except KeyError as e:
            raise ArchError(f"unknown topology {e.args[0]!r}") from None
        if intra not in INTRA_TOPOLOGIES:
            raise ArchError(f"intra topology must be one of {INTRA_TOPOLOGIES}, got {intra!r}")
        if inter not in INTER_TOPOLOGIES:
            raise ArchError(f"inter topology must be one of {INTER_TOPOLOGIES}, got {inter!r}")
        self.n_cores = n_cores
        self.qubits_per_core = qubits_per_core
        self.intra = intra
        self.inter = inter
        self._intra_adj = _topology_adj(intra, qubits_per_core)
        self._intra_dist = _all_pairs_hops(self._intra_adj)
        self._inter_adj = _topology_adj(inter, n_cores)
        self._inter_dist = _all_pairs_hops(self._inter_adj)
        self.name = name or self.shorthand()

    @property
    def n_qubits(self) -> int:
        return self.n_cores * self.qubits_per_core

    def shorthand(self) -> str:
        return f"{self.n_cores}x{self.qubits_per_core}:{self.intra}/{self.inter}"

    def __repr__(self) -> str:
        return f"Architecture({self.shorthand()!r})"

    def _check_phys(self, p: int):
        if not 0 <= p < self.n_qubits:
            raise ArchError(f"physical qubit {p} out of range [0,{self.n_qubits})")

    def core_of(self, p: int) -> int:
        self._check_phys(p)
        return p // self.qubits_per_core

    def slot_of(self, p: int) -> int:
        self._check_phys(p)
        return p % self.qubits_per_core

    def core_slots(self, core: int) -> range:
        if not 0 <= core < self.n_cores:
            raise ArchError(f"core {core} out of range [0,{self.n_cores})")
        base = core * self.qubits_per_core
        return range(base, base + self.qubits_per_core)

    def are_adjacent(self, p: int, q: int) -> bool:
        """True iff p and q are coupled slots of the same core."""
        self._check_phys(p)
        self._check_phys(q)
        if p == q or p // self.qubits_per_core != q // self.qubits_per_core:
            return False
        return self._intra_dist[p % self.qubits_per_core][q % self.qubits_per_core] == 1

    def intra_neighbors(self, p: int) -> list[int]:
        """Coupled same-core slots of p, as global indices, ascending."""
        self._check_phys(p)
        base = (p // self.qubits_per_core) * self.qubits_per_core
        return [base + s for s in self._intra_adj[p % self.qubits_per_core]]

    def intra_distance(self, p: int, q: int) -> int:
        self._check_phys(p)
        self._check_phys(q)
        if p // self.qubits_per_core != q // self.qubits_per_core:
            raise ArchError(f"intra_distance({p},{q}): qubits are in different cores")
        return self._intra_dist[p % self.qubits_per_core][q % self.qubits_per_core]

    def core_distance(self, c1: int, c2: int) -> int:
        if not (0 <= c1 < self.n_cores and 0 <= c2 < self.n_cores):
            raise ArchError(f"core index out of range [0,{self.n_cores})")
        return self._inter_dist[c1][c2]


def build_arch(n_cores: int, qubits_per_core: int, intra: str, inter: str, name: str = "") -> Architecture:
    """Validated Architecture; see class docs for index conventions."""
    return Architecture(n_cores, qubits_per_core, intra, inter, name=name)


_SHORTHAND_RE = re.compile(r"^(\d+)x(\d+):([A-Za-z0-9-]+)/([A-Za-z0-9-]+)$")


def parse_arch_shorthand(spec: str) -> Architecture:
    """Parse the CLI shorthand, e.g. '8x8:alltoall/alltoall'."""
    m = _SHORTHAND_RE.match(spec.strip())
    if not m:
        raise ArchError(f"bad architecture shorthand {spec!r} (expected CxQ:intra/inter)")
    return build_arch(int(m.group(1)), int(m.group(2)), m.group(3), m.group(4))


_INT_KEYS = {"n_cores", "qubits_per_core", "dur_1q", "dur_2q", "dur_swap", "dur_teleport", "swap_primitive_count"}
_FLOAT_KEYS = {"readout_rate", "control_bits_per_gate"}
_COST_KEYS = {f.name for f in fields(CostModel)}


def parse_arch_file(text: str) -> tuple[Architecture, CostModel]:
    """Key/value architecture description, with optional CostModel overrides.

    Required keys: n_cores, qubits_per_core, intra, inter. Optional: name
    plus any CostModel field. '#' starts a comment; blank lines ignored.
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ArchError(f"line {lineno}: expected key = value, got {raw.strip()!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key in values:
            raise ArchError(f"line {lineno}: duplicate key {key!r}")
        values[key] = val

    for req in ("n_cores", "qubits_per_core", "intra", "inter"):
        if req not in values:
            raise ArchError(f"missing required key {req!r}")

    def convert(key: str, val: str):
        try:
            if key in _INT_KEYS:
                return int(val)
            if key in _FLOAT_KEYS:
                return float(val)
        except ValueError:
            raise ArchError(f"bad value for {key}: {val!r}") from None
        return val

    cost_kwargs = {}
    arch_kwargs = {}
    for key, val in values.items():
        if key in _COST_KEYS:
            cost_kwargs[key] = convert(key, val)
        elif key in ("n_cores", "qubits_per_core", "intra", "inter", "name"):
            arch_kwargs[key] = convert(key, val)
        else:
            raise ArchError(f"unknown key {key!r}")
    try:
        cost = CostModel(**cost_kwargs)
    except ValueError as e:
        raise ArchError(str(e)) from None
    return build_arch(**arch_kwargs), cost
