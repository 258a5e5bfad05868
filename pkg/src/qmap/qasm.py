"""Parser and serializer for the supported circuit grammar.

The grammar is a strict subset of OpenQASM 2 surface syntax: statements end
with ';', comments run from '//' to end of line, whitespace is free-form,
and exactly one quantum register may be declared.

    OPENQASM 2.0;              // optional, ignored (so is: include "...";)
    qreg q[4];
    h q[0];  x q[1];           // single-qubit gates
    cx q[0],q[1];  swap q[2],q[3];
    cp(1.5707963267948966) q[1],q[0];
    measure q[3];
"""

import re

from .circuit import Circuit, Gate, GateKind
from .errors import QasmSyntaxError

_NAMED_GATES = {
    "h": GateKind.HADAMARD,
    "x": GateKind.SINGLE,
    "cx": GateKind.CNOT,
    "swap": GateKind.SWAP,
    "measure": GateKind.MEASURE,
}

_QREG_RE = re.compile(r"^qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_CP_RE = re.compile(r"^cp\s*\(([^()]*)\)\s*(.*)$")
_GATE_RE = re.compile(r"^([A-Za-z_]\w*)\s+(.*)$")
_OPERAND_RE = re.compile(r"^([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")


def _statements(text: str) -> list[tuple[str, int, int]]:
    """Split into ';'-terminated statements, tracking each statement's start."""
    stmts: list[tuple[str, int, int]] = []
    buf: list[str] = []
    start: tuple[int, int] | None = None
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue
        if ch == ";":
            stmt = "".join(buf).strip()
            if stmt:
                stmts.append((stmt, start[0], start[1]))
            buf, start = [], None
        elif ch == "\n":
            buf.append(" ")
            line += 1
            col = 0
        else:
            if start is None and not ch.isspace():
                start = (line, col)
            buf.append(ch)
        i += 1
        col += 1
    if "".join(buf).strip():
        raise QasmSyntaxError("statement missing terminating ';'", start[0], start[1])
    return stmts


def parse_circuit(text: str, name: str = "") -> Circuit:
    """Parse circuit source into a :class:`Circuit`; gates keep source order."""
    reg: str | None = None
    n_qubits = 0
    gates: list[Gate] = []
    measuring = False

    for stmt, line, col in _statements(text):

        def err(msg: str) -> QasmSyntaxError:
            return QasmSyntaxError(msg, line, col)

        head = stmt.split(None, 1)[0]
        if head == "OPENQASM" or head == "include":
            continue

        m = _QREG_RE.match(stmt)
        if m:
            if reg is not None:
                raise err("only one qreg is supported")
            reg, n_qubits = m.group(1), int(m.group(2))
            if n_qubits < 1:
                raise err("qreg size must be >= 1")
            continue

        m = _CP_RE.match(stmt)
        if m:
            kind, rest = GateKind.CPHASE, m.group(2)
            try:
                angle = float(m.group(1))
            except ValueError:
                raise err(f"bad cp angle {m.group(1).strip()!r}") from None
        else:
            m = _GATE_RE.match(stmt)
            if not m:
                raise err(f"cannot parse statement {stmt!r}")
            if m.group(1) not in _NAMED_GATES:
                raise err(f"unknown gate {m.group(1)!r}")
            kind, rest, angle = _NAMED_GATES[m.group(1)], m.group(2), None

        if reg is None:
            raise err("gate before qreg declaration")
        operands = []
        for tok in rest.split(","):
            om = _OPERAND_RE.match(tok.strip())
            if not om:
                raise err(f"bad operand {tok.strip()!r}")
            if om.group(1) != reg:
                raise err(f"unknown register {om.group(1)!r}")
            idx = int(om.group(2))
            if idx >= n_qubits:
                raise err(f"operand {reg}[{idx}] out of range for {reg}[{n_qubits}]")
            operands.append(idx)
        if len(operands) != kind.arity:
            raise err(f"{kind.value} takes {kind.arity} operand(s), got {len(operands)}")
        if len(set(operands)) != len(operands):
            raise err(f"duplicate operands on {kind.value}")
        if kind is GateKind.MEASURE:
            measuring = True
        elif measuring:
            raise err("gates may not follow measure")
        gates.append(Gate(kind, tuple(operands), angle=angle))

    if reg is None:
        raise QasmSyntaxError("missing qreg declaration", 1, 1)
    return Circuit(n_qubits, tuple(gates), name=name)


def serialize_circuit(circuit: Circuit) -> str:
    """Emit circuit source that :func:`parse_circuit` round-trips exactly."""
    lines = ["OPENQASM 2.0;", f"qreg q[{circuit.n_qubits}];"]
    for g in circuit.gates:
        ops = ",".join(f"q[{q}]" for q in g.qubits)
        if g.kind is GateKind.CPHASE:
            lines.append(f"cp({g.angle!r}) {ops};")
        else:
            lines.append(f"{g.kind.value} {ops};")
    return "\n".join(lines) + "\n"
