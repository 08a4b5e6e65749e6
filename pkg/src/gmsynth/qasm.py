"""Text formats: an OpenQASM 2.0 subset for input, JSON for compiled output."""

from __future__ import annotations

import bisect
import json
import math
import re
from dataclasses import dataclass

from .ir import (
    ALL_KINDS,
    ANGLED_KINDS,
    INPUT_KINDS,
    Circuit,
    Gate,
    reduce_angle,
)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int


class ParseError(ValueError):
    """A syntax error, unsupported gate or bad qubit index in an input file."""

    def __init__(self, message: str, span: SourceSpan = SourceSpan(1, 1), kind: str = "syntax"):
        super().__init__(message)
        self.message = message
        self.span = span
        self.kind = kind

    def __str__(self):
        return f"{self.span.line}:{self.span.column}: {self.message}"


# ----------------------------------------------------------------------------
# QASM input


_GATE_ARITY = {"h": 1, "s": 1, "sdg": 1, "x": 1, "y": 1, "z": 1, "rz": 1, "t": 1, "tdg": 1, "cx": 2, "cz": 2}
_ALIASES = {"t": ("rz", math.pi / 4), "tdg": ("rz", -math.pi / 4)}

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|\d+(?:[eE][-+]?\d+)?)|(pi)|([-+*/()]))")
_QUBIT = re.compile(r"\s*([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]\s*$")
_STMT = re.compile(r"([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*(.*)$", re.S)


class _Locator:
    def __init__(self, text: str):
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def span(self, offset: int) -> SourceSpan:
        line = bisect.bisect_right(self.starts, offset) - 1
        return SourceSpan(line + 1, offset - self.starts[line] + 1)


def _eval_expr(src: str, where: SourceSpan) -> float:
    tokens = []
    pos = 0
    src = src.strip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"malformed expression near {src[pos:]!r}", where)
        num, pi, op = m.groups()
        tokens.append(("num", float(num)) if num else ("num", math.pi) if pi else ("op", op))
        pos = m.end()
        while pos < len(src) and src[pos].isspace():
            pos += 1
    if not tokens:
        raise ParseError("empty expression", where)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def expr():
        nonlocal i
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = tokens[i][1]
            i += 1
            v = v + term() if op == "+" else v - term()
        return v

    def term():
        nonlocal i
        v = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = tokens[i][1]
            i += 1
            rhs = unary()
            if op == "/" and rhs == 0:
                raise ParseError("division by zero", where)
            v = v * rhs if op == "*" else v / rhs
        return v

    def unary():
        nonlocal i
        kind, val = peek()
        if (kind, val) == ("op", "-"):
            i += 1
            return -unary()
        if kind == "num":
            i += 1
            return val
        if (kind, val) == ("op", "("):
            i += 1
            v = expr()
            if peek() != ("op", ")"):
                raise ParseError("missing ')' in expression", where)
            i += 1
            return v
        raise ParseError(f"unexpected token {val!r} in expression", where)

    v = expr()
    if i != len(tokens):
        raise ParseError(f"unexpected token {tokens[i][1]!r} in expression", where)
    return v


def _statements(text: str):
    """Yield (offset, statement text) with comments removed."""
    clean = re.sub(r"//[^\n]*", lambda m: " " * len(m.group()), text)
    start = 0
    for m in re.finditer(";", clean):
        chunk = clean[start:m.start()]
        stripped = chunk.lstrip()
        if stripped:
            yield start + len(chunk) - len(stripped), stripped.rstrip()
        start = m.end()
    tail = clean[start:].strip()
    if tail:
        off = start + len(clean[start:]) - len(clean[start:].lstrip())
        yield off, tail + "\0"  # marks a missing semicolon


def parse(text: str) -> Circuit:
    """Parse the supported OpenQASM 2.0 subset into a Circuit."""
    loc = _Locator(text)
    reg_name = None
    n = 0
    gates: list[Gate] = []
    for off, stmt in _statements(text):
        where = loc.span(off)
        if stmt.endswith("\0"):
            raise ParseError(f"missing ';' after {stmt[:-1]!r}", where)
        head = stmt.split(None, 1)[0]
        if head == "OPENQASM":
            if stmt.split()[1:] != ["2.0"]:
                raise ParseError(f"unsupported version in {stmt!r}", where)
            continue
        if head == "include":
            continue
        if head in ("qreg", "creg"):
            m = re.fullmatch(r"(qreg|creg)\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]", stmt)
            if not m:
                raise ParseError(f"malformed register declaration {stmt!r}", where)
            if head == "creg":
                raise ParseError("classical registers are not supported", where)
            if reg_name is not None:
                raise ParseError("only one qreg is supported", where)
            reg_name, n = m.group(2), int(m.group(3))
            if n < 1:
                raise ParseError("qreg must have at least one qubit", where)
            continue
        m = _STMT.match(stmt)
        if not m:
            raise ParseError(f"cannot parse statement {stmt!r}", where)
        name, params, args = m.groups()
        if name not in _GATE_ARITY:
            raise ParseError(f"unsupported gate {name!r}", where, "unsupported_gate")
        if reg_name is None:
            raise ParseError("gate used before qreg declaration", where)
        qubits = []
        for arg in args.split(","):
            qm = _QUBIT.match(arg)
            if not qm:
                raise ParseError(f"malformed qubit argument {arg.strip()!r}", where)
            if qm.group(1) != reg_name:
                raise ParseError(f"unknown register {qm.group(1)!r}", where, "bad_qubit_index")
            q = int(qm.group(2))
            if q >= n:
                raise ParseError(f"qubit index {q} out of range for {reg_name}[{n}]", where, "bad_qubit_index")
            qubits.append(q)
        if len(qubits) != _GATE_ARITY[name]:
            raise ParseError(f"{name} takes {_GATE_ARITY[name]} qubit(s), got {len(qubits)}", where)
        if len(set(qubits)) != len(qubits):
            raise ParseError(f"repeated qubit in {name}", where, "bad_qubit_index")
        kind, angle = _ALIASES.get(name, (name, None))
        if name == "rz":
            if params is None:
                raise ParseError("rz needs an angle", where)
            angle = _eval_expr(params, where)
        elif params is not None:
            raise ParseError(f"{name} takes no parameters", where)
        if kind == "cz":
            qubits.sort()
        gates.append(Gate(kind, tuple(qubits), None if angle is None else reduce_angle(angle)))
    if reg_name is None:
        raise ParseError("no qreg declaration found", loc.span(len(text)))
    return Circuit(n, gates)


def to_qasm(c: Circuit) -> str:
    """Print a circuit over the input gate set as OpenQASM 2.0."""
    if c.output_relabeling is not None:
        raise ValueError("QASM output cannot express an output relabeling")
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.num_qubits}];"]
    for g in c.gates:
        if g.kind not in INPUT_KINDS:
            raise ValueError(f"{g.kind} has no QASM spelling; use emit_json")
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.kind == "rz":
            lines.append(f"rz({g.angle!r}) {args};")
        else:
            lines.append(f"{g.kind} {args};")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# JSON output


def _num(x: float) -> str:
    return format(x, ".17g")


def emit_json(c: Circuit) -> str:
    """Deterministic JSON text for a circuit (compact, fixed key order)."""
    parts = []
    for g in c.gates:
        item = f'{{"kind":"{g.kind}","qubits":[{",".join(map(str, g.qubits))}]'
        if g.angle is not None:
            item += f',"angle":{_num(g.angle)}'
        if g.paulis is not None:
            item += f',"paulis":"{g.paulis}"'
        parts.append(item + "}")
    relabel = "null" if c.output_relabeling is None else "[" + ",".join(map(str, c.output_relabeling)) + "]"
    return f'{{"num_qubits":{c.num_qubits},"output_relabeling":{relabel},"gates":[{",".join(parts)}]}}'


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def parse_json(text: str) -> Circuit:
    """Inverse of :func:`emit_json`; schema violations raise ParseError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, SourceSpan(e.lineno, e.colno)) from None
    if not isinstance(doc, dict) or set(doc) != {"num_qubits", "output_relabeling", "gates"}:
        raise ParseError("expected keys num_qubits, output_relabeling, gates")
    n = doc["num_qubits"]
    if not _is_int(n) or n < 1:
        raise ParseError("num_qubits must be a positive integer")
    relabel = doc["output_relabeling"]
    if relabel is not None:
        if not isinstance(relabel, list) or not all(_is_int(v) for v in relabel) or sorted(relabel) != list(range(n)):
            raise ParseError("output_relabeling must be null or a permutation of 0..n-1")
        relabel = tuple(relabel)
    if not isinstance(doc["gates"], list):
        raise ParseError("gates must be a list")
    gates = []
    for i, item in enumerate(doc["gates"]):
        if not isinstance(item, dict):
            raise ParseError(f"gate {i} is not an object")
        kind = item.get("kind")
        if kind not in ALL_KINDS:
            raise ParseError(f"gate {i}: unsupported kind {kind!r}", kind="unsupported_gate")
        allowed = {"kind", "qubits"} | ({"angle"} if kind in ANGLED_KINDS else set()) | ({"paulis"} if kind == "pexp" else set())
        if set(item) != allowed:
            raise ParseError(f"gate {i}: expected fields {sorted(allowed)}")
        qs = item["qubits"]
        if not isinstance(qs, list) or not all(_is_int(q) for q in qs):
            raise ParseError(f"gate {i}: qubits must be a list of integers")
        if any(q < 0 or q >= n for q in qs):
            raise ParseError(f"gate {i}: qubit index out of range", kind="bad_qubit_index")
        angle = item.get("angle")
        if kind in ANGLED_KINDS and (not isinstance(angle, (int, float)) or isinstance(angle, bool) or not math.isfinite(angle)):
            raise ParseError(f"gate {i}: angle must be a finite number")
        paulis = item.get("paulis")
        if kind == "pexp" and (not isinstance(paulis, str) or len(paulis) != len(qs) or set(paulis) - set("XYZ")):
            raise ParseError(f"gate {i}: paulis must be one of X/Y/Z per qubit")
        if kind not in ("cx", "pexp"):
            qs = sorted(qs)
        try:
            gates.append(Gate(kind, tuple(qs), None if angle is None else reduce_angle(float(angle)), paulis))
        except ValueError as e:
            raise ParseError(f"gate {i}: {e}") from None
    return Circuit(n, gates, relabel)


def load_circuit(text: str) -> Circuit:
    """Parse either format, picking JSON when the text starts with '{'."""
    return parse_json(text) if text.lstrip().startswith("{") else parse(text)
