"""Gate/circuit IR for the {CCX, H} language and its line-oriented file format.

File format::

    # comment
    qubits 4
    h 0
    cx 0 2
    ccx 0 1 3
    x 1

``ccx`` controls may also be written ``#t`` / ``#f`` so that every IR gate has a
textual form (``format_circuit`` relies on this for round-tripping).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "Wire",
    "Const",
    "ControlSpec",
    "CCX",
    "H",
    "Gate",
    "Circuit",
    "BasisState",
    "CircuitError",
    "CircuitSyntaxError",
    "CircuitValidationError",
    "mk_x",
    "mk_cx",
    "validate",
    "parse_circuit",
    "format_circuit",
    "h_count",
    "parse_bits",
    "bits_str",
    "zero_state",
]


class CircuitError(ValueError):
    pass


class CircuitSyntaxError(CircuitError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class CircuitValidationError(CircuitError):
    pass


@dataclass(frozen=True)
class Wire:
    index: int

    def __str__(self):
        return str(self.index)


@dataclass(frozen=True)
class Const:
    value: bool

    def __str__(self):
        return "#t" if self.value else "#f"


ControlSpec = Union[Wire, Const]

TRUE = Const(True)


@dataclass(frozen=True)
class CCX:
    ctrl1: ControlSpec
    ctrl2: ControlSpec
    targ: int

    def wires(self) -> list[int]:
        ws = [c.index for c in (self.ctrl1, self.ctrl2) if isinstance(c, Wire)]
        ws.append(self.targ)
        return ws

    def __str__(self):
        return f"CCX({self.ctrl1},{self.ctrl2},{self.targ})"


@dataclass(frozen=True)
class H:
    targ: int

    def wires(self) -> list[int]:
        return [self.targ]

    def __str__(self):
        return f"H({self.targ})"


Gate = Union[CCX, H]

# index 0 is the top wire, printed leftmost
BasisState = tuple[int, ...]


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def mk_x(targ: int) -> CCX:
    return CCX(TRUE, TRUE, targ)


def mk_cx(ctrl: int, targ: int) -> CCX:
    return CCX(TRUE, Wire(ctrl), targ)


def _check_gate(g: Gate, n: int) -> None:
    if isinstance(g, CCX):
        for c in (g.ctrl1, g.ctrl2):
            if not isinstance(c, (Wire, Const)):
                raise CircuitValidationError(f"{g}: control must be a Wire or Const, got {c!r}")
    elif not isinstance(g, H):
        raise CircuitValidationError(f"unknown gate {g!r}")
    if isinstance(g.targ, bool) or not isinstance(g.targ, int):
        raise CircuitValidationError(f"{g}: target must be a wire index")
    ws = g.wires()
    for w in ws:
        if not 0 <= w < n:
            raise CircuitValidationError(f"{g}: wire {w} out of range for {n} qubits")
    if len(set(ws)) != len(ws):
        raise CircuitValidationError(f"{g}: duplicate wire")


def validate(circ: Circuit) -> Circuit:
    """Return ``circ`` unchanged or raise :class:`CircuitValidationError`."""
    if isinstance(circ.qubit_count, bool) or not isinstance(circ.qubit_count, int) or circ.qubit_count < 1:
        raise CircuitValidationError(f"qubit count must be a positive integer, got {circ.qubit_count!r}")
    for g in circ.gates:
        _check_gate(g, circ.qubit_count)
    return circ


def h_count(circ: Circuit | Iterable[Gate]) -> int:
    return sum(1 for g in circ if isinstance(g, H))


_ARITY = {"h": 1, "x": 1, "cx": 2, "ccx": 3}


def _index(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise CircuitSyntaxError(f"expected a wire index, got {tok!r}", lineno)
    return int(tok)


def _control(tok: str, lineno: int) -> ControlSpec:
    if tok == "#t":
        return Const(True)
    if tok == "#f":
        return Const(False)
    return Wire(_index(tok, lineno))


def parse_circuit(text: str) -> Circuit:
    n = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = []
        for tok in raw.split():
            if tok.startswith("#") and tok not in ("#t", "#f"):
                break
            toks.append(tok)
        if not toks:
            continue
        op, args = toks[0].lower(), toks[1:]
        if n is None:
            if op != "qubits":
                raise CircuitSyntaxError("missing 'qubits <n>' header", lineno)
            if len(args) != 1:
                raise CircuitSyntaxError("'qubits' takes exactly one argument", lineno)
            n = _index(args[0], lineno)
            if n < 1:
                raise CircuitSyntaxError("qubit count must be positive", lineno)
            continue
        if op == "qubits":
            raise CircuitSyntaxError("duplicate 'qubits' header", lineno)
        if op not in _ARITY:
            raise CircuitSyntaxError(f"unknown gate {toks[0]!r}", lineno)
        if len(args) != _ARITY[op]:
            raise CircuitSyntaxError(f"'{op}' takes {_ARITY[op]} argument(s), got {len(args)}", lineno)
        if op == "h":
            g: Gate = H(_index(args[0], lineno))
        elif op == "x":
            g = mk_x(_index(args[0], lineno))
        elif op == "cx":
            g = mk_cx(_index(args[0], lineno), _index(args[1], lineno))
        else:
            g = CCX(_control(args[0], lineno), _control(args[1], lineno), _index(args[2], lineno))
        try:
            _check_gate(g, n)
        except CircuitValidationError as e:
            raise CircuitValidationError(f"line {lineno}: {e}") from None
        gates.append(g)
    if n is None:
        raise CircuitSyntaxError("missing 'qubits <n>' header")
    return Circuit(n, tuple(gates))


def _format_gate(g: Gate) -> str:
    if isinstance(g, H):
        return f"h {g.targ}"
    if g.ctrl1 == TRUE and g.ctrl2 == TRUE:
        return f"x {g.targ}"
    if g.ctrl1 == TRUE and isinstance(g.ctrl2, Wire):
        return f"cx {g.ctrl2.index} {g.targ}"
    return f"ccx {g.ctrl1} {g.ctrl2} {g.targ}"


def format_circuit(circ: Circuit) -> str:
    lines = [f"qubits {circ.qubit_count}"]
    lines.extend(_format_gate(g) for g in circ.gates)
    return "\n".join(lines) + "\n"


def parse_bits(s: str) -> BasisState:
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"invalid bitstring {s!r}")
    return tuple(int(ch) for ch in s)


def bits_str(bs: BasisState) -> str:
    return "".join("1" if b else "0" for b in bs)


def zero_state(n: int) -> BasisState:
    return (0,) * n
