"""Reference dense state-vector simulator used to cross-check the tree evaluator."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import CCX, BasisState, Circuit, Const, Gate, Wire

MAX_DENSE_QUBITS = 26

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class DenseTooLarge(RuntimeError):
    pass


@dataclass
class StateVector:
    n: int
    entries: np.ndarray  # length 2**n, qubit 0 is the most significant index bit

    def amplitude(self, state: BasisState) -> float:
        return float(self.entries[basis_index(state)])

    def nonzero(self, atol: float = 1e-12) -> dict[BasisState, float]:
        out = {}
        for i in np.flatnonzero(np.abs(self.entries) > atol):
            out[index_state(int(i), self.n)] = float(self.entries[i])
        return out


def basis_index(state: BasisState) -> int:
    i = 0
    for b in state:
        i = (i << 1) | int(b)
    return i


def index_state(i: int, n: int) -> BasisState:
    return tuple((i >> (n - 1 - q)) & 1 for q in range(n))


def basis_vector(state: BasisState) -> StateVector:
    n = len(state)
    if n > MAX_DENSE_QUBITS:
        raise DenseTooLarge(f"dense oracle supports at most {MAX_DENSE_QUBITS} qubits, got {n}")
    v = np.zeros(1 << n)
    v[basis_index(state)] = 1.0
    return StateVector(n, v)


def _axis_view(sv: StateVector) -> np.ndarray:
    # axis q of the reshaped tensor is qubit q
    return sv.entries.reshape((2,) * sv.n)


def dense_apply(sv: StateVector, g: Gate) -> StateVector:
    n = sv.n
    t = _axis_view(sv).copy()
    if isinstance(g, CCX):
        sel: list = [slice(None)] * n
        for c in (g.ctrl1, g.ctrl2):
            if isinstance(c, Const):
                if not c.value:
                    return StateVector(n, t.reshape(-1))
            else:
                sel[c.index] = 1
        lo, hi = list(sel), list(sel)
        lo[g.targ], hi[g.targ] = 0, 1
        a = t[tuple(lo)].copy()
        t[tuple(lo)] = t[tuple(hi)]
        t[tuple(hi)] = a
    else:
        lo: list = [slice(None)] * n
        hi: list = [slice(None)] * n
        lo[g.targ], hi[g.targ] = 0, 1
        a, b = t[tuple(lo)].copy(), t[tuple(hi)].copy()
        t[tuple(lo)] = (a + b) * _INV_SQRT2
        t[tuple(hi)] = (a - b) * _INV_SQRT2
    return StateVector(n, t.reshape(-1))


def dense_run(circ: Circuit, init: BasisState) -> StateVector:
    if len(init) != circ.qubit_count:
        raise ValueError(f"initial state has {len(init)} qubits, circuit expects {circ.qubit_count}")
    sv = basis_vector(init)
    for g in circ.gates:
        sv = dense_apply(sv, g)
    return sv
