"""Continuation-tree evaluator.

Each H gate splits the rest of the evaluation into two suspended branches; a
:class:`Collector` decides how leaf results are injected and how the two branch
results are combined. The "continuation" handed to :func:`eval_gate` is simply the
evaluation of the remaining gate suffix followed by the collector's ``inject``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generic, NamedTuple, Sequence, TypeVar

from .amplitudes import Amplitude, amp_add, amp_mul_hscale, amp_neg, amp_one
from .circuit import CCX, BasisState, Circuit, Const, ControlSpec, Gate, H, Wire, h_count

R = TypeVar("R")

Ket = dict[BasisState, Amplitude]

DEFAULT_MAX_H = 20


class WeightedState(NamedTuple):
    amp: Amplitude
    state: BasisState


class TreeTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class Collector(Generic[R]):
    """How leaves become results and how sibling results combine.

    ``commutative`` marks merges that are associative-commutative, so branch
    order does not affect the result.
    """

    name: str
    inject: Callable[[Amplitude, BasisState], R]
    merge: Callable[[R, R], R]
    commutative: bool = False


def _list_inject(amp: Amplitude, state: BasisState) -> list[WeightedState]:
    return [WeightedState(amp, state)]


def _list_merge(a: list[WeightedState], b: list[WeightedState]) -> list[WeightedState]:
    a.extend(b)
    return a


def merge_kets(a: Ket, b: Ket) -> Ket:
    """Union of two kets, adding amplitudes of shared states; exact zeros are dropped.

    Updates and returns ``a``.
    """
    out = a
    for s, amp in b.items():
        prev = out.get(s)
        if prev is None:
            out[s] = amp
            continue
        total = amp_add(prev, amp)
        if total.numerator:
            out[s] = total
        else:
            del out[s]
    return out


LIST = Collector("list", _list_inject, _list_merge)
HASH = Collector("hash", lambda amp, state: {state: amp}, merge_kets, commutative=True)


def is_set(bs: BasisState, ctrl: ControlSpec | int) -> bool:
    if isinstance(ctrl, Const):
        return ctrl.value
    if isinstance(ctrl, Wire):
        return bool(bs[ctrl.index])
    return bool(bs[ctrl])


def flip(bs: BasisState, i: int) -> BasisState:
    return bs[:i] + (1 - bs[i],) + bs[i + 1:]


def apply_ccx(v: WeightedState, ctrl1: ControlSpec, ctrl2: ControlSpec, targ: int) -> WeightedState:
    if is_set(v.state, ctrl1) and is_set(v.state, ctrl2):
        return WeightedState(v.amp, flip(v.state, targ))
    return v


def h_branches(v: WeightedState, targ: int) -> tuple[WeightedState, WeightedState]:
    """The two children of an H split, left branch first."""
    d = amp_mul_hscale(v.amp)
    if v.state[targ]:
        return WeightedState(d, flip(v.state, targ)), WeightedState(amp_neg(d), v.state)
    return WeightedState(d, v.state), WeightedState(d, flip(v.state, targ))


def eval_gate(v: WeightedState, g: Gate, c: Collector[R], k: Callable[[WeightedState], R]) -> R:
    if isinstance(g, CCX):
        return k(apply_ccx(v, g.ctrl1, g.ctrl2, g.targ))
    left, right = h_branches(v, g.targ)
    a = k(left)
    b = k(right)
    return c.merge(a, b)


def _eval_suffix(v: WeightedState, gates: Sequence[Gate], i: int, c: Collector[R]) -> R:
    # CCX runs inline; only H gates capture the rest of the suffix
    n = len(gates)
    while i < n:
        g = gates[i]
        if isinstance(g, H):
            nxt = i + 1
            return eval_gate(v, g, c, lambda w: _eval_suffix(w, gates, nxt, c))
        v = apply_ccx(v, g.ctrl1, g.ctrl2, g.targ)
        i += 1
    return c.inject(v.amp, v.state)


def _check_width(circ: Circuit, state: BasisState) -> None:
    if len(state) != circ.qubit_count:
        raise ValueError(
            f"initial state has {len(state)} qubits, circuit expects {circ.qubit_count}"
        )


def eval_circuit(v: WeightedState, circ: Circuit | Sequence[Gate], c: Collector[R]) -> R:
    gates = circ.gates if isinstance(circ, Circuit) else tuple(circ)
    if isinstance(circ, Circuit):
        _check_width(circ, v.state)
    return _eval_suffix(v, gates, 0, c)


def _start(init: BasisState) -> WeightedState:
    return WeightedState(amp_one(), tuple(int(b) for b in init))


def run_list(circ: Circuit, init: BasisState) -> list[WeightedState]:
    return eval_circuit(_start(init), circ, LIST)


def run_hash(circ: Circuit, init: BasisState) -> Ket:
    """Interfered amplitude map, ordered by first-reached leaf in list order."""
    return evolve({_start(init).state: amp_one()}, circ)


def _ordered_inject(amp: Amplitude, state: BasisState):
    return {state: amp}, {state: None}


def _ordered_merge(a, b):
    ka, seen_a = a
    kb, seen_b = b
    for s in seen_b:
        seen_a.setdefault(s, None)
    return merge_kets(ka, kb), seen_a


# Same Ket as HASH, plus the ordered set of every state ever reached (tracked
# separately because cancelled entries may reappear later in the traversal).
_ORDERED_HASH = Collector("hash", _ordered_inject, _ordered_merge, commutative=False)


def evolve(ket: Ket, circ: Circuit) -> Ket:
    """Apply ``circ`` to a superposition, summing the runs of every entry."""
    acc: Ket = {}
    seen: dict[BasisState, None] = {}
    for state, amp in ket.items():
        _check_width(circ, state)
        k, s = eval_circuit(WeightedState(amp, state), circ, _ORDERED_HASH)
        acc = merge_kets(acc, k)
        for st in s:
            seen.setdefault(st, None)
    return {s: acc[s] for s in seen if s in acc}


def group_leaves(leaves: Sequence[WeightedState]) -> Ket:
    """Group list-mode leaves by state and add amplitudes (exact zeros dropped)."""
    out: Ket = {}
    order: dict[BasisState, None] = {}
    for amp, state in leaves:
        order.setdefault(state, None)
        out = merge_kets(out, {state: amp})
    return {s: out[s] for s in order if s in out}


@dataclass
class EvalTree:
    """Evaluation tree node.

    ``value`` is the weighted state on entry to the node (the root holds the
    initial state, every other node the result of an H split). ``trail`` lists
    the states produced by the CCX gates executed before the next split, and
    ``children`` is empty for a leaf or the two branches of that split.
    """

    value: WeightedState
    trail: list[BasisState] = field(default_factory=list)
    children: list["EvalTree"] = field(default_factory=list)

    @property
    def final(self) -> WeightedState:
        return WeightedState(self.value.amp, self.trail[-1]) if self.trail else self.value

    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list[WeightedState]:
        if self.is_leaf():
            return [self.final]
        return [w for ch in self.children for w in ch.leaves()]

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()


def _trace(v: WeightedState, gates: Sequence[Gate], i: int) -> EvalTree:
    node = EvalTree(v)
    cur = v
    while i < len(gates):
        g = gates[i]
        if isinstance(g, H):
            node.children = [_trace(w, gates, i + 1) for w in h_branches(cur, g.targ)]
            return node
        cur = apply_ccx(cur, g.ctrl1, g.ctrl2, g.targ)
        node.trail.append(cur.state)
        i += 1
    return node


def trace_tree(circ: Circuit, init: BasisState, max_h: int = DEFAULT_MAX_H) -> EvalTree:
    h = h_count(circ)
    if h > max_h:
        raise TreeTooLarge(f"circuit has {h} H gates; tree limit is {max_h}")
    start = _start(init)
    _check_width(circ, start.state)
    return _trace(start, circ.gates, 0)
