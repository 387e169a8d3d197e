"""Classical distributions as expectation functionals.

A distribution is a function that takes an event (a function from values to
numbers) and returns its expectation. Running a circuit with ``const_p`` leaves
and unbiased ``choose_p`` merges yields such a functional; because it only ever
forms convex combinations, opposite amplitudes never cancel.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .amplitudes import Amplitude
from .circuit import BasisState, Circuit
from .interpreter import Collector, WeightedState, _start, eval_circuit

Event = Callable[[WeightedState], Any]
Distribution = Callable[[Event], Any]


def const_p(a) -> Distribution:
    return lambda f: f(a)


def choose_p(p: float, k1: Distribution, k2: Distribution) -> Distribution:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"bias must lie in [0, 1], got {p}")

    def dist(f):
        return p * k1(f) + (1.0 - p) * k2(f)

    return dist


def expectation(f: Event, k: Distribution):
    return k(f)


PROB = Collector(
    "prob",
    lambda amp, state: const_p(WeightedState(amp, state)),
    lambda k1, k2: choose_p(0.5, k1, k2),
)


def run_distribution(circ: Circuit, init: BasisState) -> Distribution:
    return eval_circuit(_start(init), circ, PROB)


class Paths:
    """Formal weighted sum of leaves, closed under ``+`` and scalar ``*``.

    Used as an event value so a distribution can be unfolded into the
    individual leaves it was built from.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = list(terms)

    def __add__(self, other: Paths) -> Paths:
        return Paths(self.terms + other.terms)

    def __mul__(self, c: float) -> Paths:
        return Paths((w * c, x) for w, x in self.terms)

    __rmul__ = __mul__


@dataclass(frozen=True)
class ProbEntry:
    weight: float
    amp: Amplitude
    state: BasisState


def leaf_contributions(dist: Distribution) -> list[ProbEntry]:
    """Path weight and leaf value of every ``const_p`` reachable in ``dist``, in order."""
    paths = expectation(lambda v: Paths([(1.0, v)]), dist)
    return [ProbEntry(w, v.amp, v.state) for w, v in paths.terms]


def run_prob(circ: Circuit, init: BasisState) -> list[ProbEntry]:
    return leaf_contributions(run_distribution(circ, init))


def state_probabilities(dist: Distribution) -> dict[BasisState, float]:
    """Classical probability of ending in each state (path weights summed)."""
    out: dict[BasisState, float] = {}
    for e in leaf_contributions(dist):
        out[e.state] = out.get(e.state, 0.0) + e.weight
    return out
