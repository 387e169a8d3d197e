"""Measurement of final kets: exact outcome probabilities, collapse and sampling.

Circuits never contain measurement gates. A mid-circuit measurement is modelled
by running the pure prefix, collapsing the resulting ket, and evolving the
collapsed ket through the remaining gates.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .amplitudes import amp_prob
from .circuit import BasisState, bits_str
from .interpreter import Ket


class MeasurementError(ValueError):
    pass


class EmptyKet(MeasurementError):
    pass


class ZeroProbabilityOutcome(MeasurementError):
    pass


@dataclass(frozen=True)
class MeasurementOutcome:
    """Result of observing ``observed`` on a subset of qubits.

    ``collapsed`` keeps the surviving amplitudes unnormalized; dividing them by
    ``sqrt(norm2)`` gives the post-measurement state.
    """

    observed: str
    probability: Fraction
    collapsed: Ket
    norm2: Fraction


def _pattern(state: BasisState, qubits: Sequence[int]) -> str:
    return bits_str(tuple(state[q] for q in qubits))


def _check(k: Ket, qubits: Sequence[int]) -> None:
    if not k:
        raise EmptyKet("cannot measure an empty ket")
    n = len(next(iter(k)))
    for q in qubits:
        if not 0 <= q < n:
            raise MeasurementError(f"qubit {q} out of range for {n} qubits")
    if len(set(qubits)) != len(qubits):
        raise MeasurementError("duplicate qubit in measurement")


def outcome_distribution(k: Ket, qubits: Sequence[int]) -> dict[str, Fraction]:
    """Exact probability of each observed pattern, normalized by the ket's total weight.

    Patterns list the measured bits in the order given by ``qubits`` and are
    returned in lexicographic order.
    """
    _check(k, qubits)
    weights: dict[str, Fraction] = {}
    for state, amp in k.items():
        p = _pattern(state, qubits)
        weights[p] = weights.get(p, Fraction(0)) + amp_prob(amp)
    total = sum(weights.values())
    return {p: w / total for p, w in sorted(weights.items()) if w}


def collapse(k: Ket, qubits: Sequence[int], observed: str) -> MeasurementOutcome:
    _check(k, qubits)
    if len(observed) != len(qubits) or any(ch not in "01" for ch in observed):
        raise MeasurementError(f"pattern {observed!r} does not match {len(qubits)} measured qubit(s)")
    kept = {s: a for s, a in k.items() if _pattern(s, qubits) == observed}
    if not kept:
        raise ZeroProbabilityOutcome(f"outcome {observed} has probability 0")
    norm2 = sum((amp_prob(a) for a in kept.values()), Fraction(0))
    total = sum((amp_prob(a) for a in k.values()), Fraction(0))
    return MeasurementOutcome(observed, norm2 / total, kept, norm2)


def sample(k: Ket, qubits: Sequence[int], rng_seed: int, shots: int) -> list[str]:
    """Draw ``shots`` outcomes using a private ``random.Random(rng_seed)`` (Mersenne Twister)."""
    if shots < 0:
        raise ValueError("shots must be nonnegative")
    dist = outcome_distribution(k, qubits)
    patterns = list(dist)
    denom = math.lcm(*(p.denominator for p in dist.values()))
    weights = [int(p * denom) for p in dist.values()]
    rng = random.Random(rng_seed)
    return rng.choices(patterns, weights=weights, k=shots)

