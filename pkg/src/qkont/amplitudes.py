"""Exact amplitudes of the form ``k * (1/sqrt(2))**h``.

Every leaf of a {CCX, H} evaluation carries an amplitude whose denominator is a
power of sqrt(2), so an integer numerator plus a half-exponent is enough to make
interference exact. Floats only appear when formatting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Amplitude",
    "IncompatibleHalfExponent",
    "amp_one",
    "amp_zero",
    "amp_mul_hscale",
    "amp_neg",
    "amp_add",
    "amp_to_float",
    "amp_prob",
    "format_amplitude",
]


_SQRT2 = math.sqrt(2.0)


class IncompatibleHalfExponent(ValueError):
    """Raised when adding amplitudes whose half-exponents differ by an odd amount."""


def _canonical(k: int, h: int) -> tuple[int, int]:
    if k == 0:
        return 0, 0
    while k % 2 == 0 and h >= 2:
        k //= 2
        h -= 2
    return k, h


@dataclass(frozen=True, order=False)
class Amplitude:
    """Value ``numerator / sqrt(2)**half_exp``, always stored canonically."""

    numerator: int
    half_exp: int = 0

    def __post_init__(self):
        if self.half_exp < 0:
            raise ValueError(f"half_exp must be nonnegative, got {self.half_exp}")
        k, h = _canonical(int(self.numerator), int(self.half_exp))
        object.__setattr__(self, "numerator", k)
        object.__setattr__(self, "half_exp", h)

    def __neg__(self) -> Amplitude:
        return amp_neg(self)

    def __add__(self, other: Amplitude) -> Amplitude:
        if not isinstance(other, Amplitude):
            return NotImplemented
        return amp_add(self, other)

    def __float__(self) -> float:
        return amp_to_float(self)

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __str__(self) -> str:
        return format_amplitude(self)


def amp_one() -> Amplitude:
    return Amplitude(1, 0)


def amp_zero() -> Amplitude:
    return Amplitude(0, 0)


def amp_mul_hscale(a: Amplitude) -> Amplitude:
    """Multiply by 1/sqrt(2)."""
    if a.numerator == 0:
        return a
    return Amplitude(a.numerator, a.half_exp + 1)


def amp_neg(a: Amplitude) -> Amplitude:
    return Amplitude(-a.numerator, a.half_exp)


def amp_add(a: Amplitude, b: Amplitude) -> Amplitude:
    """Exact sum.

    The operand with the smaller half-exponent is lifted by multiplying its
    numerator by ``2**(dh/2)``; an odd ``dh`` means the two values live in
    different fields and raises :class:`IncompatibleHalfExponent`.
    """
    if a.numerator == 0:
        return b
    if b.numerator == 0:
        return a
    if a.half_exp < b.half_exp:
        a, b = b, a
    dh = a.half_exp - b.half_exp
    if dh % 2:
        raise IncompatibleHalfExponent(
            f"cannot add amplitudes with half-exponents {a.half_exp} and {b.half_exp}"
        )
    return Amplitude(a.numerator + (b.numerator << (dh // 2)), a.half_exp)


def amp_to_float(a: Amplitude) -> float:
    k, h = a.numerator, a.half_exp
    x = math.ldexp(k, -(h // 2))
    return x / _SQRT2 if h % 2 else x


def amp_prob(a: Amplitude) -> Fraction:
    """Squared magnitude ``k**2 / 2**h`` as an exact rational."""
    return Fraction(a.numerator * a.numerator, 1 << a.half_exp)


def format_amplitude(a: Amplitude | float) -> str:
    """Signed display string: ``+0.25``, ``-0.50``, ``+0.7071067811865475``.

    Two decimals are used when they represent the value exactly (as a float),
    otherwise the full ``repr`` is printed.
    """
    x = amp_to_float(a) if isinstance(a, Amplitude) else float(a)
    sign = "-" if x < 0 else "+"
    x = abs(x)
    short = f"{x:.2f}"
    body = short if float(short) == x else repr(x)
    return sign + body
