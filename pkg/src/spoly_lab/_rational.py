"""Helpers for exact rational input and the "p/q" text format."""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Iterable


def to_fraction(x) -> Fraction:
    """Convert ints, Fractions, finite floats or "p/q" strings to a Fraction exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rational numbers")
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, numbers.Real):
        xf = float(x)
        if not math.isfinite(xf):
            raise ValueError(f"non-finite value {x!r} has no rational form")
        return Fraction(xf)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def to_fraction_vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_fraction(x) for x in xs)


def is_exact(x) -> bool:
    return isinstance(x, (numbers.Rational, str)) and not isinstance(x, bool)


def all_exact(xs: Iterable) -> bool:
    return all(is_exact(x) for x in xs)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    q = 1
    for v in values:
        q = math.lcm(q, Fraction(v).denominator)
    return q


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
