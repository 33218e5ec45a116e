from __future__ import annotations

from fractions import Fraction

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from spoly_lab._rational import ceil_fraction, format_fraction, lcm_of_denominators, to_fraction
from spoly_lab.exact_lp import basic_feasible_solution, convex_weights

fractions = st.fractions(min_value=0, max_value=3, max_denominator=12)


def test_to_fraction_forms():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(0.5) == Fraction(1, 2)
    assert to_fraction(7) == 7
    with pytest.raises(TypeError):
        to_fraction(True)
    with pytest.raises(ValueError):
        to_fraction(float("nan"))


def test_fraction_helpers():
    assert format_fraction(Fraction(6, 8)) == "3/4"
    assert format_fraction(Fraction(4, 2)) == "2"
    assert lcm_of_denominators([Fraction(1, 4), Fraction(2, 3), 1]) == 12
    assert ceil_fraction(Fraction(7, 3)) == 3
    assert ceil_fraction(Fraction(-7, 3)) == -2


def test_infeasible_system_returns_none():
    # x1 + x2 = -1 with x >= 0
    assert basic_feasible_solution([[1, 1]], [-1]) is None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(fractions, fractions), min_size=1, max_size=6), st.data())
def test_convex_weights_reproduce_target(points, data):
    raw = data.draw(st.lists(st.integers(0, 5), min_size=len(points), max_size=len(points)))
    if sum(raw) == 0:
        raw[0] = 1
    lam = [Fraction(r, sum(raw)) for r in raw]
    target = tuple(sum(l * p[i] for l, p in zip(lam, points)) for i in range(2))
    w = convex_weights(points, target)
    assert w is not None
    assert all(x >= 0 for x in w) and sum(w) == 1
    assert tuple(sum(x * p[i] for x, p in zip(w, points)) for i in range(2)) == target
    assert sum(1 for x in w if x != 0) <= 3
