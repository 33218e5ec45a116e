from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spoly_lab.cones import (
    FullSpace,
    HalfspaceIntersection,
    HullTester,
    IceCream,
    OrthantComplement,
    cone_hull_membership,
    hull_lattice_points,
)
from spoly_lab.errors import DomainError
from spoly_lab.exponent_geometry import QuarterDisc, lattice_points, membership, standard_simplex

from conftest import PLANAR_SETS, example_polytope


def test_ice_cream_contains_diagonal_and_axes():
    for gap in (0.0, 0.3, 1.0):
        cone = IceCream(gap)
        assert cone.contains(np.array([[1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])).all()
    assert not IceCream(0.0).contains(np.array([[-1.0, 0.5]]))[0]
    with pytest.raises(DomainError):
        IceCream(-1.0)


def test_cone_membership_predicates():
    assert OrthantComplement().contains(np.array([[-1.0, 0.0]]))[0]
    assert not OrthantComplement().contains(np.array([[-1.0, -0.1]]))[0]
    cone = HalfspaceIntersection([(1, 0)])
    assert cone.contains(np.array([[0.0, -5.0]]))[0]
    assert not cone.contains(np.array([[-0.1, 1.0]]))[0]
    assert FullSpace().contains(np.array([[-1.0, -1.0]]))[0]


def test_simplex_ice_cream_example():
    res = cone_hull_membership(standard_simplex(2), IceCream(1.0), (2, 0))
    assert not res.inside
    assert res.margin >= 1 - 1e-9
    assert not res.heuristic


def test_direction_of_largest_violation():
    res = cone_hull_membership(standard_simplex(2), FullSpace(), (3, 0))
    # <(3,0), xi> - max(xi_1, xi_2, 0) peaks at 2 for xi = (1, 0)
    assert res.margin == pytest.approx(2.0, abs=1e-9)
    assert res.direction == pytest.approx((1.0, 0.0), abs=1e-5)


rational = st.fractions(min_value=0, max_value=Fraction(3, 2), max_denominator=40)


@settings(max_examples=60, deadline=None)
@given(rational, rational)
def test_full_space_hull_is_the_set(a, b):
    for name in ("sigma2", "polytope", "disc"):
        S = PLANAR_SETS[name]()
        mem = membership(S, (a, b), 1)
        hull = cone_hull_membership(S, FullSpace(), (a, b), grid=1024)
        if abs(mem.margin) > 1e-6:
            assert hull.inside == mem.inside


@settings(max_examples=40, deadline=None)
@given(rational, rational, st.floats(0, 2))
def test_hull_extends_set_and_shrinks_with_cone(a, b, gap):
    S = example_polytope()
    small = HullTester(S, IceCream(gap), grid=1024)
    big = HullTester(S, IceCream(gap + 0.5), grid=1024)
    x = (a, b)
    if membership(S, x, 1).inside:
        assert small.test(x).inside
    # a larger cone gives more constraints, hence a smaller hull
    if big.test(x).inside:
        assert small.test(x).inside


def test_orthant_complement_hull_of_lower_set_is_the_set():
    S = example_polytope()
    rng = np.random.default_rng(0)
    tester = HullTester(S, OrthantComplement(), grid=2048)
    for _ in range(200):
        x = tuple(Fraction(int(v), 64) for v in rng.integers(0, 100, 2))
        mem = membership(S, x, 1)
        if abs(mem.margin) > 1e-6:
            assert tester.test(x).inside == mem.inside


def test_hull_lattice_points_contain_set_points():
    S = QuarterDisc(1)
    for m in (3, 6):
        hull, heuristic = hull_lattice_points(S, IceCream(0.2), m)
        assert set(lattice_points(S, m).exponents) <= set(hull)
        assert not heuristic


def test_hull_rejects_cone_without_axes():
    with pytest.raises(DomainError):
        hull_lattice_points(standard_simplex(2), HalfspaceIntersection([(-1, 0)]), 2)


def test_three_dimensional_hull_is_flagged():
    res = cone_hull_membership(standard_simplex(3), IceCream(0.5), (2, 0, 0))
    assert res.heuristic
    assert not res.inside and res.margin >= 1 - 1e-3


def test_negative_points_are_outside():
    res = cone_hull_membership(standard_simplex(2), IceCream(1.0), (-1, 0))
    assert not res.inside and res.margin == pytest.approx(1.0)
