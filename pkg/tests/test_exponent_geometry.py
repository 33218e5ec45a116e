from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spoly_lab.errors import DomainError, UnsupportedExactnessError
from spoly_lab.exponent_geometry import (
    ConcaveHypograph,
    QuarterDisc,
    RationalPolytope,
    exponent_set_from_json,
    lattice_points,
    log_support,
    membership,
    minkowski_decompose,
    standard_simplex,
    support_function,
)

from conftest import PLANAR_SETS, example_polytope

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
vec2 = st.tuples(finite, finite)


# ------------------------------------------------------------ support function


def test_simplex_support_examples():
    S = standard_simplex(2)
    assert support_function(S, (-1, -2)) == 0
    assert support_function(S, (2, 3)) == 3
    assert support_function(S, (Fraction(1, 3), Fraction(1, 4))) == Fraction(1, 3)


def test_disc_support_against_sampled_supremum():
    # sup of <s, (3, 4)> over a polar sampling of the quarter disc
    r = np.linspace(0, 1, 1001)
    th = np.linspace(0, np.pi / 2, 1001)
    pts = np.stack([np.outer(r, np.cos(th)).ravel(), np.outer(r, np.sin(th)).ravel()], axis=1)
    sampled = float(np.max(pts @ np.array([3.0, 4.0])))
    assert support_function(QuarterDisc(1), (3, 4)) == pytest.approx(sampled, abs=1e-6)
    assert support_function(QuarterDisc(1), (3, 4)) == pytest.approx(5.0, abs=1e-12)


def test_disc_support_uses_positive_part():
    assert support_function(QuarterDisc(2), (-3, 4)) == pytest.approx(8.0)
    assert support_function(QuarterDisc(1), (-3, -4)) == 0


def test_hypograph_support_against_dense_boundary():
    S = ConcaveHypograph(2, 2)
    t = np.linspace(1e-6, 1, 200001)
    f = np.array([S.f(v) for v in t[::100]])
    for xi in [(1.0, 1.0), (2.0, 0.5), (0.3, 3.0), (1.0, -1.0), (-1.0, 2.0)]:
        sampled = max(0.0, float(np.max(t[::100] * xi[0] + f * xi[1])), xi[1], xi[0])
        assert support_function(S, xi) == pytest.approx(sampled, abs=1e-6)


def test_rejects_non_finite_direction():
    with pytest.raises((DomainError, ValueError)):
        support_function(standard_simplex(2), (math.inf, 0))


@settings(max_examples=80, deadline=None)
@given(vec2, vec2, st.floats(0.01, 100))
def test_support_sublinear(xi, eta, t):
    for make in PLANAR_SETS.values():
        S = make()
        a = float(support_function(S, xi))
        b = float(support_function(S, eta))
        ab = float(support_function(S, (xi[0] + eta[0], xi[1] + eta[1])))
        assert ab <= a + b + 1e-12 * (1 + abs(a) + abs(b))
        scaled = float(support_function(S, (t * xi[0], t * xi[1])))
        assert scaled == pytest.approx(t * a, rel=1e-12, abs=1e-12)
        assert a >= 0


@settings(max_examples=60, deadline=None)
@given(vec2, st.floats(0, 10), st.integers(0, 1))
def test_support_monotone_in_each_coordinate(xi, bump, j):
    up = list(xi)
    up[j] += bump
    for make in PLANAR_SETS.values():
        S = make()
        assert float(support_function(S, up)) >= float(support_function(S, xi)) - 1e-12


def test_polytope_support_exact_in_three_dimensions():
    S = standard_simplex(3)
    assert support_function(S, (Fraction(1, 2), Fraction(2, 3), -1)) == Fraction(2, 3)


# ------------------------------------------------------------ logarithmic support


def test_log_support_simplex_examples():
    S = standard_simplex(2)
    assert log_support(S, (2, 0.5)) == pytest.approx(math.log(2))
    assert log_support(S, (0.5, 0.5)) == 0


def test_log_support_on_coordinate_axis_uses_face():
    S = QuarterDisc(1)
    assert log_support(S, (0, math.e)) == pytest.approx(1.0)
    assert log_support(S, (0, math.e)) == pytest.approx(float(support_function(S, (-1e6, 1))))
    assert log_support(standard_simplex(2), (0, 0)) == 0


@settings(max_examples=100, deadline=None)
@given(st.tuples(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False),
                 st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)))
def test_log_support_simplex_is_log_plus_sup_norm(z):
    top = max(abs(z[0]), abs(z[1]))
    expected = max(0.0, math.log(top)) if top > 0 else 0.0
    assert log_support(standard_simplex(2), z) == expected


# ------------------------------------------------------------ membership


@pytest.mark.parametrize("m", [1, 2, 5, 17, 100])
def test_disc_excludes_m_1(m):
    assert not membership(QuarterDisc(1), (m, 1), m).inside
    assert membership(QuarterDisc(1), (m, 0), m).inside


def test_membership_examples():
    assert membership(standard_simplex(2), (1, 1), 2).inside
    res = membership(standard_simplex(2), (Fraction(1, 2), Fraction(1, 2)), 1)
    assert res.inside and res.margin == 0


def test_hypograph_needs_tolerance():
    with pytest.raises(UnsupportedExactnessError):
        membership(ConcaveHypograph(2, 2), (0.5, 0.1), 1, 0.0)
    assert membership(ConcaveHypograph(2, 2), (0.5, 0.1), 1, 1e-12).inside


def test_hypograph_parameters_validated():
    with pytest.raises(DomainError):
        ConcaveHypograph(1, 2)  # c must exceed 1 + 1/b = 2


def test_polytope_requires_origin_and_nonnegative():
    with pytest.raises(DomainError):
        RationalPolytope([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(DomainError):
        RationalPolytope([(0, 0), (-1, 0), (0, 1)])


def test_polytope_margin_is_signed_distance():
    S = standard_simplex(2)
    out = membership(S, (1, 1), 1)
    assert not out.inside and out.margin == pytest.approx(-math.sqrt(0.5))
    inside = membership(S, (Fraction(1, 4), Fraction(1, 4)), 1)
    assert inside.inside and inside.margin == pytest.approx(0.25)


def test_three_dimensional_polytope_membership():
    S = standard_simplex(3)
    assert membership(S, (1, 1, 1), 3).inside
    assert not membership(S, (1, 1, 2), 3).inside


# ------------------------------------------------------------ lattice points


def test_lattice_point_counts():
    assert len(lattice_points(standard_simplex(2), 3)) == 10
    assert set(lattice_points(QuarterDisc(1), 1).exponents) == {(0, 0), (1, 0), (0, 1)}
    for make in PLANAR_SETS.values():
        assert lattice_points(make(), 0).exponents == ((0, 0),)


@pytest.mark.parametrize("m", range(1, 9))
def test_simplex_counts_are_binomial(m):
    assert len(lattice_points(standard_simplex(2), m)) == (m + 1) * (m + 2) // 2
    assert len(lattice_points(standard_simplex(3), m)) == math.comb(m + 3, 3)


def test_disc_counts_match_integer_oracle():
    for m in range(1, 25):
        expected = sum(1 for a in range(m + 1) for b in range(m + 1) if a * a + b * b <= m * m)
        assert len(lattice_points(QuarterDisc(1), m)) == expected


def test_lattice_points_nested(planar_set):
    for m in range(0, 8):
        assert set(lattice_points(planar_set, m).exponents) <= set(lattice_points(planar_set, m + 1).exponents)


def test_lattice_points_contain_origin(planar_set):
    for m in range(0, 6):
        assert (0, 0) in lattice_points(planar_set, m)


# ------------------------------------------------------------ Minkowski decomposition


def test_minkowski_examples():
    S = standard_simplex(2)
    dec = minkowski_decompose(S, (3, 0), 3)
    assert dec.reconstruct() == (3, 0)
    assert len(dec.peeled) == 1
    assert membership(S, dec.t, 2).inside
    dec = minkowski_decompose(S, (Fraction(3, 2), Fraction(3, 2)), 3)
    assert dec.reconstruct() == (Fraction(3, 2), Fraction(3, 2))
    assert membership(S, dec.t, 2).inside
    dec = minkowski_decompose(S, (0, 0), 3)
    assert dec.t == (0, 0)


def test_minkowski_rejects_outside_point():
    with pytest.raises(DomainError):
        minkowski_decompose(standard_simplex(2), (3, 1), 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 12), st.data())
def test_minkowski_reconstructs_exactly(m, data):
    S = example_polytope()
    pts = lattice_points(S, m).exponents
    s = data.draw(st.sampled_from(pts))
    dec = minkowski_decompose(S, s, m)
    assert dec.reconstruct() == tuple(Fraction(v) for v in s)
    assert len(dec.peeled) == m - 2
    assert membership(S, dec.t, 2).inside
    verts = set(S.vertices)
    assert all(tuple(v) in verts for v in dec.peeled)


# ------------------------------------------------------------ serialization


def test_json_round_trip(planar_set):
    assert exponent_set_from_json(planar_set.to_json()).to_json() == planar_set.to_json()
    assert example_polytope().to_json()["vertices"][2] == ["3/4", "3/4"]
