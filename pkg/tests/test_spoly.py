from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spoly_lab.errors import DegenerateSampleError, DomainError
from spoly_lab.exponent_geometry import QuarterDisc, lattice_points, standard_simplex
from spoly_lab.samples import WeightedSampleSet, circle
from spoly_lab.spoly import (
    SPolynomial,
    build_basis,
    evaluate,
    evaluate_many,
    growth_check,
    monomial_matrix,
    product,
)

from conftest import example_polytope


def nested_eval(coeffs: dict, z) -> complex:
    """Horner in z2 for each power of z1, then Horner in z1."""
    d1 = max(a for a, _ in coeffs)
    d2 = max(b for _, b in coeffs)
    total = 0j
    for a in range(d1, -1, -1):
        inner = 0j
        for b in range(d2, -1, -1):
            inner = inner * z[1] + coeffs.get((a, b), 0)
        total = total * z[0] + inner
    return total


def random_poly(S, m, seed):
    rng = np.random.default_rng(seed)
    exps = lattice_points(S, m).exponents
    c = rng.standard_normal(len(exps)) + 1j * rng.standard_normal(len(exps))
    return SPolynomial(S, m, dict(zip(exps, c)))


def test_evaluate_examples():
    S = standard_simplex(2)
    assert evaluate(SPolynomial(S, 0, {(0, 0): 1}), (5, -2j)) == 1
    assert evaluate(SPolynomial(S, 3, {(2, 1): 1}), (2, 3)) == 12
    assert evaluate(SPolynomial(S, 2, {}), (1, 1)) == 0


@pytest.mark.parametrize("seed", range(5))
def test_evaluate_matches_nested_oracle(seed):
    S = standard_simplex(2)
    p = random_poly(S, 4, seed)
    rng = np.random.default_rng(100 + seed)
    for _ in range(10):
        z = np.exp(2j * np.pi * rng.random(2))
        assert evaluate(p, z) == pytest.approx(nested_eval(dict(p.coefficients), z), abs=1e-12)
        assert evaluate_many(p, z[None, :])[0] == pytest.approx(evaluate(p, z), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1000), st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_evaluate_linear(seed, lam):
    S = example_polytope()
    p, q = random_poly(S, 3, seed), random_poly(S, 3, seed + 1)
    combo = SPolynomial(S, 3, {a: lam * p.coefficients.get(a, 0) + q.coefficients.get(a, 0)
                               for a in set(p.coefficients) | set(q.coefficients)})
    z = (0.7 + 0.2j, -0.4 + 0.9j)
    expected = lam * evaluate(p, z) + evaluate(q, z)
    assert evaluate(combo, z) == pytest.approx(expected, abs=1e-12 * (1 + abs(expected)))


def test_support_checked_at_construction():
    with pytest.raises(DomainError):
        SPolynomial(QuarterDisc(1), 3, {(3, 1): 1})
    with pytest.raises(DomainError):
        SPolynomial(standard_simplex(2), 1, {(1,): 1})


@pytest.mark.parametrize("m1,m2", [(1, 1), (2, 3), (4, 2)])
def test_product_support_in_sum(m1, m2):
    S = example_polytope()
    p, q = random_poly(S, m1, m1), random_poly(S, m2, 7 * m2)
    pq = product(p, q)
    assert pq.m == m1 + m2
    assert all(S.contains_lattice(a, m1 + m2) for a in pq.coefficients)
    z = (0.3 - 0.5j, 1.1j)
    assert evaluate(pq, z) == pytest.approx(evaluate(p, z) * evaluate(q, z), rel=1e-12)


def test_json_round_trip():
    S = standard_simplex(2)
    p = random_poly(S, 3, 0)
    back = SPolynomial.from_json(S, p.to_json())
    assert dict(back.coefficients) == pytest.approx(dict(p.coefficients))
    assert p.to_json()["terms"][0]["alpha"] == [0, 0]


def test_basis_small_cases():
    S = standard_simplex(2)
    pts = WeightedSampleSet([(0.3, 0.1), (-0.5, 0.8), (0.9, -0.2)], 0.0)
    b = build_basis(S, 1, pts)
    assert b.values.shape == (3, 3)
    assert abs(np.linalg.det(b.values)) > 1e-6
    b0 = build_basis(QuarterDisc(1), 0, pts)
    assert np.all(b0.values == 1)


def test_orthogonal_basis_on_circle():
    S = standard_simplex(1)
    b = build_basis(S, 8, circle(256), orthogonalize=True)
    G = b.orthonormal.conj().T @ b.orthonormal
    assert np.allclose(G, np.eye(9), atol=1e-10)
    y = np.arange(9) + 1j
    assert np.allclose(b.orthonormal @ y, b.values @ b.to_monomial(y))


def test_degenerate_basis_raises():
    S = standard_simplex(1)
    with pytest.warns(RuntimeWarning):
        with pytest.raises(DegenerateSampleError):
            build_basis(S, 4, circle(3))


def test_monomial_matrix_matches_powers():
    pts = np.array([[2.0, 3.0], [1j, -1.0]])
    V = monomial_matrix([(0, 0), (2, 1), (1, 3)], pts)
    assert np.allclose(V, [[1, 12, 54], [1, 1, -1j]])


def test_growth_check_examples():
    S = standard_simplex(2)
    assert growth_check(SPolynomial(S, 3, {(3, 0): 1, (1, 2): -2})).passed
    assert growth_check(SPolynomial(S, 2, {})).passed
    bad = SPolynomial(S, 2, {(2, 1): 1}, check=False)
    res = growth_check(bad)
    assert not res.passed and res.worst_excess > 0


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6))
def test_growth_check_passes_valid_polynomials(seed, m):
    assert growth_check(random_poly(QuarterDisc(1), m, seed), trials=50).passed
