from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spoly_lab.approx import (
    CSV_HEADER,
    best_weighted_approx_lawson,
    best_weighted_approx_lp,
    convergence_diagnostic,
    decay_rate,
    hull_approx_comparison,
    results_to_csv,
)
from spoly_lab.errors import DomainError, InadmissibleWeightError
from spoly_lab.exponent_geometry import QuarterDisc, lattice_points, standard_simplex
from spoly_lab.samples import WeightedSampleSet, circle, torus
from spoly_lab.spoly import SPolynomial, evaluate_many

from conftest import example_polytope

SIGMA1 = standard_simplex(1)

# least-squares slope of log(3^-m m^2) on m = 10..30, computed from the normal equations
RATE_3M_10_30 = 0.37069761065040086
# same sequence on m = 1..30 with the default trailing window m = 16..30
RATE_3M_TRAILING = 0.3643142128351785


def pole(a):
    return lambda z: 1.0 / (z[:, 0] - a)


def ls_slope(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def test_rate_oracles_frozen():
    ms = list(range(10, 31))
    assert math.exp(ls_slope(ms, [-m * math.log(3) + 2 * math.log(m) for m in ms])) == pytest.approx(
        RATE_3M_10_30, rel=1e-14
    )
    ms = list(range(16, 31))
    assert math.exp(ls_slope(ms, [-m * math.log(3) + 2 * math.log(m) for m in ms])) == pytest.approx(
        RATE_3M_TRAILING, rel=1e-14
    )


# ------------------------------------------------------------ solver examples


def test_geometric_series_example():
    K = circle(256)
    for solver in (best_weighted_approx_lp, best_weighted_approx_lawson):
        r = solver(pole(2.0), K, SIGMA1, 6)
        assert 0 < r.d_sample <= 2.0**-6
    # the truncated series leaves the tail (z/2)^7 / (2 - z), largest at z = 1
    trunc = sum(-(K.points[:, 0] ** j) / 2 ** (j + 1) for j in range(7))
    assert np.max(np.abs(1 / (K.points[:, 0] - 2) - trunc)) == pytest.approx(2.0**-7, rel=1e-12)
    assert best_weighted_approx_lp(pole(2.0), K, SIGMA1, 6).d_sample <= 2.0**-7 * (1 + 1e-9)


@pytest.mark.parametrize("make", [lambda: standard_simplex(2), QuarterDisc, example_polytope])
def test_representable_target(make):
    S = make()
    m = 3
    exps = lattice_points(S, m).exponents
    rng = np.random.default_rng(4)
    p0 = SPolynomial(S, m, dict(zip(exps, rng.standard_normal(len(exps)) + 1j * rng.standard_normal(len(exps)))))
    K = torus(9, 9)
    f = evaluate_many(p0, K.points)
    lp = best_weighted_approx_lp(f, K, S, m)
    law = best_weighted_approx_lawson(f, K, S, m)
    assert lp.lower_bound <= 1e-10
    assert law.d_sample <= 1e-10


def test_polygon_nesting_and_sandwich():
    rng = np.random.default_rng(3)
    K = WeightedSampleSet(np.exp(2j * np.pi * rng.random(120)) * rng.uniform(0.5, 1, 120), rng.random(120))
    t4 = best_weighted_approx_lp(pole(1.7j), K, SIGMA1, 5, directions=4).lower_bound
    t64 = best_weighted_approx_lp(pole(1.7j), K, SIGMA1, 5, directions=64).lower_bound
    assert t4 <= t64 * (1 + 1e-9)
    assert t64 <= t4 / math.cos(math.pi / 4) * (1 + 1e-9)


def test_lp_bounds_bracket_lawson():
    K = circle(128, weight=lambda z: 0.2 * np.real(z[:, 0]))
    lp = best_weighted_approx_lp(pole(1.5), K, SIGMA1, 4)
    law = best_weighted_approx_lawson(pole(1.5), K, SIGMA1, 4)
    assert lp.lower_bound <= law.d_sample * (1 + 1e-6)
    assert law.d_sample <= lp.upper_bound * 1.02
    assert lp.lower_bound <= lp.upper_bound <= lp.d_sample + 1e-15


def test_validation_certificate():
    K = circle(128, validation=128)
    r = best_weighted_approx_lp(pole(2.0), K, SIGMA1, 8)
    assert r.d_sample <= r.d_validation + 1e-9


def test_infinite_weights_drop_out():
    K = circle(64)
    q = np.where(np.arange(64) % 2 == 0, 0.0, np.inf)
    half = best_weighted_approx_lp(pole(2.0), K.with_weights(q), SIGMA1, 5)
    sub = best_weighted_approx_lp(pole(2.0), WeightedSampleSet(K.points[::2], 0.0), SIGMA1, 5)
    assert half.d_sample == pytest.approx(sub.d_sample, rel=1e-9)
    with pytest.raises(InadmissibleWeightError):
        best_weighted_approx_lp(pole(2.0), K.with_weights(np.inf), SIGMA1, 2)


def test_constant_weight_factorizes():
    K = circle(128)
    for solver in (best_weighted_approx_lp, best_weighted_approx_lawson):
        a = solver(pole(2.5), K, SIGMA1, 5).d_sample
        b = solver(pole(2.5), K.with_weights(0.7), SIGMA1, 5).d_sample
        assert b == pytest.approx(math.exp(-5 * 0.7) * a, rel=1e-8)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.floats(-1, 1), st.integers(1, 6))
def test_weight_shift_covariance(seed, c, m):
    rng = np.random.default_rng(seed)
    K = WeightedSampleSet(np.exp(2j * np.pi * rng.random(80)), rng.random(80))
    a = best_weighted_approx_lp(pole(1.8), K, SIGMA1, m).d_sample
    b = best_weighted_approx_lp(pole(1.8), K.shifted(c), SIGMA1, m).d_sample
    assert b == pytest.approx(math.exp(-m * c) * a, rel=1e-8)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6))
def test_zero_candidate_bound(seed, m):
    rng = np.random.default_rng(seed)
    K = WeightedSampleSet(np.exp(2j * np.pi * rng.random(60)), rng.random(60))
    f = rng.standard_normal(60) + 1j * rng.standard_normal(60)
    zero = float(np.max(np.abs(f) * np.exp(-m * K.weights)))
    for solver in (best_weighted_approx_lp, best_weighted_approx_lawson):
        assert solver(f, K, SIGMA1, m).d_sample <= zero * (1 + 1e-12)


def test_monotone_in_m():
    K = circle(96)
    prev = math.inf
    for m in range(1, 13):
        t = best_weighted_approx_lp(pole(1.6), K, SIGMA1, m).lower_bound
        assert t <= prev + 1e-9
        prev = t


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_more_samples_never_lower(seed):
    rng = np.random.default_rng(seed)
    pts = np.exp(2j * np.pi * rng.random(100))
    small = best_weighted_approx_lp(pole(1.5), WeightedSampleSet(pts[:50], 0.0), SIGMA1, 4).lower_bound
    big = best_weighted_approx_lp(pole(1.5), WeightedSampleSet(pts, 0.0), SIGMA1, 4).lower_bound
    assert big >= small * (1 - 1e-9)


def test_argument_checks():
    with pytest.raises(DomainError):
        best_weighted_approx_lp(pole(2.0), circle(32), SIGMA1, 2, directions=2)
    with pytest.raises(DomainError):
        best_weighted_approx_lp(pole(2.0), circle(32), standard_simplex(2), 2)


# ------------------------------------------------------------ rates


def test_decay_rate_exact_geometric():
    fit = decay_rate([(m, 2.0**-m) for m in range(1, 21)])
    assert fit.fitted_rate == pytest.approx(0.5, rel=1e-12)
    assert fit.window == (11, 20)
    assert fit.roots[4] == pytest.approx(0.5)


def test_decay_rate_polynomial_prefactor():
    seq = [(m, 3.0**-m * m**2) for m in range(1, 31)]
    assert decay_rate(seq, window=(10, 30)).fitted_rate == pytest.approx(RATE_3M_10_30, rel=1e-12)
    assert decay_rate(seq).fitted_rate == pytest.approx(RATE_3M_TRAILING, rel=1e-12)


def test_decay_rate_zero_and_too_few():
    fit = decay_rate([(1, 0.5), (2, 0.25), (3, 0.0), (4, 0.0)])
    assert fit.zero_flag and fit.fitted_rate == 0.0
    with pytest.raises(DomainError):
        decay_rate([(1, 0.5), (2, 0.25), (3, 0.1)])


def test_decay_rate_on_pole_experiment():
    K = circle(256)
    res = [best_weighted_approx_lp(pole(2.0), K, SIGMA1, m) for m in range(1, 21)]
    fit = decay_rate(res)
    assert 0.45 <= fit.fitted_rate <= 0.55


# ------------------------------------------------------------ hull comparison


def test_hull_comparison_simplex_adds_nothing():
    K = torus(8, 8)
    f = lambda z: 1.0 / ((z[:, 0] - 2) * (z[:, 1] - 2))  # noqa: E731
    cmp = hull_approx_comparison(f, K, standard_simplex(2), 3)
    assert set(cmp.exponents_hull) == set(cmp.exponents_S)
    assert cmp.d_hull == cmp.d_S


def test_hull_comparison_disc():
    K = torus(8, 8)
    f = lambda z: 1.0 / ((z[:, 0] - 2) * (z[:, 1] - 2))  # noqa: E731
    cmp = hull_approx_comparison(f, K, QuarterDisc(1), 3)
    assert set(cmp.exponents_S) <= set(cmp.exponents_hull)
    assert cmp.d_hull <= cmp.d_S * (1 + 1e-9)


# ------------------------------------------------------------ output


def test_csv_and_diagnostic():
    K = circle(64, weight=0.1)
    res = [best_weighted_approx_lp(pole(2.0), K, SIGMA1, m) for m in (2, 1)]
    text = results_to_csv(res)
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1].startswith("1,") and lines[2].startswith("2,")
    diag = convergence_diagnostic(res[0], K)
    assert np.allclose(diag, res[0].d_sample * math.exp(2 * 0.1))
