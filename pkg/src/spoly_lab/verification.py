"""Acceptance checks, grouped into suites for ``spoly-lab verify``.

Every check returns a :class:`CriterionResult` carrying the measured
numbers, so a failure says by how much it failed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .approx import best_weighted_approx_lawson, best_weighted_approx_lp, decay_rate, hull_approx_comparison
from .cones import FullSpace, HullTester
from .exponent_geometry import (
    ConcaveHypograph,
    QuarterDisc,
    RationalPolytope,
    lattice_points,
    log_support,
    membership,
    minkowski_decompose,
    standard_simplex,
)
from .lattice_gap import (
    brute_force_gap,
    disc_gap_exact,
    gap_search,
    hypograph_deficit_root,
    hypograph_log_gap_bound,
    polytope_delta,
)
from .samples import WeightedSampleSet, circle, torus
from .siciak import siciak_phi, sublevel_classify, v_approx

SEC32 = 1.0 / math.cos(math.pi / 32)


@dataclass(frozen=True)
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def example_polytope() -> RationalPolytope:
    """``ch{0, e1, e2, (3/4, 3/4)}``."""
    return RationalPolytope([(0, 0), (1, 0), (0, 1), ("3/4", "3/4")])


def _pole(w: complex):
    return lambda z: 1.0 / (z[:, 0] - w)


# ------------------------------------------------------------ gap criteria


def check_disc_gap(m_max: int = 100) -> tuple[bool, str]:
    S = QuarterDisc(1)
    worst, missing = 0.0, []
    for m in range(1, m_max + 1):
        g = gap_search(S, m)
        exact = math.sqrt(m * m + 1) - m
        worst = max(worst, abs(g.distance - exact), abs(g.distance - disc_gap_exact(m)))
        if (m, 1) not in g.minimizers:
            missing.append(m)
    ok = worst <= 1e-9 and not missing
    return ok, f"max |d_m - (sqrt(m^2+1)-m)| = {worst:.2e}; (m,1) missing at {missing or 'none'}"


def check_polytope_bound(m_max: int = 60) -> tuple[bool, str]:
    parts, ok = [], True
    for name, S in (("Sigma", standard_simplex(2)), ("P", example_polytope())):
        delta = polytope_delta(S).delta
        rows = {m: gap_search(S, m).distance for m in range(1, m_max + 1)}
        below = [m for m, d in rows.items() if d < delta]
        root_min = min(rows[m] ** (1.0 / m) for m in range(30, m_max + 1))
        ok &= not below and root_min >= 0.95
        parts.append(f"{name}: delta={delta:.6f}, min d_m={min(rows.values()):.6f}, min root[30,60]={root_min:.4f}")
    return ok, "; ".join(parts)


def check_hypograph(m_max: int = 20) -> tuple[bool, str]:
    S = ConcaveHypograph(2, 2)
    ok_bound, worst_log = True, -math.inf
    for m in range(1, m_max + 1):
        g = gap_search(S, m)
        log_b = hypograph_log_gap_bound(2, 2, m)
        # compare in log space too, since both sides underflow for m >= 19
        ok_bound &= g.distance <= math.exp(log_b) + 1e-9 and g.log_distance <= log_b + 1e-9
        worst_log = max(worst_log, g.log_distance - log_b)
    roots = {m: math.exp(hypograph_log_gap_bound(2, 2, m) / m) for m in range(12, m_max + 1)}
    ok_roots = max(roots.values()) < 0.05
    target = math.exp(-3)
    deficit = {m: hypograph_deficit_root(1, 3, m) for m in range(40, 101)}
    ok_limit = all(0.9 * target <= r <= 1.1 * target for r in deficit.values())
    bound40 = math.exp(hypograph_log_gap_bound(1, 3, 40) / 40)
    detail = (
        f"max log d_m - log bound = {worst_log:.3g}; max bound root m>=12 = {max(roots.values()):.2e}; "
        f"(1-f(1/m))^(1/m)/e^-3 on [40,100] in [{min(deficit.values()) / target:.4f}, "
        f"{max(deficit.values()) / target:.4f}]; (m(1-f(1/m)))^(1/m)/e^-3 at m=40 = {bound40 / target:.4f}"
    )
    return ok_bound and ok_roots and ok_limit, detail


def check_brute_force(m_max: int = 6) -> tuple[bool, str]:
    sets = {
        "Sigma": standard_simplex(2),
        "P": example_polytope(),
        "disc": QuarterDisc(1),
        "hypograph(2,2)": ConcaveHypograph(2, 2),
    }
    worst_abs, worst_log = 0.0, 0.0
    for S in sets.values():
        for m in range(1, m_max + 1):
            a, b = gap_search(S, m), brute_force_gap(S, m)
            worst_abs = max(worst_abs, abs(a.distance - b.distance))
            worst_log = max(worst_log, abs(a.log_distance - b.log_distance))
    return worst_abs <= 1e-10 and worst_log <= 1e-10, f"max abs diff {worst_abs:.2e}, max log diff {worst_log:.2e}"


# ------------------------------------------------------------ approximation criteria


def check_bernstein_walsh(m_lo: int = 15, m_hi: int = 30) -> tuple[bool, str]:
    K = circle(256)
    S = standard_simplex(1)
    t0 = time.perf_counter()
    results = [best_weighted_approx_lp(_pole(2.0), K, S, m) for m in range(m_lo, m_hi + 1)]
    fit = decay_rate(results, window=(m_lo, m_hi))
    elapsed = time.perf_counter() - t0
    ok = 0.45 <= fit.fitted_rate <= 0.55 and elapsed <= 300
    return ok, f"fitted_rate={fit.fitted_rate:.6f} on [{m_lo},{m_hi}], runtime limit 300s"


def random_instance(rng: np.random.Generator):
    """A random cross-solver problem: n <= 2, m <= 6, at most 200 samples, q in [0, 1]."""
    n = int(rng.integers(1, 3))
    choices = [standard_simplex(1)] if n == 1 else [standard_simplex(2), QuarterDisc(1), example_polytope()]
    S = choices[int(rng.integers(len(choices)))]
    m = int(rng.integers(1, 7))
    k = int(rng.integers(60, 201))
    pts = np.exp(2j * np.pi * rng.random((k, n))) * rng.uniform(0.5, 1.0, (k, n))
    q = rng.random(k)
    poles = rng.uniform(1.3, 2.5, n) * np.exp(2j * np.pi * rng.random(n))

    def f(z):
        return 1.0 / np.prod(z - poles, axis=1)

    return S, WeightedSampleSet(pts, q), m, f


def check_cross_solver(instances: int = 50, seed: int = 0) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        S, K, m, f = random_instance(rng)
        lp = best_weighted_approx_lp(f, K, S, m)
        law = best_weighted_approx_lawson(f, K, S, m)
        t = lp.lower_bound
        # distance of the Lawson value from the sandwich [t*, t* sec], relative
        if law.d_sample < t:
            dev = (t - law.d_sample) / t
        else:
            dev = max(0.0, law.d_sample / (t * SEC32) - 1.0)
        worst = max(worst, dev)
    return worst <= 0.02, f"{instances} instances, worst relative deviation from [t*, t* sec(pi/32)] = {worst:.2e}"


def check_weight_covariance(ms=(2, 5, 9), shift: float = 0.3) -> tuple[bool, str]:
    K = circle(256)
    S = standard_simplex(1)
    rng = np.random.default_rng(1)
    q = rng.random(256)
    worst = 0.0
    for m in ms:
        for solver in (best_weighted_approx_lp, best_weighted_approx_lawson):
            a = solver(_pole(2.0), K.with_weights(q), S, m).d_sample
            b = solver(_pole(2.0), K.with_weights(q + shift), S, m).d_sample
            worst = max(worst, abs(b / (a * math.exp(-shift * m)) - 1.0))
    return worst <= 1e-6, f"max relative error {worst:.2e} over m in {list(ms)}, both solvers"


# ------------------------------------------------------------ Siciak criteria


def check_siciak_disc() -> tuple[bool, str]:
    K = circle(256)
    S = standard_simplex(1)
    phis = [siciak_phi(S, K, m, [2.0]).phi for m in range(1, 9)]
    lo, hi = 2.0 / SEC32 - 1e-6, 2.0 + 1e-6
    v = v_approx(S, K, range(1, 17), [2.0]).value
    ok = all(lo <= p <= hi for p in phis) and abs(v - math.log(2)) <= 0.01
    return ok, f"Phi_hat(2) over m=1..8 in [{min(phis):.9f}, {max(phis):.9f}]; v_approx(2) - log 2 = {v - math.log(2):.2e}"


def check_sublevel(step: float = 0.05, m_list=(16,), R: float = 2.0) -> tuple[bool, str]:
    K = circle(256)
    xs = np.round(np.arange(-3.0, 3.0 + step / 2, step), 10)
    grid = (xs[:, None] + 1j * xs[None, :]).ravel()
    field = sublevel_classify(standard_simplex(1), K, list(m_list), grid, R)
    r = np.abs(grid)
    wrong = (field.inside != (r < R)) & (np.abs(r - R) > 0.1)
    return not wrong.any(), f"{grid.size} grid points, m_list={list(m_list)}, misclassified beyond the band: {int(wrong.sum())}"


# ------------------------------------------------------------ specialization identities


def _random_rational_points(rng, count, hi=Fraction(6, 5), den=24):
    pts = []
    for _ in range(count):
        d = int(rng.integers(1, den + 1))
        pts.append(tuple(Fraction(int(rng.integers(0, int(hi * d) + 1)), d) for _ in range(2)))
    return pts


def check_specializations(count: int = 1000, seed: int = 2) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    sigma = standard_simplex(2)
    z = rng.standard_normal((count, 2)) * np.exp(rng.uniform(-3, 3, (count, 2))) + 1j * rng.standard_normal((count, 2))
    h_bad = sum(
        log_support(sigma, zk) != max(0.0, math.log(max(abs(zk[0]), abs(zk[1])))) for zk in z
    )
    disagreements = 0
    for S in (sigma, QuarterDisc(1), example_polytope(), ConcaveHypograph(2, 2)):
        tester = HullTester(S, FullSpace())
        for x in _random_rational_points(rng, count // 4):
            mem = membership(S, x, 1, 1e-9)
            # the hull test certifies to an absolute margin of 1e-9, so points
            # that close to S count as inside
            expected = mem.inside or -mem.margin <= 1e-9
            disagreements += tester.test(x).inside != expected
    K = torus(12, 12)

    def f(w):
        return 1.0 / ((w[:, 0] - 2.0) * (w[:, 1] - 2.0))

    equal = True
    for m in (2, 4):
        cmp = hull_approx_comparison(f, K, sigma, m)
        equal &= cmp.d_hull == cmp.d_S and set(cmp.exponents_hull) == set(cmp.exponents_S)
    ok = h_bad == 0 and disagreements == 0 and equal
    return ok, f"H_Sigma mismatches {h_bad}/{count}; FullSpace hull disagreements {disagreements}; Sigma d_hull == d_S: {equal}"


# ------------------------------------------------------------ geometry invariants


def check_geometry_invariants(seed: int = 3) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    sets = (standard_simplex(2), QuarterDisc(1), example_polytope(), ConcaveHypograph(2, 2))
    bad = 0
    for S in sets:
        xi = rng.standard_normal((200, 2))
        eta = rng.standard_normal((200, 2))
        a = S.support_many(xi)
        bad += int(np.sum(S.support_many(xi + eta) > a + S.support_many(eta) + 1e-12))
        bad += int(np.sum(np.abs(S.support_many(3.0 * xi) - 3.0 * a) > 1e-12 * (1 + np.abs(a))))
        bad += int(np.sum(a < -1e-15))  # 0 in S
        for m in (1, 2, 3, 5):
            inner = set(lattice_points(S, m).exponents)
            outer = set(lattice_points(S, m + 1).exponents)
            bad += len(inner - outer)
    P = example_polytope()
    for s in lattice_points(P, 7).exponents:
        dec = minkowski_decompose(P, s, 7)
        bad += dec.reconstruct() != tuple(Fraction(v) for v in s)
    return bad == 0, f"{bad} violations of sublinearity, homogeneity, 0 in S, nesting, Minkowski reconstruction"


# ------------------------------------------------------------ suites


CRITERIA: dict[str, tuple[str, Callable[[], tuple[bool, str]]]] = {
    "1": ("disc gap exactness", check_disc_gap),
    "2": ("polytope uniform bound", check_polytope_bound),
    "3": ("hypograph collapse", check_hypograph),
    "4": ("brute-force gap equivalence", check_brute_force),
    "5": ("Bernstein-Walsh rate", check_bernstein_walsh),
    "6": ("solver cross-certification", check_cross_solver),
    "7": ("weight covariance", check_weight_covariance),
    "8": ("Siciak disc value", check_siciak_disc),
    "9": ("sublevel geometry", check_sublevel),
    "10": ("specialization identities", check_specializations),
    "G": ("geometry invariants", check_geometry_invariants),
}

SUITES: dict[str, tuple[str, ...]] = {
    "geometry": ("G", "10"),
    "gap": ("1", "2", "3", "4"),
    "approx": ("5", "6", "7"),
    "siciak": ("8", "9"),
}
SUITES["all"] = tuple(k for name in ("gap", "approx", "siciak", "geometry") for k in SUITES[name])


def run_criterion(key: str) -> CriterionResult:
    title, fn = CRITERIA[key]
    t0 = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(key, title, bool(passed), detail, time.perf_counter() - t0)


def run_suite(name: str, echo: Callable[[str], None] | None = print) -> list[CriterionResult]:
    if name not in SUITES:
        raise KeyError(name)
    out = []
    for key in SUITES[name]:
        res = run_criterion(key)
        if echo is not None:
            echo(res.line())
        out.append(res)
    return out
