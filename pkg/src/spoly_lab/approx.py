"""Weighted minimax approximation by S-polynomials on sample sets.

The approximation number of ``f`` is the smallest value of
``max_k |f(z_k) - p(z_k)| e^{-m q(z_k)}`` over ``p`` with exponents in
``m S``.  It is computed by two independent solvers:

* :func:`best_weighted_approx_lp` replaces the complex modulus by ``J``
  half-plane constraints (a circumscribed ``J``-gon) and solves the
  resulting LP, which brackets the discrete minimax value between ``t*``
  and ``t* sec(pi/J)``;
* :func:`best_weighted_approx_lawson` runs Lawson's iteratively reweighted
  least squares on the weighted residuals.

Both work in an orthonormalized sample basis and report monomial
coefficients.  Samples with ``q = +inf`` carry weight zero and are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .cones import IceCream, hull_lattice_points
from .errors import DomainError
from .exponent_geometry import ExponentSet, LatticeSet, lattice_points
from .lattice_gap import gap_distance
from .lp import minimize_inequality
from .samples import WeightedSampleSet, validate_weight
from .spoly import SPolynomial, build_basis, monomial_matrix

DEFAULT_DIRECTIONS = 32
LAWSON_MAX_ITER = 500
LAWSON_TOL = 1e-10
LAWSON_WEIGHT_FLOOR = 1e-300
_REFINE_PASSES = 4
_REFINE_BELOW = 1e-3

FunctionLike = Callable[[np.ndarray], np.ndarray] | Sequence[complex] | np.ndarray


@dataclass(frozen=True)
class ApproxResult:
    """Outcome of one weighted approximation problem.

    ``d_sample`` is the weighted max residual of ``p`` on the samples;
    ``d_validation`` the same on the validation points.  For the LP solver
    ``lower_bound <= discrete minimax <= upper_bound``.
    """

    m: int
    d_sample: float
    d_validation: float
    p: SPolynomial
    solver: str
    iterations: int
    lower_bound: float | None = None
    upper_bound: float | None = None

    def to_row(self) -> dict:
        root = self.d_sample ** (1.0 / self.m) if self.m > 0 else math.nan
        return {
            "m": self.m,
            "d_sample": self.d_sample,
            "d_validation": self.d_validation,
            "root": root,
            "solver": self.solver,
            "iterations": self.iterations,
        }


@dataclass
class _Problem:
    S: ExponentSet
    m: int
    exponents: LatticeSet
    Q: np.ndarray  # orthonormal basis values at the finite samples
    basis: object
    f: np.ndarray  # target values at the finite samples
    w: np.ndarray  # relative weights e^{-m (q - q_min)} <= 1
    scale: float  # e^{-m q_min}
    vpoints: np.ndarray
    vf: np.ndarray
    vw: np.ndarray  # absolute validation weights


def _sample_values(f: FunctionLike, points: np.ndarray) -> np.ndarray:
    if callable(f):
        return np.asarray(f(points), dtype=complex).reshape(points.shape[0])
    return np.asarray(f, dtype=complex).reshape(points.shape[0])


def _prepare(
    f: FunctionLike,
    samples: WeightedSampleSet,
    S: ExponentSet,
    m: int,
    exponents: Sequence[tuple[int, ...]] | None = None,
    f_validation: Sequence[complex] | None = None,
) -> _Problem:
    if m < 0:
        raise DomainError("m must be nonnegative")
    if samples.dim != S.dim:
        raise DomainError(f"samples live in C^{samples.dim}, exponent set in R^{S.dim}")
    lat = lattice_points(S, m) if exponents is None else LatticeSet(tuple(exponents), m, S)
    validate_weight(samples, len(lat))
    fin = samples.finite
    fv = _sample_values(f, samples.points)
    basis = build_basis(S, m, samples, orthogonalize=True, exponents=lat)
    q = samples.weights[fin]
    q_min = float(q.min())
    w = np.exp(-m * (q - q_min))
    if samples.validation_points is not None:
        vp, vq = samples.validation_points, samples.validation_weights
        if f_validation is not None:
            vf = np.asarray(f_validation, dtype=complex)
        elif callable(f):
            vf = _sample_values(f, vp)
        else:
            vp, vq, vf = samples.points, samples.weights, fv
    else:
        vp, vq, vf = samples.points, samples.weights, fv
    keep = np.isfinite(vq)
    vw = np.exp(-m * vq[keep])
    return _Problem(S, m, lat, basis.orthonormal, basis, fv[fin], w, math.exp(-m * q_min), vp[keep], vf[keep], vw)


def _finish(prob: _Problem, y: np.ndarray, solver: str, iterations: int, lower=None, upper=None) -> ApproxResult:
    resid = np.abs(prob.f - prob.Q @ y) * prob.w
    d_sample = float(resid.max()) * prob.scale if resid.size else 0.0
    coeffs = prob.basis.to_monomial(y)
    p = SPolynomial.from_vector(prob.S, prob.m, prob.exponents.exponents, coeffs, check=False)
    if prob.vpoints.shape[0]:
        pv = monomial_matrix(prob.exponents.exponents, prob.vpoints) @ coeffs
        d_val = float(np.max(np.abs(prob.vf - pv) * prob.vw))
    else:
        d_val = d_sample
    return ApproxResult(prob.m, d_sample, d_val, p, solver, iterations, lower, upper)


# ------------------------------------------------------------ LP solver


def _polygon_lp(Q: np.ndarray, f: np.ndarray, w: np.ndarray, J: int):
    """Rows of ``w Re(e^{i theta_j} (f - Q y)) <= t`` in the variables (Re y, Im y, t)."""
    K, N = Q.shape
    thetas = np.exp(2j * np.pi * np.arange(J) / J)
    CQ = (thetas[:, None, None] * Q[None, :, :]) * w[None, :, None]  # J x K x N
    Cf = (thetas[:, None] * f[None, :]) * w[None, :]
    G = np.concatenate(
        [-CQ.real.reshape(J * K, N), CQ.imag.reshape(J * K, N), -np.ones((J * K, 1))], axis=1
    )
    h = -Cf.real.reshape(J * K)
    return G, h


def best_weighted_approx_lp(
    f: FunctionLike,
    samples: WeightedSampleSet,
    S: ExponentSet,
    m: int,
    directions: int = DEFAULT_DIRECTIONS,
    *,
    exponents: Sequence[tuple[int, ...]] | None = None,
    f_validation=None,
) -> ApproxResult:
    """Polygonal LP relaxation of the discrete weighted minimax problem."""
    if directions < 3:
        raise DomainError("need at least 3 polygon directions")
    prob = _prepare(f, samples, S, m, exponents, f_validation)
    N = prob.Q.shape[1]
    zero_value = float(np.max(np.abs(prob.f) * prob.w)) if prob.f.size else 0.0
    if zero_value == 0.0:
        return _finish(prob, np.zeros(N, dtype=complex), "lp", 0, 0.0, 0.0)
    # The problem is affine in f, so a tiny optimum is refined by solving
    # again for a correction to the normalized residual.
    y = np.zeros(N, dtype=complex)
    c = np.zeros(2 * N + 1)
    c[-1] = 1.0
    iterations = 0
    for _ in range(_REFINE_PASSES):
        r = prob.f - prob.Q @ y
        s = float(np.max(np.abs(r) * prob.w))
        if s == 0.0:
            t_star = 0.0
            break
        G, h = _polygon_lp(prob.Q, r / s, prob.w, directions)
        sol = minimize_inequality(c, G, h)
        iterations += sol.iterations
        y = y + (sol.x[:N] + 1j * sol.x[N : 2 * N]) * s
        t_rel = max(float(np.max(G @ sol.x - h)) + sol.x[-1], 0.0)
        t_star = t_rel * s * prob.scale
        if t_rel > _REFINE_BELOW:
            break
    sec = 1.0 / math.cos(math.pi / directions)
    res = _finish(prob, y, "lp", iterations, t_star, None)
    return ApproxResult(
        res.m, res.d_sample, res.d_validation, res.p, "lp", iterations, t_star, min(res.d_sample, t_star * sec)
    )


# ------------------------------------------------------------ Lawson IRLS


def best_weighted_approx_lawson(
    f: FunctionLike,
    samples: WeightedSampleSet,
    S: ExponentSet,
    m: int,
    max_iter: int = LAWSON_MAX_ITER,
    tol: float = LAWSON_TOL,
    *,
    exponents: Sequence[tuple[int, ...]] | None = None,
    f_validation=None,
) -> ApproxResult:
    """Lawson's algorithm: weighted least squares with weights multiplied by ``|residual|``.

    Stops when the max residual changes by less than ``tol`` relative to
    itself, or after ``max_iter`` iterations, and returns the best iterate.
    """
    prob = _prepare(f, samples, S, m, exponents, f_validation)
    A = prob.Q * prob.w[:, None]
    b = prob.f * prob.w
    K, N = A.shape
    if not b.size or not np.any(b):
        return _finish(prob, np.zeros(N, dtype=complex), "lawson", 0)
    u = np.full(K, 1.0 / K)
    best_y, best_err = None, math.inf
    prev = math.inf
    it = 0
    for it in range(1, max_iter + 1):
        s = np.sqrt(u)
        y = np.linalg.lstsq(A * s[:, None], b * s, rcond=None)[0]
        e = np.abs(b - A @ y)
        err = float(e.max())
        if err < best_err:
            best_err, best_y = err, y
        if err == 0.0 or abs(prev - err) <= tol * err:
            break
        prev = err
        u = u * e
        total = u.sum()
        if total == 0:
            break
        u = np.maximum(u / total, LAWSON_WEIGHT_FLOOR)
    return _finish(prob, best_y, "lawson", it)


# ------------------------------------------------------------ rates


@dataclass(frozen=True)
class RateFit:
    ms: tuple[int, ...]
    roots: tuple[float, ...]
    fitted_rate: float
    slope: float
    window: tuple[int, int]
    zero_flag: bool = False


def decay_rate(
    results: Sequence[ApproxResult] | Sequence[tuple[int, float]], window: tuple[int, int] | None = None
) -> RateFit:
    """Per-``m`` roots ``d_m^(1/m)`` and ``exp(slope)`` of a least-squares fit of ``log d_m`` against ``m``.

    The fit uses the trailing half of the available ``m`` values unless an
    explicit inclusive ``window`` is given.
    """
    pairs = sorted(
        (r.m, r.d_sample) if isinstance(r, ApproxResult) else (int(r[0]), float(r[1])) for r in results
    )
    if len(pairs) < 4:
        raise DomainError("need at least 4 results to fit a rate")
    ms = tuple(m for m, _ in pairs)
    roots = tuple(d ** (1.0 / m) if m > 0 else math.nan for m, d in pairs)
    if window is None:
        window = (ms[len(ms) // 2], ms[-1])
    sel = [(m, d) for m, d in pairs if window[0] <= m <= window[1]]
    if any(d <= 0 for _, d in sel):
        return RateFit(ms, roots, 0.0, -math.inf, window, zero_flag=True)
    if len(sel) < 2:
        raise DomainError("rate window holds fewer than 2 points")
    x = np.array([m for m, _ in sel], dtype=float)
    yv = np.log([d for _, d in sel])
    slope = float(np.polyfit(x, yv, 1)[0])
    return RateFit(ms, roots, math.exp(slope), slope, window)


# ------------------------------------------------------------ hull comparison


@dataclass(frozen=True)
class HullComparison:
    d_S: float
    d_hull: float
    gap: float
    exponents_S: tuple[tuple[int, ...], ...]
    exponents_hull: tuple[tuple[int, ...], ...]
    heuristic: bool
    results: tuple[ApproxResult, ApproxResult] = field(repr=False, default=None)


def hull_approx_comparison(
    f: FunctionLike,
    samples: WeightedSampleSet,
    S: ExponentSet,
    m: int,
    directions: int = DEFAULT_DIRECTIONS,
) -> HullComparison:
    """Approximation numbers over ``m S`` and over ``m`` times its ice-cream-cone hull.

    The cone's opening is ``d_m = gap_distance(S, m)``.  Values are the LP
    optima ``t*``, so the superset of exponents gives ``d_hull <= d_S``.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    gap = gap_distance(S, m)
    own = lattice_points(S, m).exponents
    hull, heuristic = hull_lattice_points(S, IceCream(gap), m)
    res_S = best_weighted_approx_lp(f, samples, S, m, directions, exponents=own)
    if set(hull) == set(own):
        res_H = res_S
    else:
        res_H = best_weighted_approx_lp(f, samples, S, m, directions, exponents=hull)
    return HullComparison(res_S.lower_bound, res_H.lower_bound, gap, own, hull, heuristic, (res_S, res_H))


# ------------------------------------------------------------ diagnostics and output


def convergence_diagnostic(result: ApproxResult, samples: WeightedSampleSet) -> np.ndarray:
    """``d_m e^{m q(z_k)}`` at each sample point (``nan`` where ``q = +inf``).

    A finite-``m`` indicator only: points where this tends to zero as ``m``
    grows belong to the set where the weighted approximation converges,
    but no membership is decided here.
    """
    q = samples.weights
    out = np.full(q.shape, np.nan)
    fin = np.isfinite(q)
    with np.errstate(over="ignore"):
        out[fin] = result.d_sample * np.exp(result.m * q[fin])
    return out


CSV_HEADER = "m,d_sample,d_validation,root,solver,iterations"


def results_to_csv(results: Sequence[ApproxResult]) -> str:
    lines = [CSV_HEADER]
    for r in sorted(results, key=lambda r: r.m):
        row = r.to_row()
        lines.append(
            f"{row['m']},{row['d_sample']!r},{row['d_validation']!r},{row['root']!r},{row['solver']},{row['iterations']}"
        )
    return "\n".join(lines) + "\n"
