"""Distances between ``m S`` and the lattice points outside it.

``d_m = d(m S, N^n minus m S)`` controls the rate constant
``a = liminf d_m^(1/m)``.  For rational polytopes ``d_m`` is bounded below
by a refined-lattice distance ``delta``; for the quarter disc it has the
closed form ``sqrt(m^2 + 1) - m``; for the concave hypographs it is bounded
by ``m (1 - f(1/m))`` and can collapse super-exponentially.

Hypograph gaps underflow double precision already for moderate ``m``
(``e^{-2 m^2}`` for ``b = c = 2``), so distances are carried as logarithms
internally and every report row keeps ``log_d`` next to ``d_m``.

Distances are euclidean.  Note that for the standard simplex in two
variables this gives ``d_m = 1/sqrt(2)`` (the exterior point ``(1, m)``
against the edge ``x1 + x2 = m``), not 1; the value 1 is the sup-norm
distance, or the euclidean one in a single variable.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._rational import ceil_fraction, to_fraction
from .errors import DomainError
from .exponent_geometry import (
    ConcaveHypograph,
    ExponentSet,
    QuarterDisc,
    RationalPolytope,
)

MINIMIZER_TOL = 1e-12
HYPOGRAPH_TOL = 1e-10
HYPOGRAPH_MAX_DEPTH = 200


# ------------------------------------------------------------ point distances


def _log_polytope_distance(S: RationalPolytope, m: int, alpha) -> float:
    if S.dim <= 2:
        d2 = S.sq_distance(tuple(Fraction(a) for a in alpha), m)
        if d2 == 0:
            return -math.inf
        return 0.5 * (math.log(d2.numerator) - math.log(d2.denominator))
    d = _min_norm_point_distance(np.array([[float(c) * m for c in v] for v in S.vertices]), np.asarray(alpha, float))
    return math.log(d) if d > 0 else -math.inf


def _min_norm_point_distance(V: np.ndarray, p: np.ndarray, max_iter: int = 500) -> float:
    """Wolfe's minimum-norm-point algorithm on the translated polytope ``V - p``."""
    P = V - p
    k = int(np.argmin(np.einsum("ij,ij->i", P, P)))
    active = [k]
    lam = np.array([1.0])
    eps = 1e-12
    for _ in range(max_iter):
        x = lam @ P[active]
        j = int(np.argmin(P @ x))
        if x @ x - P[j] @ x <= eps * max(1.0, np.max(np.einsum("ij,ij->i", P, P))) or j in active:
            break
        active.append(j)
        lam = np.append(lam, 0.0)
        while True:
            Q = P[active]
            # affine minimizer of the active points
            n = len(active)
            A = np.zeros((n + 1, n + 1))
            A[:n, :n] = Q @ Q.T
            A[:n, n] = 1.0
            A[n, :n] = 1.0
            rhs = np.zeros(n + 1)
            rhs[n] = 1.0
            mu = np.linalg.lstsq(A, rhs, rcond=None)[0][:n]
            if np.all(mu > eps):
                lam = mu
                break
            mask = mu <= eps
            theta = np.min(lam[mask] / (lam[mask] - mu[mask]))
            lam = theta * mu + (1 - theta) * lam
            keep = lam > eps
            active = [a for a, k_ in zip(active, keep) if k_]
            lam = lam[keep]
            lam = lam / lam.sum()
    x = lam @ P[active]
    return float(np.sqrt(x @ x))


def hypograph_log_distance(S: ConcaveHypograph, x0: float, y0: float, y0_minus_1: float | None = None) -> float:
    """``log d(S, (x0, y0))`` in the unit scale; ``-inf`` for points of S.

    ``y0_minus_1`` may be passed exactly when ``y0`` is close to 1, which is
    where all the small gaps live.
    """
    dy = (y0 - 1.0) if y0_minus_1 is None else y0_minus_1
    if x0 <= 0:
        # nearest point lies on the left edge {0} x [0, 1]
        dx = -x0
        vy = max(dy, 0.0) if y0 >= 0 else -y0
        d = math.hypot(dx, vy)
        return math.log(d) if d > 0 else -math.inf
    if y0 <= 0 and x0 <= 1:
        return math.log(-y0) if y0 < 0 else -math.inf
    if x0 >= 1:
        return _hypograph_far_right(S, x0, y0)
    # 0 < x0 < 1, y0 > 0
    if dy < 0 and math.log(-dy) >= S.log_deficit(x0):
        return -math.inf  # on or below the graph
    # vertical excess over the graph, as a function of gamma
    def excess(g: float) -> float:
        return dy + math.exp(S.log_deficit(g)) if g > 0 else dy

    lo = S.inverse_f(y0) if dy < 0 else 0.0
    hi = x0
    # normal condition: gamma - x0 + (-f'(gamma)) (y0 - f(gamma)) = 0, increasing in gamma
    for _ in range(HYPOGRAPH_MAX_DEPTH):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if mid - x0 + S.neg_fprime(mid) * excess(mid) < 0:
            lo = mid
        else:
            hi = mid
    g = 0.5 * (lo + hi)
    slope = S.neg_fprime(g)
    if dy == 0.0:
        log_vert = S.log_deficit(g)
    else:
        vert = excess(g)
        if vert <= 0:
            return -math.inf
        log_vert = math.log(vert)
    # the displacement is vertical excess times the unit-free normal (f', -1) length
    log_d = log_vert + 0.5 * math.log1p(slope * slope)
    # corner (0, 1) competes when the point is above the top edge
    if dy > 0:
        log_d = min(log_d, math.log(math.hypot(x0, dy)))
    return log_d


def _hypograph_far_right(S: ConcaveHypograph, x0: float, y0: float) -> float:
    """Distance for ``x0 >= 1``: dense scan plus golden refinement over the boundary."""
    # (1, 0) is the nearest point of S below the graph's right end
    cands = [math.hypot(x0 - 1.0, y0)]
    gs = np.linspace(0.0, 1.0, 2049)
    fs = np.array([S.f(g) for g in gs])
    d2 = (x0 - gs) ** 2 + (y0 - fs) ** 2
    k = int(np.argmin(d2))
    a, b = gs[max(k - 1, 0)], gs[min(k + 1, len(gs) - 1)]
    sq = lambda g: (x0 - g) ** 2 + (y0 - S.f(g)) ** 2  # noqa: E731
    g = golden_section_min(sq, a, b, tol=1e-14)
    cands.append(math.sqrt(min(sq(g), d2[k])))
    d = min(cands)
    return math.log(d) if d > 0 else -math.inf


_INVPHI = (math.sqrt(5) - 1) / 2


def golden_section_min(fn, a: float, b: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Minimizer of a unimodal function on ``[a, b]``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def log_point_set_distance(S: ExponentSet, m: int, alpha: Sequence[int]) -> float:
    """``log d(alpha, m S)``; ``-inf`` when ``alpha`` lies in ``m S``."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != S.dim:
        raise DomainError("dimension mismatch")
    if m == 0:
        n2 = sum(a * a for a in alpha)
        return 0.5 * math.log(n2) if n2 else -math.inf
    if isinstance(S, RationalPolytope):
        return _log_polytope_distance(S, m, alpha)
    if isinstance(S, QuarterDisc):
        if S.contains_lattice(alpha, m):
            return -math.inf
        a1, a2 = alpha
        R = m * S.radius
        if a1 < 0 or a2 < 0:
            return math.log(S._float_distance((float(a1), float(a2)), float(R)))
        # |alpha| - R = (|alpha|^2 - R^2) / (|alpha| + R), free of cancellation
        num = Fraction(a1 * a1 + a2 * a2) - R * R
        return math.log(float(num) / (math.hypot(a1, a2) + float(R)))
    if isinstance(S, ConcaveHypograph):
        if S.contains_lattice(alpha, m):
            return -math.inf
        a1, a2 = alpha
        lu = hypograph_log_distance(S, a1 / m, a2 / m, (a2 - m) / m)
        return math.log(m) + lu
    raise TypeError(f"unsupported exponent set {type(S).__name__}")


def point_set_distance(S: ExponentSet, m: int, alpha: Sequence[int]) -> float:
    """Euclidean distance from the lattice point ``alpha`` to ``m S``."""
    ld = log_point_set_distance(S, m, alpha)
    return 0.0 if ld == -math.inf else math.exp(ld)


# ------------------------------------------------------------ gap search


@dataclass(frozen=True)
class GapSearch:
    """Result of the exterior-lattice-point search for one ``m``."""

    m: int
    distance: float
    log_distance: float
    minimizers: tuple[tuple[int, ...], ...]
    box: tuple[int, ...]


def _initial_upper_bound(S: ExponentSet, m: int) -> float:
    """Distance of ``(ceil(m max_j) + 1) e_j``, an exterior point in every coordinate direction."""
    best = math.inf
    for j, M in enumerate(S.max_coordinates()):
        alpha = [0] * S.dim
        alpha[j] = ceil_fraction(m * to_fraction(M)) + 1
        best = min(best, point_set_distance(S, m, alpha))
    return best


def gap_search(S: ExponentSet, m: int) -> GapSearch:
    """Minimize the distance to ``m S`` over exterior lattice points."""
    if m < 1:
        raise DomainError("m must be at least 1")
    u = _initial_upper_bound(S, m)
    inflate = max(1, math.ceil(u))
    ranges = [range(0, ceil_fraction(m * to_fraction(M)) + inflate + 1) for M in S.max_coordinates()]
    return _scan(S, m, ranges)


def _scan(S: ExponentSet, m: int, ranges) -> GapSearch:
    best = math.inf
    found: list[tuple[tuple[int, ...], float]] = []
    for alpha in itertools.product(*ranges):
        if S.contains_lattice(alpha, m):
            continue
        ld = log_point_set_distance(S, m, alpha)
        found.append((alpha, ld))
        best = min(best, ld)
    # relative tolerance, so underflowing hypograph gaps still single out their minimizers
    mins = tuple(a for a, ld in found if ld - best <= MINIMIZER_TOL)
    return GapSearch(m, math.exp(best), best, mins, tuple(len(r) for r in ranges))


def gap_distance(S: ExponentSet, m: int) -> float:
    """``d(m S, N^n minus m S)``."""
    return gap_search(S, m).distance


def brute_force_gap(S: ExponentSet, m: int, inflate: int = 3) -> GapSearch:
    """Unpruned scan of the bounding box of ``m S`` inflated by ``inflate``."""
    ranges = [range(0, ceil_fraction(m * to_fraction(M)) + inflate + 1) for M in S.max_coordinates()]
    return _scan(S, m, ranges)


# ------------------------------------------------------------ closed forms and bounds


def disc_gap_exact(m: int) -> float:
    """``sqrt(m^2 + 1) - m`` for the unit quarter disc, as ``1 / (sqrt(m^2 + 1) + m)``."""
    if m < 1:
        raise DomainError("m must be at least 1")
    return 1.0 / (math.sqrt(m * m + 1) + m)


def _check_hypograph_params(b: float, c: float) -> None:
    if not (b > 0 and c > 1 + 1 / b):
        raise DomainError(f"need b > 0 and c > 1 + 1/b (got b={b}, c={c})")


def hypograph_log_gap_bound(b: float, c: float, m: int) -> float:
    """``log(m (1 - f(1/m))) = log m + c - c m^b``."""
    _check_hypograph_params(b, c)
    if m < 1:
        raise DomainError("m must be at least 1")
    return math.log(m) + c - c * m**b


def hypograph_gap_bound(b: float, c: float, m: int) -> float:
    """Upper bound ``m (1 - f(1/m)) = m e^{c - c m^b}`` on the hypograph gap."""
    return math.exp(hypograph_log_gap_bound(b, c, m))


def hypograph_deficit_root(b: float, c: float, m: int) -> float:
    """``(1 - f(1/m))^(1/m) = e^{c/m - c m^(b-1)}``; tends to 0, ``e^-c`` or 1 as b >, =, < 1."""
    _check_hypograph_params(b, c)
    return math.exp(c / m - c * m ** (b - 1))


# ------------------------------------------------------------ refined-lattice delta


@dataclass(frozen=True)
class PolytopeDelta:
    delta: float
    common_denominator: int
    nearest: tuple[Fraction, ...]


def polytope_delta(S: RationalPolytope) -> PolytopeDelta:
    """``delta = d(S, (1/(n q)) Z^n minus S)`` with ``q`` the common vertex denominator.

    Scaling by ``N = n q`` turns this into an integer-lattice problem for
    ``N S`` in which negative coordinates are allowed.  The exterior point
    ``-e_1 / N`` shows ``delta <= 1/N``, so inflating the bounding box by
    one refined step is enough.
    """
    if not isinstance(S, RationalPolytope):
        raise DomainError("delta is defined for rational polytopes")
    q = S.common_denominator()
    N = S.dim * q
    best_sq = None
    best_pt = None
    ranges = [range(-1, ceil_fraction(N * M) + 2) for M in S.max_coordinates()]
    for k in itertools.product(*ranges):
        kq = tuple(Fraction(v) for v in k)
        if S._exact_contains(kq, N):
            continue
        d2 = _scaled_sq_distance(S, kq, N)
        if best_sq is None or d2 < best_sq:
            best_sq, best_pt = d2, kq
    delta = math.sqrt(float(best_sq)) / N
    return PolytopeDelta(delta, q, tuple(c / N for c in best_pt))


def _scaled_sq_distance(S: RationalPolytope, kq, N) -> Fraction | float:
    if S.dim <= 2:
        return S.sq_distance(kq, N)
    V = np.array([[float(c) * N for c in v] for v in S.vertices])
    return _min_norm_point_distance(V, np.array([float(c) for c in kq])) ** 2


# ------------------------------------------------------------ reports


@dataclass(frozen=True)
class GapRow:
    m: int
    d_m: float
    root: float
    log_d: float
    minimizers: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class GapReport:
    rows: tuple[GapRow, ...]
    a_estimate: float
    delta: float | None = None
    bound_rows: tuple[tuple[int, float], ...] | None = None
    log_bound_rows: tuple[tuple[int, float], ...] | None = field(default=None, repr=False)

    def to_csv(self) -> str:
        bounds = dict(self.bound_rows or ())
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "d_m", "root", "delta", "bound"])
        for r in self.rows:
            w.writerow([
                r.m,
                repr(r.d_m),
                repr(r.root),
                "" if self.delta is None else repr(self.delta),
                repr(bounds[r.m]) if r.m in bounds else "",
            ])
        return buf.getvalue()

    def to_dict(self) -> dict:
        d = asdict(self)
        for row in d["rows"]:
            row["minimizers"] = [list(a) for a in row["minimizers"]]
            if row["log_d"] == -math.inf:
                row["log_d"] = None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _row(S: ExponentSet, m: int) -> GapRow:
    g = gap_search(S, m)
    return GapRow(m, g.distance, math.exp(g.log_distance / m), g.log_distance, g.minimizers)


def gap_rate_report(S: ExponentSet, m_max: int, workers: int = 1) -> GapReport:
    """Rows ``(m, d_m, d_m^(1/m))`` for ``m = 1..m_max`` and a finite-window rate proxy.

    ``a_estimate`` is the minimum root over ``[ceil(m_max / 2), m_max]``,
    a stand-in for the liminf that cannot be computed.
    """
    if m_max < 1:
        raise DomainError("m_max must be at least 1")
    ms = list(range(1, m_max + 1))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, [S] * len(ms), ms))
    else:
        rows = [_row(S, m) for m in ms]
    rows.sort(key=lambda r: r.m)
    lo = math.ceil(m_max / 2)
    a_est = min(r.root for r in rows if r.m >= lo)
    delta = polytope_delta(S).delta if isinstance(S, RationalPolytope) else None
    bound_rows = log_bounds = None
    if isinstance(S, ConcaveHypograph):
        log_bounds = tuple((m, hypograph_log_gap_bound(S.b, S.c, m)) for m in ms)
        bound_rows = tuple((m, math.exp(v)) for m, v in log_bounds)
    return GapReport(tuple(rows), a_est, delta, bound_rows, log_bounds)
