"""Siciak functions, the polynomial proxy of the extremal function, and sublevel sets.

``Phi_m(z)`` is the largest ``|p(z)|^(1/m)`` over S-polynomials with
``|p| e^{-m q} <= 1`` on the samples.  The constraint set is invariant
under ``p -> e^{it} p``, so it is enough to maximize ``Re p(z)``.  The
modulus constraint is replaced by ``J`` half-planes, i.e. ``|p|`` by the
gauge of a circumscribed ``J``-gon, which enlarges the feasible set by at
most ``sec(pi/J)``.  With ``opt`` the LP optimum,

    (opt cos(pi/J))^(1/m) <= Phi_m(z) on the samples <= opt^(1/m).

Everything computed here is a finite-``m`` lower approximant of the
extremal function.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .approx import DEFAULT_DIRECTIONS
from .errors import DomainError
from .exponent_geometry import ExponentSet, lattice_points
from .lp import minimize_inequality
from .samples import WeightedSampleSet, validate_weight
from .spoly import SPolynomial, build_basis, monomial_matrix


@dataclass(frozen=True)
class SiciakValue:
    """``phi = opt^(1/m)``; ``lower = (opt cos(pi/J))^(1/m)``."""

    m: int
    phi: float
    lower: float
    opt: float
    p: SPolynomial | None
    iterations: int

    def __float__(self) -> float:
        return self.phi


class SiciakProblem:
    """The LP constraints for one ``(S, samples, m, J)``, reusable across points ``z``."""

    def __init__(self, S: ExponentSet, samples: WeightedSampleSet, m: int, directions: int = DEFAULT_DIRECTIONS):
        if m < 1:
            raise DomainError("m must be at least 1")
        if directions < 3:
            raise DomainError("need at least 3 polygon directions")
        if samples.dim != S.dim:
            raise DomainError(f"samples live in C^{samples.dim}, exponent set in R^{S.dim}")
        self.S, self.m, self.J = S, m, directions
        self.exponents = lattice_points(S, m)
        validate_weight(samples, len(self.exponents))
        self.basis = build_basis(S, m, samples, orthogonalize=True, exponents=self.exponents)
        q = samples.weights[samples.finite]
        self.q_min = float(q.min())
        w = np.exp(-m * (q - self.q_min))
        Q = self.basis.orthonormal
        K, N = Q.shape
        self.N = N
        rot = np.exp(2j * np.pi * np.arange(directions) / directions)
        CQ = (rot[:, None, None] * Q[None, :, :]) * w[None, :, None]
        self.G = np.concatenate([CQ.real.reshape(-1, N), -CQ.imag.reshape(-1, N)], axis=1)
        self.h = np.ones(self.G.shape[0])
        self.warm: tuple[int, ...] | None = None

    def _objective_row(self, z: Sequence[complex]) -> np.ndarray:
        from scipy.linalg import solve_triangular

        zrow = np.asarray(z, dtype=complex).reshape(1, self.S.dim)
        v = monomial_matrix(self.exponents.exponents, zrow)[0]
        # p(z) = v @ R^{-1} y
        return solve_triangular(self.basis.orthogonal_factor, v, lower=False, trans="T")

    def solve(self, z: Sequence[complex], warm: bool = True, with_polynomial: bool = False) -> SiciakValue:
        g = self._objective_row(z)
        scale = float(np.max(np.abs(g)))
        m = self.m
        if scale == 0.0:
            return SiciakValue(m, 0.0, 0.0, 0.0, None, 0)
        c = -np.concatenate([g.real, -g.imag]) / scale
        sol = minimize_inequality(c, self.G, self.h, warm_basis=self.warm if warm else None)
        self.warm = sol.basis
        opt_rel = max(-sol.value, 0.0) * scale
        # undo the weight normalization: |p| e^{-m q} <= 1 with q = q_min + (q - q_min)
        log_opt = math.log(opt_rel) + m * self.q_min if opt_rel > 0 else -math.inf
        phi = math.exp(log_opt / m) if opt_rel > 0 else 0.0
        lower = math.exp((log_opt + math.log(math.cos(math.pi / self.J))) / m) if opt_rel > 0 else 0.0
        p = None
        if with_polynomial:
            y = (sol.x[: self.N] + 1j * sol.x[self.N :]) * math.exp(m * self.q_min)
            coeffs = self.basis.to_monomial(y)
            p = SPolynomial.from_vector(self.S, m, self.exponents.exponents, coeffs, check=False)
        return SiciakValue(m, phi, lower, math.exp(log_opt) if opt_rel > 0 else 0.0, p, sol.iterations)


def siciak_phi(
    S: ExponentSet,
    samples: WeightedSampleSet,
    m: int,
    z: Sequence[complex],
    directions: int = DEFAULT_DIRECTIONS,
) -> SiciakValue:
    """Polygonal-relaxation value of the Siciak function at ``z``; see :class:`SiciakValue`."""
    return SiciakProblem(S, samples, m, directions).solve(z, warm=False, with_polynomial=True)


@dataclass(frozen=True)
class VApprox:
    value: float
    per_m: dict[int, float]
    density_caveat: bool

    def __float__(self) -> float:
        return self.value


def v_approx(
    S: ExponentSet,
    samples: WeightedSampleSet,
    m_list: Sequence[int],
    z: Sequence[complex],
    directions: int = DEFAULT_DIRECTIONS,
) -> VApprox:
    """``max_m (1/m) log Phi_m(z)`` over ``m_list``.

    ``density_caveat`` is set when S might lack dense rational points, in
    which case the proxy need not converge to the extremal function.
    """
    if not m_list:
        raise DomainError("m_list must be nonempty")
    per_m = {}
    for m in sorted(set(int(m) for m in m_list)):
        phi = siciak_phi(S, samples, m, z, directions).phi
        per_m[m] = math.log(phi) if phi > 0 else -math.inf
    return VApprox(max(per_m.values()), per_m, not S.rational_points_dense())


# ------------------------------------------------------------ fields


@dataclass(frozen=True)
class SiciakField:
    """Values of ``Phi_m`` on a grid and the induced classification ``v_hat < log R``.

    Because ``v_hat`` never exceeds the extremal function, the points marked
    inside form an outer approximation of the sublevel set.
    """

    grid: np.ndarray  # points x n, complex
    m_list: tuple[int, ...]
    values: np.ndarray  # points x len(m_list), Phi_m
    v_hat: np.ndarray
    R: float | None
    inside: np.ndarray | None

    def to_csv(self) -> str:
        n = self.grid.shape[1]
        cols = []
        for j in range(1, n + 1):
            cols += [f"re(z{j})", f"im(z{j})"]
        cols += ["v_hat", "inside"]
        lines = [",".join(cols)]
        for k in range(self.grid.shape[0]):
            parts = []
            for zj in self.grid[k]:
                parts += [repr(float(zj.real)), repr(float(zj.imag))]
            parts.append(repr(float(self.v_hat[k])))
            parts.append("" if self.inside is None else str(int(self.inside[k])))
            lines.append(",".join(parts))
        return "\n".join(lines) + "\n"


def _field_chunk(args) -> np.ndarray:
    S, samples, m, directions, pts = args
    prob = SiciakProblem(S, samples, m, directions)
    return np.array([prob.solve(z).phi for z in pts])


def siciak_field(
    S: ExponentSet,
    samples: WeightedSampleSet,
    m_list: Sequence[int],
    grid: Sequence[Sequence[complex]] | np.ndarray,
    R: float | None = None,
    directions: int = DEFAULT_DIRECTIONS,
    workers: int = 1,
) -> SiciakField:
    """Evaluate ``Phi_m`` for every ``m`` in ``m_list`` at every grid point.

    Consecutive grid points reuse the previous optimal basis, so grids
    that vary smoothly are cheap.  With ``workers > 1`` contiguous chunks
    run in separate processes; results do not depend on ``workers`` beyond
    the warm-start path, which only affects pivoting, not optima.
    """
    if not m_list:
        raise DomainError("m_list must be nonempty")
    if R is not None and not R > 0:
        raise DomainError("R must be positive")
    pts = np.asarray(grid, dtype=complex)
    if pts.ndim == 1:
        pts = pts[:, None]
    ms = tuple(sorted(set(int(m) for m in m_list)))
    values = np.empty((pts.shape[0], len(ms)))
    for i, m in enumerate(ms):
        if workers <= 1 or pts.shape[0] < 2 * workers:
            values[:, i] = _field_chunk((S, samples, m, directions, pts))
        else:
            chunks = np.array_split(pts, workers)
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(_field_chunk, [(S, samples, m, directions, c) for c in chunks]))
            values[:, i] = np.concatenate(parts)
    with np.errstate(divide="ignore"):
        v_hat = np.max(np.log(values), axis=1)
    inside = None if R is None else v_hat < math.log(R)
    return SiciakField(pts, ms, values, v_hat, R, inside)


def sublevel_classify(
    S: ExponentSet,
    samples: WeightedSampleSet,
    m_list: Sequence[int],
    grid,
    R: float,
    directions: int = DEFAULT_DIRECTIONS,
    workers: int = 1,
) -> SiciakField:
    """Mark grid points with ``v_hat(z) < log R``: an outer approximation of the sublevel set."""
    if not R > 0:
        raise DomainError("R must be positive")
    return siciak_field(S, samples, m_list, grid, R, directions, workers)
