"""Dense revised simplex for small-width linear programs.

The solvers in this package all produce problems of the form

    minimize c @ x  subject to  G @ x <= h,   x free,

with few variables (twice the number of monomials, plus one) and many
constraints (sample points times polygon directions).  Rather than pivot on
the tall system, we solve its dual in standard form,

    minimize h @ lam  subject to  G.T @ lam = -c,  lam >= 0,

whose basis matrix is only ``len(x)`` square.  The primal optimum is read
off as the simplex multipliers of the final basis.

Changing ``c`` only changes the right-hand side of the standard form, so
an optimal basis of one problem stays dual feasible for the next one.
:func:`minimize_inequality` accepts such a basis and restarts with the
dual simplex method, which is how grids of Siciak-function values are
evaluated cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import DegenerateSampleError, SolverError

_FEAS_TOL = 1e-10
_OPT_TOL = 1e-11
_PIVOT_TOL = 1e-9
_HARRIS_TOL = 1e-11
_DEGENERATE_STREAK = 50
_REFACTOR = 40
_PERTURBATION = 1e-7
_INFEASIBLE_TOL = 1e-6
_WORKING_FRACTION = 4
_WORKING_MIN = 512


@dataclass(frozen=True)
class LPSolution:
    x: np.ndarray
    value: float
    iterations: int
    basis: tuple[int, ...]


class _Unbounded(Exception):
    pass


class _StandardForm:
    """min cost @ lam  s.t.  A @ lam = b, lam >= 0, with artificial columns appended."""

    def __init__(self, A: np.ndarray, b: np.ndarray, cost: np.ndarray, max_iter: int):
        self.A = A
        self.b = b
        self.cost = cost
        self.r, self.M = A.shape
        self.signs = np.where(b < 0, -1.0, 1.0)
        self.max_iter = max_iter
        self.iterations = 0

    def column(self, j: int) -> np.ndarray:
        if j < self.M:
            return self.A[:, j]
        e = np.zeros(self.r)
        e[j - self.M] = self.signs[j - self.M]
        return e

    def basis_matrix(self, basis: list[int]) -> np.ndarray:
        if max(basis) < self.M:
            return self.A[:, basis]
        return np.column_stack([self.column(j) for j in basis])

    def reduced_costs(self, cost_full: np.ndarray, pi: np.ndarray, with_artificials: bool) -> np.ndarray:
        d = np.empty(self.M + self.r)
        d[: self.M] = cost_full[: self.M] - self.A.T @ pi
        if with_artificials:
            d[self.M :] = cost_full[self.M :] - self.signs * pi
        else:
            d[self.M :] = np.inf
        return d

    def _tick(self):
        self.iterations += 1
        if self.iterations > self.max_iter:
            raise SolverError(f"simplex exceeded {self.max_iter} iterations")

    def primal(self, basis: list[int], cost_full: np.ndarray, with_artificials: bool) -> list[int]:
        scale = 1.0 + float(np.max(np.abs(cost_full[np.isfinite(cost_full)]), initial=0.0))
        bscale = 1.0 + float(np.max(np.abs(self.b)))
        last_obj = np.inf
        streak = 0
        while True:
            self._tick()
            lu = sla.lu_factor(self.basis_matrix(basis))
            xB = sla.lu_solve(lu, self.b)
            pi = sla.lu_solve(lu, cost_full[basis], trans=1)
            d = self.reduced_costs(cost_full, pi, with_artificials)
            d[basis] = 0.0
            obj = float(cost_full[basis] @ xB)
            if with_artificials and obj <= _FEAS_TOL * bscale:
                # phase one is bounded below by zero
                return basis
            streak = streak + 1 if obj >= last_obj - 1e-14 * scale else 0
            last_obj = min(last_obj, obj)
            if streak > _DEGENERATE_STREAK:
                # Bland's rule while stalled
                candidates = np.flatnonzero(d < -_OPT_TOL * scale)
                if candidates.size == 0:
                    return basis
                q = int(candidates[0])
            else:
                q = int(np.argmin(d))
                if d[q] >= -_OPT_TOL * scale:
                    return basis
            u = sla.lu_solve(lu, self.column(q))
            if streak > _DEGENERATE_STREAK:
                leave = _bland_ratio(xB, u, basis)
            else:
                leave = _harris_ratio(xB, u)
            if leave is None:
                raise _Unbounded()
            basis[leave] = q

    def dual(self, basis: list[int]) -> list[int]:
        """Dual simplex from a dual-feasible basis of original columns.

        Keeps an explicit basis inverse with rank-one updates and updates
        the reduced costs incrementally; everything is recomputed from
        scratch every ``_REFACTOR`` pivots.
        """
        cost = self.cost
        scale = 1.0 + float(np.max(np.abs(cost), initial=0.0))
        bscale = 1.0 + float(np.max(np.abs(self.b)))
        since = _REFACTOR
        while True:
            self._tick()
            if since >= _REFACTOR:
                Binv = np.linalg.inv(self.A[:, basis])
                xB = Binv @ self.b
                d = cost - self.A.T @ (Binv.T @ cost[basis])
                d[basis] = 0.0
                np.maximum(d, 0.0, out=d)
                since = 0
            r = int(np.argmin(xB))
            if xB[r] >= -_FEAS_TOL * bscale:
                return basis
            rho = self.A.T @ Binv[r]
            rho[basis] = 0.0
            cand = np.flatnonzero(rho < -_PIVOT_TOL)
            if cand.size == 0:
                raise DegenerateSampleError("dual simplex: standard form is infeasible")
            ratios = d[cand] / -rho[cand]
            best = ratios.min()
            near = cand[ratios <= best + _OPT_TOL * scale]
            q = int(near[np.argmin(rho[near])])
            t = max(d[q], 0.0) / -rho[q]
            leaving = basis[r]
            d += t * rho
            np.maximum(d, 0.0, out=d)
            d[q] = 0.0
            d[leaving] = t
            u = Binv @ self.A[:, q]
            piv = u[r]
            step = xB[r] / piv
            xB -= step * u
            xB[r] = step
            row = Binv[r] / piv
            Binv -= np.outer(u, row)
            Binv[r] = row
            basis[r] = q
            since += 1


def _bland_ratio(xB: np.ndarray, u: np.ndarray, basis: list[int]) -> int | None:
    pos = np.flatnonzero(u > _PIVOT_TOL)
    if pos.size == 0:
        return None
    ratios = np.maximum(xB[pos], 0.0) / u[pos]
    ties = pos[ratios <= ratios.min() + 1e-15]
    return int(min(ties, key=lambda i: basis[i]))


def _harris_ratio(xB: np.ndarray, u: np.ndarray) -> int | None:
    pos = np.flatnonzero(u > _PIVOT_TOL)
    if pos.size == 0:
        return None
    x = np.maximum(xB[pos], 0.0)
    bound = np.min((x + _HARRIS_TOL) / u[pos])
    ok = pos[x / u[pos] <= bound]
    return int(ok[np.argmax(u[ok])])


def minimize_inequality(
    c: np.ndarray,
    G: np.ndarray,
    h: np.ndarray,
    *,
    warm_basis: tuple[int, ...] | None = None,
    max_iter: int = 20000,
) -> LPSolution:
    """Solve ``min c @ x  s.t.  G @ x <= h`` with ``x`` unrestricted in sign.

    Raises DegenerateSampleError when the objective is unbounded below and
    SolverError when the iteration limit is reached.
    """
    c = np.asarray(c, dtype=float)
    G = np.asarray(G, dtype=float)
    h = np.asarray(h, dtype=float)
    sf = _StandardForm(G.T.copy(), -c, h, max_iter)
    r, M = sf.r, sf.M

    basis = None
    if warm_basis is not None and len(warm_basis) == r and all(j < M for j in warm_basis):
        try:
            basis = _restricted_dual(sf, list(warm_basis))
        except (np.linalg.LinAlgError, ValueError, DegenerateSampleError):
            basis = None
    full_cost = np.concatenate([h, np.zeros(r)])
    if basis is None:
        basis = _cold_start(sf, full_cost)
    try:
        basis = sf.primal(basis, full_cost, with_artificials=False)
    except _Unbounded as exc:
        raise SolverError("constraint system is infeasible") from exc

    lu = sla.lu_factor(sf.basis_matrix(basis))
    x = sla.lu_solve(lu, full_cost[basis], trans=1)
    return LPSolution(x=x, value=float(c @ x), iterations=sf.iterations, basis=tuple(basis))


def _phase_one(sf: _StandardForm) -> list[int]:
    r, M = sf.r, sf.M
    phase_one_cost = np.concatenate([np.zeros(M), np.ones(r)])
    try:
        basis = sf.primal(list(range(M, M + r)), phase_one_cost, with_artificials=True)
    except _Unbounded as exc:  # pragma: no cover - phase one is bounded below
        raise SolverError("phase one reported unboundedness") from exc
    lu = sla.lu_factor(sf.basis_matrix(basis))
    infeas = float(phase_one_cost[basis] @ sla.lu_solve(lu, sf.b))
    if infeas > _INFEASIBLE_TOL * (1.0 + float(np.max(np.abs(sf.b)))):
        raise DegenerateSampleError("objective is unbounded on the feasible set; samples do not pin down the space")
    return _drive_out_artificials(sf, basis)


def _cold_start(sf: _StandardForm, full_cost: np.ndarray) -> list[int]:
    """Optimal basis for a randomly perturbed right-hand side.

    The standard forms built here are badly degenerate (``-c`` is usually
    a coordinate vector), which stalls the primal simplex.  Perturbing
    ``b`` removes the ties; the resulting basis stays dual feasible for the
    true ``b``, so the dual simplex finishes the job in a few pivots.  The
    perturbation uses a fixed seed, keeping results deterministic.
    """
    bscale = 1.0 + float(np.max(np.abs(sf.b)))
    rng = np.random.default_rng(0)
    b_pert = sf.b + _PERTURBATION * bscale * rng.uniform(0.5, 1.0, sf.r) * np.where(sf.b < 0, -1.0, 1.0)
    pert = _StandardForm(sf.A, b_pert, sf.cost, sf.max_iter)
    try:
        basis = _phase_one(pert)
        if max(basis) < sf.M:
            basis = pert.primal(basis, full_cost, with_artificials=False)
    except _Unbounded as exc:
        raise SolverError("constraint system is infeasible") from exc
    finally:
        sf.iterations += pert.iterations
    if max(basis) < sf.M:
        sf.max_iter = max(sf.max_iter, sf.iterations + 1000)
        return sf.dual(basis)
    # a redundant row kept an artificial; redo without perturbation
    return _phase_one(sf)


def _restricted_dual(sf: _StandardForm, basis: list[int]) -> list[int]:
    """Dual simplex over a working set of columns with small reduced cost.

    Pricing is the expensive step when there are many more columns than
    rows.  The working set is the warm basis plus the quarter of the columns
    closest to entering; the caller's primal phase then prices all
    columns once and repairs any that the restriction missed.
    """
    size = max(_WORKING_MIN, sf.M // _WORKING_FRACTION)
    if sf.M <= 2 * size:
        return sf.dual(basis)
    Binv = np.linalg.inv(sf.A[:, basis])
    d = sf.cost - sf.A.T @ (Binv.T @ sf.cost[basis])
    d[basis] = np.inf
    near = np.argpartition(d, size)[:size]
    W = np.unique(np.concatenate([np.asarray(basis), near]))
    pos = {int(j): i for i, j in enumerate(W)}
    sub = _StandardForm(sf.A[:, W], sf.b, sf.cost[W], sf.max_iter - sf.iterations)
    try:
        sub_basis = sub.dual([pos[j] for j in basis])
    finally:
        sf.iterations += sub.iterations
    return [int(W[j]) for j in sub_basis]


def _drive_out_artificials(sf: _StandardForm, basis: list[int]) -> list[int]:
    for pos in range(len(basis)):
        if basis[pos] < sf.M:
            continue
        lu = sla.lu_factor(sf.basis_matrix(basis))
        e = np.zeros(sf.r)
        e[pos] = 1.0
        rho = sf.A.T @ sla.lu_solve(lu, e, trans=1)
        rho[[j for j in basis if j < sf.M]] = 0.0
        j = int(np.argmax(np.abs(rho)))
        if abs(rho[j]) > 1e-7:
            basis[pos] = j
        # otherwise the row is redundant and the artificial stays at level zero
    return basis
