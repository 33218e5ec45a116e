"""Closed convex cones and cone hulls of exponent sets.

The hull of S with respect to a cone G is

    {x >= 0 : <x, xi> <= phi_S(xi) for every xi in G},

which contains S and shrinks as G grows.  Membership is decided by
maximizing ``<x, xi> - phi_S(xi)`` over unit directions in G.  In two
variables the unit circle is scanned on a fixed angular grid and the best
cells are refined by golden-section search, which certifies the sign up
to the declared tolerance.  In three or more variables only quasi-random
directions are scanned and the answer is flagged heuristic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from ._rational import to_fraction
from .errors import DomainError
from .exponent_geometry import ExponentSet, bounding_box
from .lattice_gap import golden_section_min

ANGLE_GRID = 4096
MARGIN_TOL = 1e-9
REFINE_CELLS = 3
HIGH_DIM_DIRECTIONS = 2**17


class Cone:
    """A closed convex cone in R^n, described by a membership predicate."""

    def contains(self, xi: np.ndarray) -> np.ndarray:
        """Boolean mask over the rows of ``xi``."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FullSpace(Cone):
    def contains(self, xi):
        return np.ones(np.atleast_2d(xi).shape[0], dtype=bool)

    def to_json(self):
        return {"variant": "FullSpace"}


@dataclass(frozen=True)
class OrthantComplement(Cone):
    """``(R^n minus R^n_-) ∪ {0}``, taken with its closure for suprema."""

    def contains(self, xi):
        # closure: some coordinate nonnegative
        xi = np.atleast_2d(xi)
        return (xi >= -1e-15 * np.linalg.norm(xi, axis=1)[:, None]).any(axis=1)

    def to_json(self):
        return {"variant": "OrthantComplement"}


@dataclass(frozen=True)
class HalfspaceIntersection(Cone):
    """``{xi : <a_i, xi> >= 0 for every normal a_i}``."""

    normals: tuple[tuple[float, ...], ...]

    def __init__(self, normals: Sequence[Sequence[float]]):
        object.__setattr__(self, "normals", tuple(tuple(float(to_fraction(c)) for c in a) for a in normals))

    def contains(self, xi):
        xi = np.atleast_2d(xi)
        if not self.normals:
            return np.ones(xi.shape[0], dtype=bool)
        A = np.array(self.normals)
        scale = np.linalg.norm(xi, axis=1) * np.linalg.norm(A, axis=1).max()
        return ((xi @ A.T) >= -1e-15 * scale[:, None]).all(axis=1)

    def to_json(self):
        return {"variant": "HalfspaceIntersection", "normals": [list(a) for a in self.normals]}


@dataclass(frozen=True)
class IceCream(Cone):
    """``{xi : <1, xi> >= -gap/2 * |xi|}``; always contains the diagonal ray."""

    gap: float

    def __post_init__(self):
        if not (self.gap >= 0 and math.isfinite(self.gap)):
            raise DomainError("gap must be a finite nonnegative number")

    def contains(self, xi):
        xi = np.atleast_2d(xi)
        norm = np.linalg.norm(xi, axis=1)
        return xi.sum(axis=1) >= -0.5 * self.gap * norm - 1e-15 * norm

    def to_json(self):
        return {"variant": "IceCream", "gap": self.gap}


@dataclass(frozen=True)
class HullMembership:
    inside: bool
    margin: float
    direction: tuple[float, ...]
    heuristic: bool

    def __bool__(self) -> bool:
        return self.inside


class HullTester:
    """Precomputes support values on a direction grid for repeated hull tests."""

    def __init__(self, S: ExponentSet, cone: Cone, grid: int = ANGLE_GRID):
        self.S = S
        self.cone = cone
        self.grid = grid
        self.heuristic = S.dim >= 3
        if S.dim == 1:
            dirs = np.array([[1.0], [-1.0]])
        elif S.dim == 2:
            th = 2 * np.pi * np.arange(grid) / grid
            dirs = np.column_stack([np.cos(th), np.sin(th)])
        else:
            n_dirs = max(grid, HIGH_DIM_DIRECTIONS)
            u = qmc.Sobol(d=S.dim, scramble=True, seed=12345).random(n_dirs)
            g = ndtri(np.clip(u, 1e-12, 1 - 1e-12))
            dirs = g / np.linalg.norm(g, axis=1, keepdims=True)
        self.feasible = cone.contains(dirs)
        self.dirs = dirs
        self.phi = np.where(self.feasible, S.support_many(dirs), np.nan)

    def _angle_feasible(self, th: float) -> bool:
        return bool(self.cone.contains(np.array([[math.cos(th), math.sin(th)]]))[0])

    def _objective(self, x: np.ndarray, scale: float, th: float) -> float:
        xi = np.array([math.cos(th), math.sin(th)])
        return float(x @ xi - scale * self.S.support_many(xi[None, :])[0])

    def _feasible_edge(self, inside: float, outside: float) -> float:
        # bisect the cone boundary between a feasible and an infeasible angle
        for _ in range(60):
            mid = 0.5 * (inside + outside)
            if self._angle_feasible(mid):
                inside = mid
            else:
                outside = mid
        return inside

    def test(self, x: Sequence, scale: int = 1, tol: float = MARGIN_TOL) -> HullMembership:
        """Is ``x`` in ``scale`` times the hull?"""
        xf = np.array([float(to_fraction(v)) for v in x])
        if xf.shape[0] != self.S.dim:
            raise DomainError("dimension mismatch")
        if (xf < 0).any():
            nearest = np.maximum(xf, 0.0)
            return HullMembership(False, float(np.linalg.norm(xf - nearest)), tuple(-(xf < 0).astype(float)), False)
        if not self.feasible.any():
            return HullMembership(True, -math.inf, (), self.heuristic)
        vals = self.dirs @ xf - scale * self.phi
        vals = np.where(self.feasible, vals, -np.inf)
        best_i = int(np.argmax(vals))
        best, best_dir = float(vals[best_i]), self.dirs[best_i]
        if self.S.dim == 2:
            order = np.argsort(vals)[::-1][:REFINE_CELLS]
            step = 2 * np.pi / self.grid
            for i in order:
                if not np.isfinite(vals[i]):
                    continue
                th = 2 * np.pi * i / self.grid
                lo, hi = th - step, th + step
                if not self._angle_feasible(lo):
                    lo = self._feasible_edge(th, lo)
                if not self._angle_feasible(hi):
                    hi = self._feasible_edge(th, hi)
                t = golden_section_min(lambda a: -self._objective(xf, scale, a), lo, hi, tol=1e-13)
                for cand in (t, lo, hi):
                    v = self._objective(xf, scale, cand)
                    if v > best:
                        best, best_dir = v, np.array([math.cos(cand), math.sin(cand)])
        return HullMembership(best <= tol, best, tuple(float(c) for c in best_dir), self.heuristic)


def cone_hull_membership(
    S: ExponentSet, cone: Cone, x: Sequence, grid: int = ANGLE_GRID, scale: int = 1
) -> HullMembership:
    """Decide ``x in scale * hull_cone(S)``; ``margin`` is the maximal violation found."""
    return HullTester(S, cone, grid).test(x, scale)


def hull_lattice_points(S: ExponentSet, cone: Cone, m: int, grid: int = ANGLE_GRID) -> tuple[tuple[int, ...], bool]:
    """Integer points of ``m`` times the cone hull, plus the heuristic flag.

    The hull lies in the box ``[0, phi_S(e_j)]`` whenever the cone contains
    every coordinate direction, which is the case for ice-cream cones.
    """
    basis = np.eye(S.dim)
    if not cone.contains(basis).all():
        raise DomainError("hull enumeration needs every coordinate direction inside the cone")
    tester = HullTester(S, cone, grid)
    pts = []
    for alpha in itertools.product(*bounding_box(S, m)):
        if S.contains_lattice(alpha, m) or tester.test(alpha, scale=m):
            pts.append(tuple(alpha))
    return tuple(pts), tester.heuristic
