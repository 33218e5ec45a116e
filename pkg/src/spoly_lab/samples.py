"""Discretized compact sets with weights, and builtin generators."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, InadmissibleWeightError


@dataclass(frozen=True)
class WeightedSampleSet:
    """Points ``z_k`` of a compact K with weight values ``q(z_k)``.

    Weights may be ``+inf``; such points drop out of every weighted norm.
    Lower semicontinuity of the underlying weight is the caller's business.
    """

    points: np.ndarray
    weights: np.ndarray
    validation_points: np.ndarray | None = None
    validation_weights: np.ndarray | None = None
    label: str = ""

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=complex))
        if pts.shape[0] == 1 and np.ndim(self.points) == 1:
            pts = pts.T  # a flat list means one variable
        w = np.broadcast_to(np.asarray(self.weights, dtype=float), (pts.shape[0],)).copy()
        if np.isnan(w).any() or (w == -np.inf).any():
            raise DomainError("weights must be real or +inf")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        if self.validation_points is not None:
            vp = np.asarray(self.validation_points, dtype=complex)
            if vp.ndim == 1:
                vp = vp[:, None]
            vw = (
                np.zeros(vp.shape[0])
                if self.validation_weights is None
                else np.broadcast_to(np.asarray(self.validation_weights, dtype=float), (vp.shape[0],)).copy()
            )
            object.__setattr__(self, "validation_points", vp)
            object.__setattr__(self, "validation_weights", vw)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def finite(self) -> np.ndarray:
        return np.isfinite(self.weights)

    def with_weights(self, weights, validation_weights=None) -> "WeightedSampleSet":
        return WeightedSampleSet(
            self.points,
            weights,
            self.validation_points,
            validation_weights if validation_weights is not None else self.validation_weights,
            self.label,
        )

    def shifted(self, c: float) -> "WeightedSampleSet":
        """Same points with ``q`` replaced by ``q + c``."""
        vw = None if self.validation_weights is None else self.validation_weights + c
        return WeightedSampleSet(self.points, self.weights + c, self.validation_points, vw, self.label)


# ------------------------------------------------------------ generators


def _weights_for(points: np.ndarray, weight: Callable[[np.ndarray], np.ndarray] | float | None) -> np.ndarray:
    if weight is None:
        return np.zeros(points.shape[0])
    if callable(weight):
        return np.asarray(weight(points), dtype=float)
    return np.full(points.shape[0], float(weight))


def circle(n_points: int, radius: float = 1.0, center: complex = 0.0, weight=None, validation: int = 0) -> WeightedSampleSet:
    """Equispaced points on a circle in the plane (one variable)."""
    if n_points < 1:
        raise DomainError("n_points must be positive")
    z = center + radius * np.exp(2j * np.pi * np.arange(n_points) / n_points)
    pts = z[:, None]
    vp = None
    if validation:
        vz = center + radius * np.exp(2j * np.pi * (np.arange(validation) + 0.5) / validation)
        vp = np.concatenate([pts, vz[:, None]])
    return WeightedSampleSet(
        pts, _weights_for(pts, weight), vp, None if vp is None else _weights_for(vp, weight), f"circle({n_points})"
    )


def torus(n1: int, n2: int, radii: tuple[float, float] = (1.0, 1.0), weight=None) -> WeightedSampleSet:
    """Product grid on the torus ``|z1| = r1, |z2| = r2``."""
    a = radii[0] * np.exp(2j * np.pi * np.arange(n1) / n1)
    b = radii[1] * np.exp(2j * np.pi * np.arange(n2) / n2)
    pts = np.array([(x, y) for x in a for y in b], dtype=complex)
    return WeightedSampleSet(pts, _weights_for(pts, weight), label=f"torus({n1},{n2})")


def segment(n_points: int, a: float = -1.0, b: float = 1.0, weight=None) -> WeightedSampleSet:
    """Chebyshev points on the real segment ``[a, b]``."""
    k = np.arange(n_points)
    x = 0.5 * (a + b) + 0.5 * (b - a) * np.cos(np.pi * (k + 0.5) / n_points)
    pts = x.astype(complex)[:, None]
    return WeightedSampleSet(pts, _weights_for(pts, weight), label=f"segment({n_points})")


def disc_grid(n_points: int, radius: float = 1.0, weight=None) -> WeightedSampleSet:
    """Square grid points inside a closed disc (one variable)."""
    side = max(2, int(math.ceil(math.sqrt(4 * n_points / math.pi))))
    xs = np.linspace(-radius, radius, side)
    z = (xs[:, None] + 1j * xs[None, :]).ravel()
    z = z[np.abs(z) <= radius * (1 + 1e-12)]
    pts = z[:, None]
    return WeightedSampleSet(pts, _weights_for(pts, weight), label=f"disc-grid({n_points})")


def radial_weight(alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    """``q(z) = alpha |z|^2``."""
    return lambda pts: alpha * np.sum(np.abs(pts) ** 2, axis=1)


# ------------------------------------------------------------ admissibility


@dataclass(frozen=True)
class WeightReport:
    admissible: bool
    n_finite: int
    dimension: int | None
    degenerate: bool
    warnings: tuple[str, ...] = field(default=())


def validate_weight(samples: WeightedSampleSet, dimension: int | None = None) -> WeightReport:
    """Check that some weight is finite and that enough finite points remain.

    ``dimension`` is the dimension of the polynomial space to be fitted
    (the number of lattice points of ``m S``).
    """
    n_finite = int(samples.finite.sum())
    if n_finite == 0:
        raise InadmissibleWeightError("the weight is +inf at every sample point")
    msgs = []
    degenerate = dimension is not None and n_finite < dimension
    if degenerate:
        msgs.append(
            f"only {n_finite} finite-weight points for a space of dimension {dimension}: approximation is degenerate"
        )
        warnings.warn(msgs[-1], RuntimeWarning, stacklevel=2)
    return WeightReport(True, n_finite, dimension, degenerate, tuple(msgs))
