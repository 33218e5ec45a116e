"""S-polynomials: polynomials whose exponents lie in ``m S``.

Coefficients are kept sparse, keyed by exponent tuple; dense vectors only
appear inside the solver kernels, through :class:`SampleBasis`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .errors import DegenerateSampleError, DomainError
from .exponent_geometry import ExponentSet, LatticeSet, lattice_points, log_support
from .samples import WeightedSampleSet


@dataclass(frozen=True, eq=False)
class SPolynomial:
    """An element of the space of S-polynomials of degree index ``m``."""

    source: ExponentSet
    m: int
    coefficients: Mapping[tuple[int, ...], complex]

    def __init__(self, source: ExponentSet, m: int, coefficients: Mapping | None = None, *, check: bool = True):
        if m < 0:
            raise DomainError("m must be nonnegative")
        coeffs = {}
        for alpha, a in (coefficients or {}).items():
            key = tuple(int(v) for v in alpha)
            if len(key) != source.dim:
                raise DomainError(f"exponent {key} has the wrong dimension")
            if check and not source.contains_lattice(key, m):
                raise DomainError(f"exponent {key} is not in {m}S")
            if a != 0:
                coeffs[key] = complex(a)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coefficients", MappingProxyType(coeffs))

    @classmethod
    def from_vector(cls, source, m, exponents: Sequence[tuple[int, ...]], coeffs: np.ndarray, *, check=True):
        return cls(source, m, dict(zip(exponents, coeffs)), check=check)

    def __call__(self, z):
        return evaluate(self, z)

    def __mul__(self, other: "SPolynomial") -> "SPolynomial":
        return product(self, other)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "terms": [
                {"alpha": list(a), "re": c.real, "im": c.imag} for a, c in sorted(self.coefficients.items())
            ],
        }

    @classmethod
    def from_json(cls, source: ExponentSet, data: Mapping) -> "SPolynomial":
        return cls(
            source,
            int(data["m"]),
            {tuple(t["alpha"]): complex(t["re"], t.get("im", 0.0)) for t in data["terms"]},
        )


def _ipow(z: complex, k: int) -> complex:
    """``z**k`` by repeated squaring."""
    result = 1 + 0j
    base = complex(z)
    while k:
        if k & 1:
            result *= base
        base *= base
        k >>= 1
    return result


def evaluate(p: SPolynomial, z: Sequence[complex]) -> complex:
    """``sum_alpha a_alpha z^alpha`` at a single point."""
    if len(z) != p.source.dim:
        raise DomainError("dimension mismatch")
    total = 0j
    for alpha, a in p.coefficients.items():
        term = a
        for zj, k in zip(z, alpha):
            term *= _ipow(zj, k)
        total += term
    return total


def monomial_matrix(exponents: Sequence[tuple[int, ...]], points: np.ndarray) -> np.ndarray:
    """``V[k, i] = z_k ** exponents[i]`` for the rows of ``points``."""
    points = np.atleast_2d(np.asarray(points, dtype=complex))
    E = np.asarray(exponents, dtype=int).reshape(len(exponents), points.shape[1])
    V = np.ones((points.shape[0], E.shape[0]), dtype=complex)
    for j in range(points.shape[1]):
        top = int(E[:, j].max(initial=0))
        powers = np.ones((points.shape[0], top + 1), dtype=complex)
        for k in range(1, top + 1):
            powers[:, k] = powers[:, k - 1] * points[:, j]
        V *= powers[:, E[:, j]]
    return V


def evaluate_many(p: SPolynomial, points: np.ndarray) -> np.ndarray:
    if not p.coefficients:
        return np.zeros(np.atleast_2d(points).shape[0], dtype=complex)
    exps = list(p.coefficients)
    return monomial_matrix(exps, points) @ np.array([p.coefficients[a] for a in exps])


def product(p: SPolynomial, q: SPolynomial) -> SPolynomial:
    """Product, an element of degree index ``p.m + q.m``."""
    if p.source is not q.source and p.source != q.source:
        raise DomainError("factors must share their exponent set")
    out: dict[tuple[int, ...], complex] = {}
    for a, ca in p.coefficients.items():
        for b, cb in q.coefficients.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0) + ca * cb
    return SPolynomial(p.source, p.m + q.m, out)


# ------------------------------------------------------------ sample bases


@dataclass(frozen=True)
class SampleBasis:
    """Monomial values on sample points, optionally with an orthonormalizing factor.

    With ``orthogonal_factor = R`` the matrix ``values @ inv(R)`` has
    orthonormal columns, so coefficients ``y`` in that basis map back to
    monomial coefficients as ``solve(R, y)``.
    """

    exponents: LatticeSet
    values: np.ndarray
    orthogonal_factor: np.ndarray | None = None
    orthonormal: np.ndarray | None = None

    def to_monomial(self, y: np.ndarray) -> np.ndarray:
        if self.orthogonal_factor is None:
            return np.asarray(y)
        from scipy.linalg import solve_triangular

        return solve_triangular(self.orthogonal_factor, y, lower=False)


def _mgs(V: np.ndarray, rank_tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Modified Gram-Schmidt with one reorthogonalization pass."""
    K, N = V.shape
    Q = V.astype(complex).copy()
    R = np.zeros((N, N), dtype=complex)
    for i in range(N):
        v = Q[:, i]
        norm0 = np.linalg.norm(v)
        for _ in range(2):
            for j in range(i):
                r = np.vdot(Q[:, j], v)
                R[j, i] += r
                v = v - r * Q[:, j]
        nv = np.linalg.norm(v)
        if norm0 == 0 or nv <= rank_tol * norm0:
            raise DegenerateSampleError(
                f"monomial column {i} is dependent on the others at these samples (relative norm {nv / max(norm0, 1e-300):.2e})"
            )
        R[i, i] = nv
        Q[:, i] = v / nv
    return Q, R


def build_basis(
    S: ExponentSet,
    m: int,
    samples: WeightedSampleSet,
    orthogonalize: bool = False,
    exponents: LatticeSet | Sequence[tuple[int, ...]] | None = None,
    rank_tol: float = 1e-12,
) -> SampleBasis:
    """Monomial matrix of ``m S``'s lattice points on the finite-weight samples."""
    lat = lattice_points(S, m) if exponents is None else exponents
    if not isinstance(lat, LatticeSet):
        lat = LatticeSet(tuple(tuple(a) for a in lat), m, S)
    pts = samples.points[samples.finite]
    if pts.shape[0] < len(lat):
        warnings.warn(
            f"{pts.shape[0]} sample points for {len(lat)} monomials; the basis cannot be unisolvent",
            RuntimeWarning,
            stacklevel=2,
        )
    V = monomial_matrix(lat.exponents, pts)
    Q, R = _mgs(V, rank_tol)
    if not orthogonalize:
        return SampleBasis(lat, V)
    return SampleBasis(lat, V, R, Q)


# ------------------------------------------------------------ growth


@dataclass(frozen=True)
class GrowthCheck:
    passed: bool
    worst_excess: float
    worst_point: tuple[complex, ...] | None
    constant: float


def _separating_directions(p: SPolynomial, rng: np.random.Generator) -> list[np.ndarray]:
    """Directions xi maximizing <alpha, xi> - m phi_S(xi) for exponents outside m S."""
    S, n = p.source, p.source.dim
    dirs = []
    if n == 1:
        cand = np.array([[1.0], [-1.0]])
    elif n == 2:
        th = 2 * np.pi * np.arange(720) / 720
        cand = np.column_stack([np.cos(th), np.sin(th)])
    else:
        g = rng.standard_normal((4096, n))
        cand = g / np.linalg.norm(g, axis=1, keepdims=True)
    phi = S.support_many(cand)
    for alpha in p.coefficients:
        if S.contains_lattice(alpha, p.m):
            continue
        gain = cand @ np.asarray(alpha, float) - p.m * phi
        dirs.append(cand[int(np.argmax(gain))])
    return dirs


def growth_check(p: SPolynomial, trials: int = 200, seed: int = 0, log_radius: tuple[float, float] = (2.0, 12.0)) -> GrowthCheck:
    """Empirical test of ``log|p(z)| <= C + m H_S(z)`` with ``C = log sum |a_alpha|``.

    Points are ``z_j = exp(t xi_j + i theta_j)`` for random unit directions
    ``xi`` and ``t`` in ``log_radius``; directions separating any exponent
    from ``m S`` are always included.
    """
    if not p.coefficients:
        return GrowthCheck(True, -math.inf, None, -math.inf)
    rng = np.random.default_rng(seed)
    n = p.source.dim
    C = math.log(sum(abs(a) for a in p.coefficients.values()))
    g = rng.standard_normal((trials, n))
    dirs = list(g / np.linalg.norm(g, axis=1, keepdims=True)) + _separating_directions(p, rng)
    worst, worst_z = -math.inf, None
    for xi in dirs:
        t = rng.uniform(*log_radius)
        for tt in (t, log_radius[1]):
            theta = rng.uniform(0, 2 * np.pi, n)
            z = np.exp(tt * np.asarray(xi) + 1j * theta)
            val = abs(evaluate(p, z))
            lhs = math.log(val) if val > 0 else -math.inf
            rhs = C + p.m * log_support(p.source, z)
            excess = lhs - rhs
            if excess > worst:
                worst, worst_z = excess, tuple(complex(v) for v in z)
    return GrowthCheck(worst <= 1e-9 * max(1.0, abs(C)), worst, worst_z, C)
