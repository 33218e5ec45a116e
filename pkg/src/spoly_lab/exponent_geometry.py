"""Compact convex exponent sets S in the nonnegative orthant with 0 in S.

Three families are supported:

* :class:`RationalPolytope`, the convex hull of finitely many rational points;
* :class:`QuarterDisc`, the closed disc of radius ``r`` about the origin cut
  down to ``[0, r]^2``;
* :class:`ConcaveHypograph`, ``{0 <= s2 <= f(s1), 0 <= s1 <= 1}`` with
  ``f(t) = 1 - exp(c - c t**-b)``.

Every decision that lattice-gap computations depend on (membership of
integer points in ``m S``) is made exactly: rational arithmetic for
polytopes, integer arithmetic on squared norms for the disc, and a
log-space comparison of vertical deficits for the hypograph, which stays
correct even when ``1 - f`` underflows double precision.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._rational import all_exact, ceil_fraction, lcm_of_denominators, to_fraction, to_fraction_vector
from .errors import DomainError, UnsupportedExactnessError
from .exact_lp import convex_weights

__all__ = [
    "ExponentSet",
    "RationalPolytope",
    "QuarterDisc",
    "ConcaveHypograph",
    "Membership",
    "LatticeSet",
    "MinkowskiDecomposition",
    "standard_simplex",
    "support_function",
    "log_support",
    "membership",
    "lattice_points",
    "exponent_set_from_json",
    "minkowski_decompose",
]


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership test.

    ``margin`` is a signed distance to the boundary of ``m S``: positive
    inside, negative outside, None where no certified value is available.
    """

    inside: bool
    margin: float | None

    def __bool__(self) -> bool:
        return self.inside


def _check_finite(xi) -> None:
    for v in xi:
        if isinstance(v, (float, np.floating)) and not math.isfinite(v):
            raise DomainError(f"non-finite direction component {v!r}")


class ExponentSet:
    """Common interface of the exponent-set variants."""

    dim: int

    def support(self, xi: Sequence) -> float | Fraction:
        raise NotImplementedError

    def support_many(self, Xi: np.ndarray) -> np.ndarray:
        """Vectorized support function for the rows of a float array."""
        return np.array([float(self.support(row)) for row in Xi])

    def face_support(self, xi: Sequence[float], zero: Sequence[bool]) -> float:
        """Support function of the face ``S ∩ {s_j = 0 : zero[j]}``."""
        raise NotImplementedError

    def max_coordinates(self) -> tuple:
        """``max_{s in S} s_j`` for every coordinate ``j``."""
        raise NotImplementedError

    def contains(self, x: Sequence, m: int = 1, tol: float = 0.0) -> Membership:
        raise NotImplementedError

    def contains_lattice(self, alpha: Sequence[int], m: int) -> bool:
        """Exact decision of ``alpha in m S`` for an integer point."""
        return self.contains(alpha, m, 0.0).inside

    def rational_points_dense(self) -> bool:
        """Whether ``S ∩ Q^n`` is dense in ``S``; true for all supported variants."""
        return True

    def to_json(self) -> dict:
        raise NotImplementedError


# ---------------------------------------------------------------- polytopes


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    """Andrew's monotone chain; counter-clockwise vertices without collinear points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _segment_sq_distance(p, a, b) -> Fraction:
    """Exact squared distance from ``p`` to segment ``[a, b]``."""
    d = [bj - aj for aj, bj in zip(a, b)]
    w = [pj - aj for aj, pj in zip(a, p)]
    dd = sum(v * v for v in d)
    if dd == 0:
        return sum(v * v for v in w)
    t = sum(u * v for u, v in zip(w, d)) / dd
    t = min(max(t, Fraction(0)), Fraction(1))
    return sum((wj - t * dj) ** 2 for wj, dj in zip(w, d))


@dataclass(frozen=True)
class RationalPolytope(ExponentSet):
    """Convex hull of rational points in the orthant, one of them the origin."""

    vertices: tuple[tuple[Fraction, ...], ...]
    _facets: tuple = field(default=(), repr=False, compare=False)

    def __init__(self, vertices: Sequence[Sequence]):
        pts = [to_fraction_vector(v) for v in vertices]
        if not pts:
            raise DomainError("a polytope needs at least one vertex")
        n = len(pts[0])
        if n == 0 or any(len(p) != n for p in pts):
            raise DomainError("vertices must share a positive dimension")
        if any(c < 0 for p in pts for c in p):
            raise DomainError("vertices must lie in the nonnegative orthant")
        origin = tuple(Fraction(0) for _ in range(n))
        if origin not in pts:
            raise DomainError("the origin must be one of the vertices")
        ext = _extreme_points(pts)
        object.__setattr__(self, "vertices", tuple(ext))
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "_facets", tuple(_facets_2d(ext)) if n == 2 else ())

    # support ----------------------------------------------------------------
    def support(self, xi):
        _check_finite(xi)
        if all_exact(xi):
            xq = to_fraction_vector(xi)
            return max(sum(v * x for v, x in zip(vert, xq)) for vert in self.vertices)
        xf = [float(x) for x in xi]
        return max(math.fsum(float(v) * x for v, x in zip(vert, xf)) for vert in self.vertices)

    def support_many(self, Xi):
        V = np.array([[float(c) for c in v] for v in self.vertices])
        return np.max(np.asarray(Xi, dtype=float) @ V.T, axis=1)

    def face_support(self, xi, zero):
        face = [v for v in self.vertices if all(v[j] == 0 for j in range(self.dim) if zero[j])]
        return max(
            math.fsum(float(v[j]) * float(xi[j]) for j in range(self.dim) if not zero[j]) for v in face
        )

    def max_coordinates(self):
        return tuple(max(v[j] for v in self.vertices) for j in range(self.dim))

    def common_denominator(self) -> int:
        return lcm_of_denominators(c for v in self.vertices for c in v)

    # membership -------------------------------------------------------------
    def contains(self, x, m=1, tol=0.0):
        if m < 0:
            raise DomainError("scale m must be nonnegative")
        if len(x) != self.dim:
            raise DomainError("dimension mismatch")
        xq = to_fraction_vector(x)
        if self._exact_contains(xq, m):
            return Membership(True, self._inner_margin(xq, m))
        if self.dim > 2:
            return Membership(False, None)
        dist = math.sqrt(float(self.sq_distance(xq, m)))
        return Membership(0 < tol and dist <= tol, -dist)

    def _exact_contains(self, xq, m) -> bool:
        if m == 0:
            return all(c == 0 for c in xq)
        if any(c < 0 for c in xq):
            return False
        if self.dim == 1:
            return xq[0] <= m * self.vertices[-1][0]
        if self.dim == 2:
            return self._contains_2d(xq, m)
        return convex_weights(self.vertices, [c / m for c in xq]) is not None

    def _contains_2d(self, xq, m) -> bool:
        hull = self.vertices
        if len(hull) == 1:
            return all(c == 0 for c in xq)
        if len(hull) == 2:
            return _segment_sq_distance(xq, [m * c for c in hull[0]], [m * c for c in hull[1]]) == 0
        return all(a0 * xq[0] + a1 * xq[1] <= m * b for a0, a1, b in self._facets)

    def _inner_margin(self, xq, m) -> float | None:
        if self.dim == 1:
            return float(min(xq[0], m * self.vertices[-1][0] - xq[0]))
        if self.dim == 2 and len(self.vertices) >= 3:
            return min(
                float(m * b - a0 * xq[0] - a1 * xq[1]) / math.hypot(float(a0), float(a1))
                for a0, a1, b in self._facets
            )
        if self.dim == 2:
            return 0.0  # lower-dimensional: every point of S is a boundary point
        return None

    def sq_distance(self, xq, m) -> Fraction:
        """Exact squared euclidean distance from ``xq`` to ``m S`` (n <= 2)."""
        xq = to_fraction_vector(xq)
        if self.dim == 1:
            hi = m * self.vertices[-1][0]
            v = xq[0]
            return (v - hi) ** 2 if v > hi else (v * v if v < 0 else Fraction(0))
        if self.dim != 2:
            raise DomainError("exact distances are implemented for n <= 2")
        if self._exact_contains(xq, m):
            return Fraction(0)
        hull = [tuple(m * c for c in v) for v in self.vertices]
        if len(hull) == 1:
            return sum(c * c for c in xq)
        edges = list(zip(hull, hull[1:] + hull[:1])) if len(hull) > 2 else [(hull[0], hull[1])]
        return min(_segment_sq_distance(xq, a, b) for a, b in edges)

    def contains_lattice(self, alpha, m):
        return self._exact_contains(tuple(Fraction(int(a)) for a in alpha), m)

    def to_json(self):
        from ._rational import format_fraction

        return {
            "variant": "RationalPolytope",
            "vertices": [[format_fraction(c) for c in v] for v in self.vertices],
        }


def _extreme_points(pts):
    pts = sorted(set(pts))
    n = len(pts[0])
    if n == 1:
        return [pts[0], pts[-1]] if len(pts) > 1 else pts
    if n == 2:
        hull = _hull_2d(pts)
        return _rotate_to_origin(hull)
    keep = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not others or convex_weights(others, p) is None:
            keep.append(p)
    return keep


def _rotate_to_origin(hull):
    if not hull:
        return hull
    k = min(range(len(hull)), key=lambda i: hull[i])
    return hull[k:] + hull[:k]


def _facets_2d(hull):
    """Integer half-planes ``a0 x + a1 y <= b`` of a counter-clockwise polygon."""
    if len(hull) < 3:
        return []
    out = []
    for p, q in zip(hull, hull[1:] + hull[:1]):
        a0, a1 = q[1] - p[1], p[0] - q[0]
        b = a0 * p[0] + a1 * p[1]
        scale = lcm_of_denominators((a0, a1, b))
        a0, a1, b = a0 * scale, a1 * scale, b * scale
        g = math.gcd(math.gcd(int(a0), int(a1)), int(b))
        out.append((a0 / g, a1 / g, b / g))
    return out


def standard_simplex(n: int) -> RationalPolytope:
    """The simplex ``ch{0, e_1, ..., e_n}``."""
    if n < 1:
        raise DomainError("dimension must be positive")
    verts = [tuple(0 for _ in range(n))]
    verts += [tuple(int(i == j) for i in range(n)) for j in range(n)]
    return RationalPolytope(verts)


# ---------------------------------------------------------------- quarter disc


@dataclass(frozen=True)
class QuarterDisc(ExponentSet):
    """Closed disc of the given radius about 0 intersected with ``[0, radius]^2``."""

    radius: Fraction

    def __init__(self, radius=1):
        r = to_fraction(radius)
        if r <= 0:
            raise DomainError("radius must be positive")
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "dim", 2)

    def support(self, xi):
        _check_finite(xi)
        if len(xi) != 2:
            raise DomainError("QuarterDisc lives in R^2")
        a, b = max(float(xi[0]), 0.0), max(float(xi[1]), 0.0)
        return float(self.radius) * math.hypot(a, b)

    def support_many(self, Xi):
        P = np.maximum(np.asarray(Xi, dtype=float), 0.0)
        return float(self.radius) * np.hypot(P[:, 0], P[:, 1])

    def face_support(self, xi, zero):
        r = float(self.radius)
        if zero[0] and zero[1]:
            return 0.0
        if zero[0]:
            return r * max(float(xi[1]), 0.0)
        if zero[1]:
            return r * max(float(xi[0]), 0.0)
        return self.support(xi)

    def max_coordinates(self):
        return (self.radius, self.radius)

    def contains(self, x, m=1, tol=0.0):
        if len(x) != 2:
            raise DomainError("QuarterDisc lives in R^2")
        R = m * self.radius
        if tol == 0 or all_exact(x):
            xq = to_fraction_vector(x)
            inside = xq[0] >= 0 and xq[1] >= 0 and xq[0] ** 2 + xq[1] ** 2 <= R * R
            xf = (float(xq[0]), float(xq[1]))
            if tol > 0 and not inside:
                inside = self._float_distance(xf, float(R)) <= tol
        else:
            xf = (float(x[0]), float(x[1]))
            inside = self._float_distance(xf, float(R)) <= tol
        if inside:
            return Membership(True, min(xf[0], xf[1], float(R) - math.hypot(*xf)))
        return Membership(False, -self._float_distance(xf, float(R)))

    @staticmethod
    def _float_distance(x, R) -> float:
        # nearest point of the quarter disc: clip to the orthant, then to the disc
        a, b = x
        if a >= 0 and b >= 0:
            norm = math.hypot(a, b)
            return max(norm - R, 0.0)
        pa, pb = max(a, 0.0), max(b, 0.0)
        norm = math.hypot(pa, pb)
        if norm > R:
            pa, pb = pa * R / norm, pb * R / norm
        return math.hypot(a - pa, b - pb)

    def contains_lattice(self, alpha, m):
        a, b = int(alpha[0]), int(alpha[1])
        R = m * self.radius
        return a >= 0 and b >= 0 and (a * a + b * b) * R.denominator ** 2 <= R.numerator ** 2

    def to_json(self):
        from ._rational import format_fraction

        return {"variant": "QuarterDisc", "radius": format_fraction(self.radius)}


# ---------------------------------------------------------------- hypograph


@dataclass(frozen=True)
class ConcaveHypograph(ExponentSet):
    """``{0 <= s2 <= f(s1), 0 <= s1 <= 1}`` with ``f(t) = 1 - exp(c - c t^-b)``.

    ``f`` is strictly concave on ``[0, 1]`` exactly when ``c > 1 + 1/b``.
    """

    b: float
    c: float

    def __init__(self, b: float, c: float):
        b, c = float(b), float(c)
        if not (b > 0 and math.isfinite(b) and math.isfinite(c)):
            raise DomainError("b must be a positive finite number")
        if not c > 1.0 + 1.0 / b:
            raise DomainError(f"concavity requires c > 1 + 1/b (got b={b}, c={c})")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "dim", 2)

    # profile ---------------------------------------------------------------
    def log_deficit(self, t: float) -> float:
        """``log(1 - f(t))``; ``-inf`` at ``t = 0``."""
        if t <= 0:
            return -math.inf
        return self.c - self.c * t ** (-self.b)

    def f(self, t: float) -> float:
        if t <= 0:
            return 1.0
        return -math.expm1(self.log_deficit(t))

    def neg_fprime(self, t: float) -> float:
        """``-f'(t) = b c t^(-b-1) (1 - f(t))``, computed in log space."""
        if t <= 0:
            return 0.0
        return math.exp(math.log(self.b * self.c) - (self.b + 1) * math.log(t) + self.log_deficit(t))

    def inverse_f(self, y: float) -> float:
        """The ``t in [0, 1]`` with ``f(t) = y``."""
        if y >= 1:
            return 0.0
        if y <= 0:
            return 1.0
        return (1.0 - math.log1p(-y) / self.c) ** (-1.0 / self.b)

    # support ---------------------------------------------------------------
    def support(self, xi):
        _check_finite(xi)
        if len(xi) != 2:
            raise DomainError("ConcaveHypograph lives in R^2")
        return self._support(float(xi[0]), float(xi[1]))

    def _support(self, x1: float, x2: float) -> float:
        if x2 <= 0:
            return max(x1, 0.0)
        if x1 <= 0:
            return x2  # derivative of s*x1 + f(s)*x2 is <= 0 on [0, 1]
        if x1 - self.b * self.c * x2 >= 0:
            return x1  # derivative stays >= 0 up to s = 1, where f'(1) = -b c
        lo, hi = 0.0, 1.0
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            if x1 - self.neg_fprime(mid) * x2 > 0:
                lo = mid
            else:
                hi = mid
        s = 0.5 * (lo + hi)
        return max(s * x1 + self.f(s) * x2, x1, x2)

    def support_many(self, Xi):
        Xi = np.asarray(Xi, dtype=float)
        x1, x2 = Xi[:, 0], Xi[:, 1]
        out = np.where(x2 <= 0, np.maximum(x1, 0.0), 0.0)
        active = (x2 > 0) & (x1 > 0) & (x1 - self.b * self.c * x2 < 0)
        out = np.where((x2 > 0) & (x1 <= 0), x2, out)
        out = np.where((x2 > 0) & (x1 > 0) & ~active, x1, out)
        if active.any():
            a1, a2 = x1[active], x2[active]
            lo = np.zeros_like(a1)
            hi = np.ones_like(a1)
            b, c = self.b, self.c
            for _ in range(45):
                mid = 0.5 * (lo + hi)
                with np.errstate(over="ignore", divide="ignore"):
                    ld = c - c * mid ** (-b)
                    nfp = np.exp(math.log(b * c) - (b + 1) * np.log(mid) + ld)
                up = a1 - nfp * a2 > 0
                lo = np.where(up, mid, lo)
                hi = np.where(up, hi, mid)
            s = 0.5 * (lo + hi)
            fs = -np.expm1(c - c * s ** (-b))
            out[active] = np.maximum.reduce([s * a1 + fs * a2, a1, a2])
        return out

    def face_support(self, xi, zero):
        if zero[0] and zero[1]:
            return 0.0
        if zero[0]:
            return max(float(xi[1]), 0.0)
        if zero[1]:
            return max(float(xi[0]), 0.0)
        return self.support(xi)

    def max_coordinates(self):
        return (Fraction(1), Fraction(1))

    # membership ------------------------------------------------------------
    def contains(self, x, m=1, tol=0.0):
        if tol <= 0:
            raise UnsupportedExactnessError(
                "ConcaveHypograph membership needs tol > 0 (its boundary is transcendental)"
            )
        if len(x) != 2:
            raise DomainError("ConcaveHypograph lives in R^2")
        if m <= 0:
            inside = all(float(v) == 0 for v in x)
            return Membership(inside, 0.0 if inside else -math.hypot(float(x[0]), float(x[1])))
        inside = self._deficit_test(x, m, tol)
        if inside:
            return Membership(True, None)
        from .lattice_gap import hypograph_log_distance

        return Membership(False, -m * math.exp(hypograph_log_distance(self, float(x[0]) / m, float(x[1]) / m)))

    def _deficit_test(self, x, m, tol) -> bool:
        """Compare the vertical deficit ``1 - s2`` with ``1 - f(s1)``; ``tol`` is relative."""
        if all_exact(x):
            s1, s2 = to_fraction(x[0]) / m, to_fraction(x[1]) / m
        else:
            s1, s2 = float(x[0]) / m, float(x[1]) / m
        if s1 < -tol or s2 < -tol or s1 > 1 + tol:
            return False
        if s1 <= 0:
            return s2 <= 1 + tol
        if s1 >= 1:
            return s2 <= tol
        point_deficit = 1 - s2
        if point_deficit <= 0:
            return False
        return math.log(point_deficit) >= self.log_deficit(float(s1)) + math.log1p(-min(tol, 0.5))

    def contains_lattice(self, alpha, m):
        a1, a2 = int(alpha[0]), int(alpha[1])
        if m == 0:
            return a1 == 0 and a2 == 0
        if a1 < 0 or a2 < 0 or a1 > m:
            return False
        if a1 == 0:
            return a2 <= m
        if a1 == m:
            return a2 == 0
        if a2 >= m:
            return False
        # a2 <= m f(a1/m)  <=>  log((m - a2)/m) >= log(1 - f(a1/m))
        return math.log((m - a2) / m) >= self.log_deficit(a1 / m)

    def to_json(self):
        return {"variant": "ConcaveHypograph", "b": self.b, "c": self.c}


# ---------------------------------------------------------------- operations


def support_function(S: ExponentSet, xi: Sequence) -> float | Fraction:
    """``sup_{s in S} <s, xi>``; exact for polytopes when ``xi`` is rational."""
    if len(xi) != S.dim:
        raise DomainError(f"direction has dimension {len(xi)}, set has {S.dim}")
    return S.support(xi)


def log_support(S: ExponentSet, z: Sequence[complex]) -> float:
    """Logarithmic support ``H_S(z) = phi_S(log|z_1|, ..., log|z_n|)``.

    At points with vanishing coordinates the upper limit is the support of
    the face of S on which those exponents vanish, evaluated at the other
    log-moduli.
    """
    if len(z) != S.dim:
        raise DomainError("dimension mismatch")
    mods = [abs(complex(v)) for v in z]
    zero = [r == 0 for r in mods]
    xi = [math.log(r) if r > 0 else 0.0 for r in mods]
    if not any(zero):
        return float(S.support(xi))
    return float(S.face_support(xi, zero))


def membership(S: ExponentSet, x: Sequence, m: int = 1, tol: float = 0.0) -> Membership:
    """Decide ``x in m S`` (``x / m in S``) with a signed boundary margin."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    if tol < 0:
        raise DomainError("tol must be nonnegative")
    return S.contains(x, m, tol)


@dataclass(frozen=True)
class LatticeSet:
    """Integer points of ``m S`` in lexicographic order."""

    exponents: tuple[tuple[int, ...], ...]
    m: int
    source: ExponentSet

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in set(self.exponents)


def bounding_box(S: ExponentSet, m: int, inflate: int = 0) -> list[range]:
    return [range(0, ceil_fraction(m * to_fraction(M)) + inflate + 1) for M in S.max_coordinates()]


def lattice_points(S: ExponentSet, m: int) -> LatticeSet:
    """All ``alpha in N^n`` with ``alpha in m S``."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    if m == 0:
        return LatticeSet((tuple(0 for _ in range(S.dim)),), 0, S)
    pts = tuple(a for a in itertools.product(*bounding_box(S, m)) if S.contains_lattice(a, m))
    return LatticeSet(pts, m, S)


@dataclass(frozen=True)
class MinkowskiDecomposition:
    """``s = t + sum(peeled)`` with ``t in n S`` and each peeled point a vertex of S."""

    t: tuple[Fraction, ...]
    peeled: tuple[tuple[Fraction, ...], ...]

    def reconstruct(self) -> tuple[Fraction, ...]:
        out = list(self.t)
        for v in self.peeled:
            out = [a + b for a, b in zip(out, v)]
        return tuple(out)


def minkowski_decompose(S: RationalPolytope, s: Sequence, m: int) -> MinkowskiDecomposition:
    """Write ``s in m S`` as a point of ``n S`` plus ``m - n`` vertices of S.

    Each step takes a basic (Caratheodory) representation of the current
    point as a combination of vertices with weights summing to ``k``; with at
    most ``n + 1`` nonzero weights and ``k >= n + 1`` some weight is at least
    one, so that vertex can be split off, leaving a point of ``(k - 1) S``.
    """
    if not isinstance(S, RationalPolytope):
        raise DomainError("Minkowski decomposition needs a rational polytope")
    n = S.dim
    if m <= n:
        raise DomainError(f"need m > n (got m={m}, n={n})")
    point = list(to_fraction_vector(s))
    if len(point) != n:
        raise DomainError("dimension mismatch")
    verts = list(S.vertices)
    if convex_weights(verts, point, Fraction(m)) is None:
        raise DomainError(f"{s} is not in {m}S")
    peeled = []
    for k in range(m, n, -1):
        lam = convex_weights(verts, point, Fraction(k))
        i = max(range(len(verts)), key=lambda j: lam[j])
        assert lam[i] >= 1
        peeled.append(verts[i])
        point = [p - v for p, v in zip(point, verts[i])]
    return MinkowskiDecomposition(tuple(point), tuple(peeled))


def exponent_set_from_json(data: dict) -> ExponentSet:
    """Inverse of ``to_json`` for the three variants."""
    from .errors import ConfigError

    variant = data.get("variant") if isinstance(data, dict) else None
    if variant == "RationalPolytope":
        return RationalPolytope(data["vertices"])
    if variant == "QuarterDisc":
        return QuarterDisc(data.get("radius", 1))
    if variant == "ConcaveHypograph":
        return ConcaveHypograph(float(data["b"]), float(data["c"]))
    raise ConfigError("set", f"unknown exponent-set variant {variant!r}")
