"""Phase-one simplex in exact rational arithmetic.

Only feasibility is needed by the geometry code: deciding whether a point
lies in the convex hull of finitely many rational points, and producing a
Caratheodory representation with few nonzero weights. Bland's rule keeps
the pivoting finite on these heavily degenerate systems.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def basic_feasible_solution(
    A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> list[Fraction] | None:
    """Find a basic feasible solution of ``A x = b, x >= 0``.

    Returns the solution vector, or None when the system is infeasible.
    At most ``rank(A)`` entries of a returned solution are nonzero.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    # tableau columns: original vars, artificials, rhs
    T: list[list[Fraction]] = []
    for i in range(rows):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * A[i][j]) for j in range(cols)]
        row += [Fraction(int(k == i)) for k in range(rows)]
        row.append(Fraction(sign * b[i]))
        T.append(row)
    basis = [cols + i for i in range(rows)]
    width = cols + rows

    # phase-one objective: sum of artificials, expressed in reduced form
    obj = [Fraction(0)] * (width + 1)
    for i in range(rows):
        for j in range(width + 1):
            obj[j] -= T[i][j]
    for i in range(rows):
        obj[cols + i] += 1

    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(rows):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:  # cannot happen in phase one (objective bounded below)
            break
        _pivot(T, obj, leaving, entering)
        basis[leaving] = entering

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * cols
    for i, var in enumerate(basis):
        if var < cols:
            x[var] = T[i][-1]
    return x


def _pivot(T, obj, r, c):
    piv = T[r][c]
    row = [v / piv for v in T[r]]
    T[r] = row
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [u - f * v for u, v in zip(other, row)]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [u - f * v for u, v in zip(obj, row)]


def convex_weights(
    points: Sequence[Sequence[Fraction]], target: Sequence[Fraction], total: Fraction = Fraction(1)
) -> list[Fraction] | None:
    """Weights ``lam >= 0`` with ``sum lam = total`` and ``sum lam_i points_i = target``.

    The weights come from a basic solution, so at most ``dim + 1`` are nonzero.
    """
    n = len(target)
    A = [[Fraction(p[k]) for p in points] for k in range(n)]
    A.append([Fraction(1)] * len(points))
    rhs = [Fraction(t) for t in target] + [Fraction(total)]
    return basic_feasible_solution(A, rhs)
