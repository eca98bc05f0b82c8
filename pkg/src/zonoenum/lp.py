"""Dense tableau simplex for small linear programs.

Solves ``max c.x  s.t.  G x <= h, x >= 0`` with ``h >= 0``, so the slack
basis is feasible and no phase one is needed. Bland's rule picks both the
entering and the leaving variable, which rules out cycling on the
degenerate vertices that feasibility problems start from.
"""
from __future__ import annotations

import numpy as np

from .core import ZonotopeError

PIVOT_TOL = 1e-12


class LPNumericalFailure(ZonotopeError):
    """The pivot limit was exceeded."""


class UnboundedLP(ZonotopeError):
    pass


def simplex_max(c, G, h, max_pivots: int | None = None):
    """Maximize ``c @ x`` subject to ``G @ x <= h`` and ``x >= 0``.

    Parameters
    ----------
    c : array_like, shape (k,)
    G : array_like, shape (r, k)
    h : array_like, shape (r,)
        Must be nonnegative.
    max_pivots : int, optional
        Safety cap on the number of pivots; defaults to ``50 * (r + k)``.

    Returns
    -------
    x : ndarray, shape (k,)
    value : float
        Optimal objective value.
    """
    c = np.asarray(c, dtype=float)
    G = np.asarray(G, dtype=float)
    h = np.asarray(h, dtype=float)
    r, k = G.shape
    if np.any(h < 0):
        raise ValueError("right-hand side must be nonnegative")
    if max_pivots is None:
        max_pivots = 50 * (r + k)

    T = np.zeros((r + 1, k + r + 1))
    T[:r, :k] = G
    T[:r, k:k + r] = np.eye(r)
    T[:r, -1] = h
    T[r, :k] = -c
    basis = np.arange(k, k + r)

    for _ in range(max_pivots):
        reduced = T[r, :-1]
        entering = np.flatnonzero(reduced < -PIVOT_TOL)
        if entering.size == 0:
            break
        e = entering[0]
        col = T[:r, e]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            raise UnboundedLP("objective is unbounded")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + PIVOT_TOL * (1.0 + abs(best))]
        p = tied[np.argmin(basis[tied])]

        T[p] /= T[p, e]
        factors = T[:, e].copy()
        factors[p] = 0.0
        T -= np.outer(factors, T[p])
        basis[p] = e
    else:
        raise LPNumericalFailure(f"no optimum after {max_pivots} pivots")

    x = np.zeros(k)
    in_x = basis < k
    x[basis[in_x]] = T[:r, -1][in_x]
    return x, float(T[r, -1])
