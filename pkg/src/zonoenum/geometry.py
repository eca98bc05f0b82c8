"""Convex-geometry kernel for zonotope vertex sets.

Distances to convex hulls use Wolfe's minimum-norm-point method, with an
away-step Frank-Wolfe fallback for the rare cases where the affine
subproblem degenerates numerically. Sign-vector realizability is decided
with the small LP in :func:`sign_feasible`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import (
    GeneratorMatrix,
    SignVector,
    Vertex,
    VertexSet,
    ZonotopeError,
    as_generator,
    vertex_count_upper_bound,
)
from .lp import simplex_max

# Optimal LP margins at or below this are treated as infeasible.
TAU_FEAS = 1e-9
MAX_ITER = 100_000


class EmptySubError(ZonotopeError, ValueError):
    pass


class VertexNotInSetError(ZonotopeError, KeyError):
    pass


class IncompleteSetWarning(UserWarning):
    pass


class SmallMarginWarning(UserWarning):
    pass


@dataclass(frozen=True)
class HullDistanceResult:
    distance: float
    witness: np.ndarray
    iterations: int
    converged: bool
    weights: np.ndarray


@dataclass(frozen=True)
class LPFeasibilityResult:
    feasible: bool
    certificate_x: np.ndarray
    margin: float


def _affine_minimizer(Q: np.ndarray) -> np.ndarray:
    # min ||mu @ Q|| subject to sum(mu) = 1
    k = Q.shape[0]
    M = np.empty((k + 1, k + 1))
    M[:k, :k] = Q @ Q.T
    M[:k, k] = 1.0
    M[k, :k] = 1.0
    M[k, k] = 0.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    sol = np.linalg.lstsq(M, rhs, rcond=None)[0]
    return sol[:k]


def _wolfe(P: np.ndarray, max_iter: int, tol: float):
    """Minimum-norm point of conv(rows of P). Returns (weights, iterations, ok)."""
    k = P.shape[0]
    norms2 = np.einsum("ij,ij->i", P, P)
    scale = max(norms2.max(), 1e-300)
    zero_tol = 1e-10
    S = [int(np.argmin(norms2))]
    lam = np.array([1.0])
    x = P[S[0]].copy()
    it = 0
    while it < max_iter:
        it += 1
        xx = x @ x
        dots = P @ x
        j = int(np.argmin(dots))
        if xx - dots[j] <= tol * scale:
            break
        if j in S:
            return _full_weights(k, S, lam), it, False
        S.append(j)
        lam = np.append(lam, 0.0)
        while True:
            it += 1
            mu = _affine_minimizer(P[S])
            if not np.all(np.isfinite(mu)):
                return _full_weights(k, S, lam), it, False
            if np.all(mu > zero_tol):
                lam = mu
                break
            step = lam - mu
            mask = (mu <= zero_tol) & (step > 0)
            theta = np.min(lam[mask] / step[mask]) if mask.any() else 1.0
            theta = min(max(theta, 0.0), 1.0)
            lam = lam + theta * (mu - lam)
            keep = lam > zero_tol
            if keep.all():
                # drop the blocking index explicitly to guarantee progress
                keep[np.argmin(lam)] = False
            S = [s for s, kp in zip(S, keep) if kp]
            lam = lam[keep]
            lam = lam / lam.sum()
            if it >= max_iter:
                return _full_weights(k, S, lam), it, False
        x_new = lam @ P[S]
        if x_new @ x_new > xx * (1 + 1e-12) + 1e-300:
            return _full_weights(k, S, lam), it, False
        x = x_new
    else:
        return _full_weights(k, S, lam), it, False
    return _full_weights(k, S, lam), it, True


def _full_weights(k, S, lam):
    w = np.zeros(k)
    w[S] = lam
    return w


def _away_step_frank_wolfe(P: np.ndarray, w: np.ndarray, max_iter: int, tol: float):
    norms2 = np.einsum("ij,ij->i", P, P)
    scale = max(norms2.max(), 1e-300)
    w = np.clip(w, 0.0, None)
    w = w / w.sum()
    x = w @ P
    for it in range(1, max_iter + 1):
        grad = P @ x
        s = int(np.argmin(grad))
        gap = x @ x - grad[s]
        if gap <= tol * scale:
            return w, it, True
        active = np.flatnonzero(w > 0)
        a = active[np.argmax(grad[active])]
        if gap >= grad[a] - x @ x:
            d = P[s] - x
            gamma_max = 1.0
            toward = True
        else:
            d = x - P[a]
            gamma_max = w[a] / (1.0 - w[a]) if w[a] < 1.0 else np.inf
            toward = False
        dd = d @ d
        if dd <= 0:
            return w, it, True
        gamma = min(max(-(x @ d) / dd, 0.0), gamma_max)
        if toward:
            w *= 1.0 - gamma
            w[s] += gamma
        else:
            w *= 1.0 + gamma
            w[a] -= gamma
            if gamma == gamma_max:
                w[a] = 0.0
        w = np.clip(w, 0.0, None)
        w /= w.sum()
        x = w @ P
    return w, max_iter, False


def nearest_point_in_hull(points, q, max_iter: int = MAX_ITER, tol: float = 1e-14) -> HullDistanceResult:
    """Euclidean projection of ``q`` onto the convex hull of ``points``.

    Parameters
    ----------
    points : array_like, shape (k, n)
    q : array_like, shape (n,)
    max_iter : int
        Iteration cap shared by both solvers.
    tol : float
        Relative duality-gap tolerance, scaled by the largest squared
        distance from ``q`` to a point.

    Returns
    -------
    HullDistanceResult
        ``converged`` is False if the cap was hit; the best iterate is
        returned in that case. ``distance`` is exactly 0 when ``q`` lies in
        the hull (up to roundoff), with ``witness`` equal to ``q``.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    q = np.asarray(q, dtype=float)
    if pts.size == 0:
        raise ValueError("points must be nonempty")
    if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(q))):
        raise ValueError("points and query must be finite")
    P = pts - q
    w, it, ok = _wolfe(P, max_iter, tol)
    if not ok:
        w, it2, ok = _away_step_frank_wolfe(P, w, max(max_iter - it, 1), tol)
        it += it2
    x = w @ P
    dist = float(np.sqrt(x @ x))
    radius = float(np.sqrt(np.einsum("ij,ij->i", P, P).max()))
    if dist <= 1e-12 * max(radius, 1.0):
        return HullDistanceResult(0.0, q.copy(), it, ok, w)
    witness = q + x
    return HullDistanceResult(float(np.linalg.norm(q - witness)), witness, it, ok, w)


def hausdorff_to_subhull(full: VertexSet, sub: VertexSet) -> float:
    """Hausdorff distance between ``conv(full)`` and ``conv(sub)`` for ``sub`` inside ``full``.

    Only vertices of ``full`` missing from ``sub`` need checking: the
    distance to ``conv(sub)`` is convex, so its maximum over ``conv(full)``
    sits at a vertex. Both sets are symmetric, so one member of each
    missing pair suffices.
    """
    if sub.num_pairs == 0:
        raise EmptySubError("sub-hull has no vertices")
    if not sub.issubset(full):
        raise ValueError("sub must be a subset of full")
    missing = [v for v in full if v.key not in sub]
    if not missing:
        return 0.0
    pts = sub.points()
    return max(nearest_point_in_hull(pts, v.point).distance for v in missing)


def _others(vertices: VertexSet, v: Vertex) -> np.ndarray:
    if v.key not in vertices:
        raise VertexNotInSetError(repr(v.key))
    return np.array([u.point for u in vertices.all_vertices() if u.key != v.key])


def simplicial_constant(vertices: VertexSet, v: Vertex) -> float:
    """Distance from ``v`` to the hull of every other vertex (``-v`` included).

    The value for ``-v`` is computed as well and must agree to 1e-9.
    """
    if len(vertices) < 2:
        raise ValueError("need at least two vertices")
    a = nearest_point_in_hull(_others(vertices, v), v.point).distance
    b = nearest_point_in_hull(_others(vertices, -v), -v.point).distance
    if abs(a - b) > 1e-9:
        raise ZonotopeError(f"simplicial constants of v and -v differ: {a} vs {b}")
    return a


def simplicial_constants(vertices: VertexSet) -> dict[SignVector, float]:
    """Simplicial constant of every canonical vertex."""
    return {v.key: simplicial_constant(vertices, v) for v in vertices}


def adjacency(A, vertices: VertexSet) -> dict[SignVector, list[Vertex]]:
    """Neighbours of every vertex (both orientations) under single sign flips.

    In general position every edge of a zonotope is a translate of some
    ``2 a_i``, so two vertices are adjacent exactly when their sign vectors
    differ in one coordinate. Keys are oriented sign vectors.
    """
    A = as_generator(A)
    expected = vertex_count_upper_bound(A.m, A.n)
    if len(vertices) < expected:
        warnings.warn(
            f"vertex set has {len(vertices)} of {expected} vertices; adjacency may be incomplete",
            IncompleteSetWarning,
            stacklevel=2,
        )
    out = {}
    for u in vertices.all_vertices():
        nbrs = []
        for i in range(A.m):
            f = u.key.flip(i)
            if f in vertices:
                nbrs.append(vertices.get(f))
        out[u.key] = nbrs
    return out


def base_diameter(A, vertices: VertexSet, v: Vertex, adj=None) -> float:
    """Diameter of the set of vertices adjacent to ``v``."""
    if adj is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IncompleteSetWarning)
            adj = adjacency(A, vertices)
    if v.key not in vertices:
        raise VertexNotInSetError(repr(v.key))
    nbrs = adj[v.key]
    if len(nbrs) < 2:
        return 0.0
    pts = np.array([u.point for u in nbrs])
    return max(float(np.linalg.norm(p - r)) for p, r in combinations(pts, 2))


def max_base_diameter(A, vertices: VertexSet) -> float:
    adj = adjacency(A, vertices)
    return max(base_diameter(A, vertices, v, adj) for v in vertices)


def _margin_lp(M: np.ndarray):
    # max t  s.t.  M x >= t,  -1 <= x <= 1,  with x = u - w and u, w in [0, 1]
    r, n = M.shape
    G = np.zeros((r + 2 * n, 2 * n + 1))
    G[:r, :n] = -M
    G[:r, n:2 * n] = M
    G[:r, -1] = 1.0
    G[r:, :2 * n] = np.eye(2 * n)
    h = np.zeros(r + 2 * n)
    h[r:] = 1.0
    c = np.zeros(2 * n + 1)
    c[-1] = 1.0
    z, _ = simplex_max(c, G, h)
    x = z[:n] - z[n:2 * n]
    return x, float(np.min(M @ x))


def sign_feasible(A, k: SignVector) -> LPFeasibilityResult:
    """Decide whether some ``x`` has ``k_i <a_i, x> > 0`` for every generator.

    Maximizes the margin ``t`` with ``k_i <a_i, x> >= t`` over the box
    ``[-1, 1]^n``; ``k`` is realizable, i.e. ``A k`` is a vertex, iff the
    optimal margin exceeds ``TAU_FEAS``.
    """
    A = as_generator(A)
    signs = np.asarray(k.signs, dtype=float)
    if signs.shape != (A.m,):
        raise ValueError(f"sign vector has length {signs.size}, expected {A.m}")
    M = np.asarray(A.entries).T * signs[:, None]
    return _feasibility(M)


def _feasibility(M: np.ndarray) -> LPFeasibilityResult:
    x, margin = _margin_lp(M)
    feasible = margin > TAU_FEAS
    if 0.0 < margin <= TAU_FEAS:
        warnings.warn(f"LP margin {margin:.3g} is positive but below {TAU_FEAS:g}",
                      SmallMarginWarning, stacklevel=3)
    return LPFeasibilityResult(bool(feasible), x, margin)


def diameter_bound(A) -> float:
    """Upper bound on ``diam(Z(A))``.

    ``2 * sum ||a_i||`` in general, tightened to ``2 sqrt(m)`` when the rows
    of ``A`` are orthonormal.
    """
    A = as_generator(A)
    E = np.asarray(A.entries)
    bound = 2.0 * float(np.linalg.norm(E, axis=0).sum())
    if np.allclose(E @ E.T, np.eye(A.n), rtol=0.0, atol=1e-10):
        bound = min(bound, 2.0 * np.sqrt(A.m))
    return bound
