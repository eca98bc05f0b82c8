"""Exact reference enumerations and Monte Carlo vertex measures.

These are independent of the sampler: :func:`enumerate_bruteforce` decides
realizability of sign vectors by linear programming, and
:func:`enumerate_2d_sweep` walks the boundary of a planar zonotope.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _codes
from .core import SignVector, Vertex, VertexSet, ZonotopeError, as_generator
from .geometry import _feasibility
from .sampler import gaussian_rng

MAX_BRUTEFORCE_M = 24


class TooLargeError(ZonotopeError, ValueError):
    pass


class WrongDimensionError(ZonotopeError, ValueError):
    pass


def enumerate_bruteforce(A) -> VertexSet:
    """Every vertex of ``Z(A)``, found by testing canonical sign vectors with an LP.

    Sign vectors are grown one generator at a time; a prefix that admits no
    strictly separating direction has no realizable extension, so its
    subtree is skipped. The result equals the set of canonical ``k`` with
    ``sign_feasible(A, k)``.
    """
    A = as_generator(A)
    if A.m > MAX_BRUTEFORCE_M:
        raise TooLargeError(f"m={A.m} exceeds the brute-force cap of {MAX_BRUTEFORCE_M}")
    cols = np.asarray(A.entries).T
    out = VertexSet()
    stack = [(1,)]
    while stack:
        prefix = stack.pop()
        j = len(prefix)
        M = cols[:j] * np.asarray(prefix, dtype=float)[:, None]
        if not _feasibility(M).feasible:
            continue
        if j == A.m:
            out.add(Vertex.from_signs(A, SignVector._trusted(prefix)))
            continue
        stack.append(prefix + (-1,))
        stack.append(prefix + (1,))
    return out


def enumerate_2d_sweep(A) -> list[Vertex]:
    """Vertices of a planar zonotope in counterclockwise boundary order.

    Generators are flipped into the upper half-plane and sorted by angle;
    starting from ``-sum a'_i`` the walk adds ``2 a'_i`` in order, then
    subtracts them again, which traces all ``2m`` vertices. Wrap the result
    in :class:`VertexSet` for set comparisons.
    """
    A = as_generator(A)
    if A.n != 2:
        raise WrongDimensionError(f"angular sweep needs n=2, got n={A.n}")
    E = np.asarray(A.entries)
    angle = np.arctan2(E[1], E[0])
    flip = (angle < 0) | (angle >= np.pi)
    orient = np.where(flip, -1, 1)
    angle = np.arctan2(orient * E[1], orient * E[0])
    order = np.argsort(angle, kind="stable")
    if np.any(np.diff(angle[order]) == 0):
        raise ZonotopeError("two generators share a direction")

    signs = [-int(s) for s in orient]
    walk = []
    for i in list(order) + list(order):
        walk.append(Vertex.from_signs(A, SignVector._trusted(tuple(signs))))
        signs[i] = -signs[i]
    return walk[: 2 * A.m]


@dataclass
class MeasureEstimate:
    """Monte Carlo estimate of the Gaussian mass of each vertex pair's normal cones."""

    estimates: dict[SignVector, float]
    standard_errors: dict[SignVector, float]
    other: float
    samples: int

    def total_standard_error(self) -> float:
        return float(np.sqrt(sum(se**2 for se in self.standard_errors.values())))


def estimate_vertex_measure(A, vertices: VertexSet, samples: int, seed: int,
                            chunk: int = 1 << 18) -> MeasureEstimate:
    """Fraction of Gaussian directions mapping to each vertex pair ``{v, -v}``.

    Directions whose key is not in ``vertices`` (possible when the set is
    incomplete) are pooled in ``other``. The estimates and ``other`` sum to
    one exactly.
    """
    A = as_generator(A)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    E = np.ascontiguousarray(A.entries)
    rng = gaussian_rng(seed)
    counts: dict[bytes, int] = {}
    drawn = 0
    while drawn < samples:
        size = min(chunk, samples - drawn)
        X = rng.standard_normal((size, A.n))
        proj = X @ E
        proj = proj[_codes.nondegenerate(proj)]
        uniq, cnt = np.unique(_codes.canonical_codes(proj), return_counts=True)
        for u, c in zip(uniq, cnt):
            b = u.tobytes()
            counts[b] = counts.get(b, 0) + int(c)
        drawn += len(proj)

    est, se = {}, {}
    matched = 0
    for v in vertices:
        c = counts.get(_codes.encode(v.key), 0)
        matched += c
        p = c / samples
        est[v.key] = p
        se[v.key] = float(np.sqrt(p * (1.0 - p) / samples))
    other = (samples - matched) / samples
    return MeasureEstimate(est, se, other, samples)
