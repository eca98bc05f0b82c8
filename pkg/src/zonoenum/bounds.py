"""Sample-complexity and approximation bounds for randomized enumeration.

Two forms of the cone-mass threshold are provided. ``"statement"`` is the
threshold ``((1 - sin(arctan(b/delta))) / 2) ** ((n-1)/2)`` paired with the
miss rate ``1 - k``; ``"proof"`` is
``(2 (1 - sin(arctan(b/delta)))) ** ((n-1)/2) / 2**n`` paired with the
miss rate ``1 - 2k``. The two differ by constant factors; ``"proof"`` is the
default.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import SignVector, VertexSet, ZonotopeError


class Variant(str, Enum):
    STATEMENT = "statement"
    PROOF = "proof"


class DegenerateBoundError(ZonotopeError, ValueError):
    pass


class MissingConstantsError(ZonotopeError, KeyError):
    pass


@dataclass(frozen=True)
class SampleBoundInput:
    epsilon: float
    delta: float
    b: float
    n: int
    num_vertices: int
    variant: Variant = Variant.PROOF

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if not self.b > 0:
            raise ValueError("b must be positive")
        if self.num_vertices < 1:
            raise ValueError("num_vertices must be positive")


@dataclass(frozen=True)
class HausdorffBoundResult:
    bound: float
    confidence: float
    a: int
    vacuous: bool


def _one_minus_sin_arctan(r: float) -> float:
    # 1 - r / sqrt(1 + r^2) without cancellation for large r
    return 1.0 / (math.hypot(1.0, r) * (math.hypot(1.0, r) + r))


def cone_mass_threshold(delta: float, b: float, n: int, variant=Variant.PROOF) -> float:
    """Gaussian cone mass below which a vertex's simplicial constant is at most ``delta``."""
    variant = Variant(variant)
    if not (delta > 0 and b > 0):
        raise ValueError("delta and b must be positive")
    if n < 2:
        raise ValueError("cone mass threshold needs n >= 2")
    u = _one_minus_sin_arctan(b / delta)
    e = (n - 1) / 2.0
    if variant is Variant.STATEMENT:
        return (u / 2.0) ** e
    return (2.0 * u) ** e / 2.0**n


def sample_bound(inp: SampleBoundInput) -> int:
    """Smallest integer ``p`` exceeding ``log(num_vertices/epsilon) / log(1/(1-rate))``.

    ``rate`` is ``k`` for the statement variant and ``2k`` for the proof
    variant, with ``k`` from :func:`cone_mass_threshold`.
    """
    variant = Variant(inp.variant)
    k = cone_mass_threshold(inp.delta, inp.b, inp.n, variant)
    rate = k if variant is Variant.STATEMENT else 2.0 * k
    if rate >= 1.0 or rate <= 0.0:
        raise DegenerateBoundError(f"miss rate 1 - {rate:g} is not in (0, 1)")
    denom = -math.log1p(-rate)
    num = math.log(inp.num_vertices / inp.epsilon)
    # ratio < 1 gives a negative threshold; every p >= 1 then qualifies
    return max(math.floor(num / denom) + 1, 1)


def b_orthogonal(m: int) -> float:
    """Base-diameter bound ``2 sqrt(m)`` for generators with orthonormal rows."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return 2.0 * math.sqrt(m)


def hausdorff_bound(full: VertexSet, V: VertexSet, delta: float, epsilon: float,
                    simplicial_constants: dict[SignVector, float]) -> HausdorffBoundResult:
    """Bound ``h(Z, conv V) <= |full minus V| / 2 * delta`` with its confidence ``1 - 2^a epsilon``.

    ``a`` is the number of vertex pairs whose simplicial constant is below
    ``delta``. A confidence at or below zero is returned as is and flagged
    ``vacuous``.
    """
    if not V.issubset(full):
        raise ValueError("V must be a subset of full")
    missing_keys = [k for k in full.keys() if k not in simplicial_constants]
    if missing_keys:
        raise MissingConstantsError(f"no simplicial constant for {missing_keys[0]!r}")
    missed = len(full) - len(V)
    bound = missed / 2 * delta
    a = sum(1 for k in full.keys() if simplicial_constants[k] < delta)
    confidence = 1.0 - 2.0**a * epsilon
    return HausdorffBoundResult(bound, confidence, a, confidence <= 0.0)
