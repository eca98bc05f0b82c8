"""Generator matrices, sign vectors, and the vertex map of a zonotope.

A zonotope ``Z(A) = {A x : x in [-1, 1]^m}`` is described by an ``n x m``
generator matrix ``A``. Every vertex of ``Z(A)`` is ``A k`` for some sign
vector ``k in {-1, +1}^m``, and ``k`` is recovered from any direction ``x``
in the interior of the vertex's normal cone as ``k = sign(A^T x)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

# Absolute threshold below which a component of A^T x counts as zero.
TAU_ZERO = 1e-12
# Columns with |cos| >= 1 - TAU_PAR are rejected as parallel.
TAU_PAR = 1e-10
# Columns with |cos| >= 1 - TAU_WARN are accepted with a warning.
TAU_WARN = 1e-6


class ZonotopeError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ZonotopeError, ValueError):
    """A generator matrix violates the general-position assumptions."""


class BadShapeError(ValidationError):
    pass


class ZeroColumnError(ValidationError):
    def __init__(self, column: int):
        self.column = column
        super().__init__(f"generator column {column} is all zeros")


class ParallelColumnsError(ValidationError):
    def __init__(self, i: int, j: int):
        self.columns = (i, j)
        super().__init__(f"generator columns {i} and {j} are parallel")


class DegenerateDirectionError(ZonotopeError):
    """A direction lies (numerically) on one of the generator hyperplanes."""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(
            f"component {index} of A^T x is {value:.3g}, within {TAU_ZERO:g} of zero"
        )


class NearParallelWarning(UserWarning):
    """Two generators are close to parallel; vertex counts become upper bounds."""


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Validated ``n x m`` generator matrix. Build with :func:`validate_generators`."""

    entries: np.ndarray
    near_parallel: tuple[tuple[int, int], ...] = field(default=())

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def general_position(self) -> bool:
        return not self.near_parallel

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def __repr__(self) -> str:
        return f"GeneratorMatrix(n={self.n}, m={self.m})"


def validate_generators(entries) -> GeneratorMatrix:
    """Check ``entries`` against the general-position assumptions.

    Parameters
    ----------
    entries : array_like, shape (n, m)
        Generator matrix; column ``i`` is generator ``a_i``.

    Returns
    -------
    GeneratorMatrix
        Read-only copy of ``entries``. Pairs of columns that are nearly
        (but not numerically) parallel are recorded in ``near_parallel`` and
        reported through :class:`NearParallelWarning`.

    Raises
    ------
    BadShapeError
        Not a 2-d array, ``n < 1``, ``m < n`` or non-finite entries.
    ZeroColumnError
        Some column is identically zero.
    ParallelColumnsError
        Two columns are scalar multiples of each other (to ``TAU_PAR``).
    """
    arr = np.array(entries, dtype=float)
    if arr.ndim != 2:
        raise BadShapeError(f"expected a 2-d array, got shape {arr.shape}")
    n, m = arr.shape
    if n < 1:
        raise BadShapeError("need at least one row")
    if m < n:
        raise BadShapeError(f"need m >= n, got n={n}, m={m}")
    if not np.all(np.isfinite(arr)):
        raise BadShapeError("generator matrix has non-finite entries")

    norms = np.linalg.norm(arr, axis=0)
    for i in range(m):
        if not np.any(arr[:, i]):
            raise ZeroColumnError(i)

    unit = arr / norms
    cos = np.abs(unit.T @ unit)
    iu, ju = np.triu_indices(m, k=1)
    pair_cos = cos[iu, ju]
    bad = np.flatnonzero(pair_cos >= 1.0 - TAU_PAR)
    if bad.size:
        raise ParallelColumnsError(int(iu[bad[0]]), int(ju[bad[0]]))
    close = np.flatnonzero(pair_cos >= 1.0 - TAU_WARN)
    near = tuple((int(iu[t]), int(ju[t])) for t in close)
    if near:
        warnings.warn(
            f"generator pairs {list(near)} are nearly parallel", NearParallelWarning,
            stacklevel=2,
        )
    arr.setflags(write=False)
    return GeneratorMatrix(arr, near)


def as_generator(A) -> GeneratorMatrix:
    if isinstance(A, GeneratorMatrix):
        return A
    return validate_generators(A)


class SignVector:
    """Immutable element of ``{-1, +1}^m``."""

    __slots__ = ("_signs", "_hash")

    def __init__(self, signs: Iterable[int]):
        t = tuple(int(s) for s in signs)
        if not t:
            raise ValueError("sign vector must be nonempty")
        if any(s not in (-1, 1) for s in t):
            raise ValueError(f"sign vector entries must be -1 or +1, got {t}")
        self._signs = t
        self._hash = hash(t)

    @classmethod
    def _trusted(cls, signs: tuple[int, ...]) -> "SignVector":
        obj = cls.__new__(cls)
        obj._signs = signs
        obj._hash = hash(signs)
        return obj

    @property
    def signs(self) -> tuple[int, ...]:
        return self._signs

    @property
    def is_canonical(self) -> bool:
        return self._signs[0] == 1

    def to_array(self) -> np.ndarray:
        return np.array(self._signs, dtype=np.int8)

    def flip(self, i: int) -> "SignVector":
        s = list(self._signs)
        s[i] = -s[i]
        return SignVector._trusted(tuple(s))

    def __neg__(self) -> "SignVector":
        return SignVector._trusted(tuple(-s for s in self._signs))

    def __len__(self) -> int:
        return len(self._signs)

    def __iter__(self) -> Iterator[int]:
        return iter(self._signs)

    def __getitem__(self, i):
        return self._signs[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, SignVector):
            return self._signs == other._signs
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "SignVector(" + "".join("+" if s > 0 else "-" for s in self._signs) + ")"


def canonicalize(k: SignVector) -> tuple[SignVector, int]:
    """Return the representative of ``{k, -k}`` whose first entry is +1.

    The second element is ``+1`` if ``k`` was already canonical and ``-1``
    if it was negated.
    """
    if k.is_canonical:
        return k, 1
    return -k, -1


def vertex_point(A: GeneratorMatrix, signs) -> np.ndarray:
    """``A @ signs`` summed column by column in index order (bitwise reproducible)."""
    s = np.asarray(signs, dtype=float)
    return np.cumsum(np.asarray(A.entries) * s, axis=1)[:, -1].copy()


@dataclass(frozen=True, eq=False)
class Vertex:
    """A zonotope vertex: a sign vector and its image ``A @ key``."""

    key: SignVector
    point: np.ndarray

    @classmethod
    def from_signs(cls, A: GeneratorMatrix, key: SignVector) -> "Vertex":
        p = vertex_point(A, key.signs)
        p.setflags(write=False)
        return cls(key, p)

    def __neg__(self) -> "Vertex":
        p = -self.point + 0.0  # no negative zeros
        p.setflags(write=False)
        return Vertex(-self.key, p)

    def canonical(self) -> "Vertex":
        return self if self.key.is_canonical else -self

    def __repr__(self) -> str:
        return f"Vertex({self.key!r}, {np.array2string(self.point, precision=6)})"


class VertexSet:
    """Centrally symmetric set of zonotope vertices keyed by canonical sign vector.

    ``len(vs)`` counts vertices including negations, so it is always twice the
    number of stored canonical entries.
    """

    def __init__(self, vertices: Iterable[Vertex] = ()):
        self._entries: dict[SignVector, Vertex] = {}
        for v in vertices:
            self.add(v)

    def add(self, v: Vertex) -> bool:
        """Insert ``v`` together with ``-v``. Returns False if already present."""
        v = v.canonical()
        if v.key in self._entries:
            return False
        self._entries[v.key] = v
        return True

    @property
    def entries(self) -> dict[SignVector, Vertex]:
        return dict(self._entries)

    @property
    def num_pairs(self) -> int:
        return len(self._entries)

    def __len__(self) -> int:
        return 2 * len(self._entries)

    def __contains__(self, item) -> bool:
        if isinstance(item, Vertex):
            item = item.key
        if isinstance(item, SignVector):
            return canonicalize(item)[0] in self._entries
        return False

    def __iter__(self) -> Iterator[Vertex]:
        """Iterate over canonical vertices only."""
        return iter(self._entries.values())

    def keys(self) -> list[SignVector]:
        return list(self._entries)

    def get(self, key: SignVector) -> Vertex:
        """Look up a vertex in the orientation of ``key``."""
        canon, parity = canonicalize(key)
        v = self._entries[canon]
        return v if parity == 1 else -v

    def all_vertices(self) -> list[Vertex]:
        """Every vertex, each canonical one followed by its negation."""
        out = []
        for v in self._entries.values():
            out.append(v)
            out.append(-v)
        return out

    def points(self) -> np.ndarray:
        """Array of shape (len(self), n) in the order of :meth:`all_vertices`."""
        if not self._entries:
            return np.empty((0, 0))
        canon = np.array([v.point for v in self._entries.values()])
        out = np.empty((2 * len(canon), canon.shape[1]))
        out[0::2] = canon
        out[1::2] = -canon + 0.0
        return out

    def keyset(self) -> frozenset[SignVector]:
        return frozenset(self._entries)

    def issubset(self, other: "VertexSet") -> bool:
        return all(k in other._entries for k in self._entries)

    def union(self, other: "VertexSet") -> "VertexSet":
        out = VertexSet(self)
        for v in other:
            out.add(v)
        return out

    def without(self, keys: Iterable[SignVector]) -> "VertexSet":
        """Copy with the pairs ``{k, -k}`` removed for every ``k`` in ``keys``."""
        drop = {canonicalize(k)[0] for k in keys}
        return VertexSet(v for k, v in self._entries.items() if k not in drop)

    def restrict(self, keys: Iterable[SignVector]) -> "VertexSet":
        keep = {canonicalize(k)[0] for k in keys}
        return VertexSet(v for k, v in self._entries.items() if k in keep)

    def __eq__(self, other) -> bool:
        if isinstance(other, VertexSet):
            return self.keyset() == other.keyset()
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"VertexSet({len(self)} vertices)"


def sign_vector(A: GeneratorMatrix, x) -> SignVector:
    """``sign(A^T x)`` in its natural orientation.

    Raises :class:`DegenerateDirectionError` when some ``|<a_i, x>|`` is at
    most ``TAU_ZERO``.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("direction must be finite")
    s = np.asarray(A.entries).T @ x
    small = np.flatnonzero(np.abs(s) <= TAU_ZERO)
    if small.size:
        i = int(small[0])
        raise DegenerateDirectionError(i, float(s[i]))
    return SignVector._trusted(tuple(1 if v > 0 else -1 for v in s))


def vertex_map(A: GeneratorMatrix, x, canonical: bool = True) -> Vertex:
    """Map a direction ``x`` to the vertex ``A sign(A^T x)``.

    With ``canonical=True`` (default) the returned vertex is the canonical
    member of the pair ``{v, -v}``; otherwise it is ``v`` itself, the vertex
    maximizing ``<x, .>`` over the zonotope.
    """
    A = as_generator(A)
    k = sign_vector(A, x)
    if canonical:
        k = canonicalize(k)[0]
    return Vertex.from_signs(A, k)


def vertex_count_upper_bound(m: int, n: int) -> int:
    """Number of vertices of an ``n``-dimensional zonotope with ``m`` generators
    in general position: ``2 * sum_{i<n} C(m-1, i)``.

    Exact integer arithmetic; an upper bound when general position fails.
    """
    m, n = int(m), int(n)
    if n < 1 or m < n:
        raise ValueError(f"need m >= n >= 1, got m={m}, n={n}")
    return 2 * sum(math.comb(m - 1, i) for i in range(n))
