"""Randomized vertex enumeration by Gaussian sampling.

Each standard Gaussian direction ``x`` picks out the vertex
``A sign(A^T x)``; the vertex and its negation are added to the running set.
Sampling is vectorized in chunks, but stopping decisions are made at the
exact sample where a policy fires, so results do not depend on the chunking.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from . import _codes
from .core import (
    GeneratorMatrix,
    SignVector,
    Vertex,
    VertexSet,
    as_generator,
    vertex_count_upper_bound,
)

DEFAULT_MAX_SAMPLES = 10**8
_FIRST_CHUNK = 256
_MAX_CHUNK = 1 << 16


@dataclass(frozen=True)
class FullEnumeration:
    """Stop once every vertex predicted by the general-position count is found."""


@dataclass(frozen=True)
class FixedSamples:
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")


@dataclass(frozen=True)
class NoNewVertexStreak:
    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be >= 1")


StoppingPolicy = Union[FullEnumeration, FixedSamples, NoNewVertexStreak]


def parse_policy(text: str) -> StoppingPolicy:
    """Parse ``full``, ``fixed:<p>`` or ``streak:<s>``."""
    name, _, arg = text.partition(":")
    if name == "full" and not arg:
        return FullEnumeration()
    if name == "fixed" and arg:
        return FixedSamples(int(arg))
    if name == "streak" and arg:
        return NoNewVertexStreak(int(arg))
    raise ValueError(f"unknown stopping policy {text!r}")


def format_policy(policy: StoppingPolicy) -> str:
    if isinstance(policy, FixedSamples):
        return f"fixed:{policy.p}"
    if isinstance(policy, NoNewVertexStreak):
        return f"streak:{policy.s}"
    return "full"


class Termination(str, Enum):
    FULL_ENUMERATION = "full_enumeration"
    FIXED_SAMPLES = "fixed_samples"
    NO_NEW_VERTEX_STREAK = "no_new_vertex_streak"
    INCOMPLETE = "incomplete"


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    stop: StoppingPolicy = field(default_factory=FullEnumeration)
    max_samples: int = DEFAULT_MAX_SAMPLES
    batch_size: int = 1000

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.max_samples < 1:
            raise ValueError("max_samples must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass
class EnumerationResult:
    """Outcome of a sampling run.

    ``trace`` holds ``(sample_index, vertices_found)`` every ``batch_size``
    samples plus a final record; ``discovered_at`` maps each canonical key
    to the 1-based index of the sample that first produced it.
    """

    vertices: VertexSet
    samples_used: int
    trace: list[tuple[int, int]]
    terminated_by: Termination
    discovered_at: dict[SignVector, int]
    target: int

    @property
    def incomplete(self) -> bool:
        return self.terminated_by is Termination.INCOMPLETE

    def vertices_at(self, p: int) -> VertexSet:
        """Vertex set after the first ``p`` samples."""
        return VertexSet(v for v in self.vertices if self.discovered_at[v.key] <= p)

    def to_dict(self, vertices=None) -> dict:
        """JSON-ready summary; ``vertices`` may be a CSV path, else rows are inlined."""
        if vertices is None:
            vertices = [
                [*v.key.signs, *map(float, v.point)] for v in self.vertices.all_vertices()
            ]
        return {
            "samples_used": self.samples_used,
            "terminated_by": self.terminated_by.value,
            "vertices": vertices,
            "trace": [[int(i), int(c)] for i, c in self.trace],
        }


def gaussian_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """PCG64 generator for stream ``stream`` of ``seed``.

    Streams are independent children of ``SeedSequence(seed)`` selected by
    spawn key, so stream 0 of a parallel run is the serial stream.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(stream),))
    return np.random.Generator(np.random.PCG64(ss))


def gaussian_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    """Next standard Gaussian vector in ``R^n`` from ``rng``.

    Drawing a block of ``b`` vectors at once yields the same values as ``b``
    successive calls, which is what makes chunked sampling reproducible.
    """
    return rng.standard_normal(n)


def _draw_codes(rng, A_entries, size):
    X = rng.standard_normal((size, A_entries.shape[0]))
    proj = X @ A_entries
    proj = proj[_codes.nondegenerate(proj)]
    return _codes.canonical_codes(proj)


class _Run:
    def __init__(self, A: GeneratorMatrix, cfg: SamplerConfig, workers: int):
        self.A = A
        self.cfg = cfg
        self.workers = workers
        self.target = vertex_count_upper_bound(A.m, A.n)
        policy = cfg.stop
        if isinstance(policy, FullEnumeration) and not A.general_position:
            warnings.warn(
                "generators are nearly parallel; full enumeration falls back to a "
                f"no-new-vertex streak of {100 * self.target}",
                stacklevel=3,
            )
            policy = NoNewVertexStreak(100 * self.target)
        self.policy = policy
        self.seen: dict[bytes, int] = {}
        self.positions: list[int] = []
        self.used = 0
        self.last_new = 0
        self.trace: list[tuple[int, int]] = []
        self.terminated: Termination | None = None

    def budget(self) -> int:
        cap = self.cfg.max_samples
        if isinstance(self.policy, FixedSamples):
            cap = min(cap, self.policy.p)
        return cap - self.used

    def consume(self, codes: np.ndarray):
        budget = self.budget()
        codes = codes[:budget]
        count = len(codes)
        stop_at = None
        fired = None
        if count:
            uniq, first = np.unique(codes, return_index=True)
            order = np.argsort(first, kind="stable")
            new_codes, new_pos = [], []
            for t in order:
                b = uniq[t].tobytes()
                if b not in self.seen:
                    new_codes.append(b)
                    new_pos.append(self.used + int(first[t]) + 1)
            policy = self.policy
            if isinstance(policy, FullEnumeration):
                need = self.target // 2 - len(self.seen)
                if len(new_codes) >= need:
                    new_codes, new_pos = new_codes[:need], new_pos[:need]
                    stop_at = new_pos[-1] if new_pos else self.used
                    fired = Termination.FULL_ENUMERATION
            elif isinstance(policy, NoNewVertexStreak):
                prev = self.last_new
                for idx, pos in enumerate(new_pos):
                    if pos - prev > policy.s:
                        stop_at = prev + policy.s
                        new_codes, new_pos = new_codes[:idx], new_pos[:idx]
                        break
                    prev = pos
                else:
                    if self.used + count - prev >= policy.s:
                        stop_at = prev + policy.s
                if stop_at is not None:
                    fired = Termination.NO_NEW_VERTEX_STREAK
            for b, pos in zip(new_codes, new_pos):
                self.seen[b] = pos
                self.positions.append(pos)
            if new_pos:
                self.last_new = new_pos[-1]
        end = stop_at if stop_at is not None else self.used + count
        self._record(end)
        self.used = end
        if fired is not None:
            self.terminated = fired
        elif isinstance(self.policy, FixedSamples) and self.used >= self.policy.p:
            self.terminated = Termination.FIXED_SAMPLES
        elif self.used >= self.cfg.max_samples:
            self.terminated = Termination.INCOMPLETE

    def _record(self, end: int):
        bs = self.cfg.batch_size
        mark = (self.used // bs + 1) * bs
        while mark <= end:
            found = 2 * int(np.searchsorted(self.positions, mark, side="right"))
            self.trace.append((mark, found))
            mark += bs

    def execute(self) -> EnumerationResult:
        A = np.ascontiguousarray(self.A.entries)
        rngs = [gaussian_rng(self.cfg.seed, w) for w in range(self.workers)]
        chunk = _FIRST_CHUNK
        pool = ThreadPoolExecutor(self.workers) if self.workers > 1 else None
        try:
            while self.terminated is None:
                size = min(chunk, max(1, math.ceil(self.budget() / self.workers)))
                if pool is None:
                    parts = [_draw_codes(rngs[0], A, size)]
                else:
                    parts = list(pool.map(lambda r: _draw_codes(r, A, size), rngs))
                for codes in parts:
                    self.consume(codes)
                    if self.terminated is not None:
                        break
                chunk = min(2 * chunk, _MAX_CHUNK)
        finally:
            if pool is not None:
                pool.shutdown()
        if not self.trace or self.trace[-1][0] != self.used:
            self.trace.append((self.used, 2 * len(self.seen)))
        vs = VertexSet()
        discovered = {}
        for b, pos in self.seen.items():
            key = _codes.decode(b, self.A.m)
            vs.add(Vertex.from_signs(self.A, key))
            discovered[key] = pos
        return EnumerationResult(vs, self.used, self.trace, self.terminated, discovered, self.target)


def enumerate_vertices(A, cfg: SamplerConfig | None = None) -> EnumerationResult:
    """Sample vertices of ``Z(A)`` until the stopping policy in ``cfg`` fires.

    Degenerate directions (some ``|<a_i, x>|`` at most ``TAU_ZERO``) are
    redrawn and do not count as samples. If ``max_samples`` runs out first
    the partial set is returned with ``terminated_by == INCOMPLETE``.
    """
    A = as_generator(A)
    return _Run(A, cfg or SamplerConfig(), 1).execute()


def enumerate_parallel(A, cfg: SamplerConfig | None = None, workers: int = 1) -> EnumerationResult:
    """Like :func:`enumerate_vertices` with ``workers`` independent streams.

    Worker ``w`` draws from ``gaussian_rng(seed, w)``; chunks are merged in
    worker order each round, so the run is deterministic for a fixed worker
    count and ``workers=1`` reproduces :func:`enumerate_vertices` exactly.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    A = as_generator(A)
    return _Run(A, cfg or SamplerConfig(), workers).execute()
