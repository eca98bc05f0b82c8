"""Experiment drivers: error traces, stopping-time histograms, timings and measure maps.

Every driver takes an :class:`ExperimentSpec`; results are plain dataclasses
that :func:`format_result` turns into CSV or JSON with the spec embedded as a
provenance header.
"""
from __future__ import annotations

import json
import time
import warnings
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
from scipy import stats

from .core import (
    GeneratorMatrix,
    SignVector,
    ValidationError,
    VertexSet,
    ZonotopeError,
    validate_generators,
)
from .geometry import hausdorff_to_subhull, simplicial_constants
from .io import read_matrix
from .oracle import enumerate_bruteforce, estimate_vertex_measure
from .sampler import (
    FixedSamples,
    FullEnumeration,
    SamplerConfig,
    enumerate_parallel,
)

BRUTEFORCE_LIMIT_M = 12


class NoGroundTruthError(ZonotopeError):
    pass


class ExperimentKind(str, Enum):
    ERROR_TRACE = "error_trace"
    STOPPING_HISTOGRAM = "stopping_histogram"
    TIMING = "timing"
    MEASURE_MAP = "measure_map"


@dataclass(frozen=True)
class ExperimentSpec:
    kind: ExperimentKind
    m: int
    n: int
    trials: int = 10
    sample_checkpoints: tuple[int, ...] = (10, 100, 1000, 10000)
    seed: int = 0
    matrix_source: str = "random"
    max_samples: int = 10**6
    measure_samples: int = 10**6
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", ExperimentKind(self.kind))
        object.__setattr__(self, "sample_checkpoints", tuple(int(p) for p in self.sample_checkpoints))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        cp = self.sample_checkpoints
        if any(b <= a for a, b in zip(cp, cp[1:])) or (cp and cp[0] < 1):
            raise ValueError("checkpoints must be positive and strictly increasing")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d["sample_checkpoints"] = list(self.sample_checkpoints)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "ExperimentSpec":
        return cls.from_dict(json.loads(Path(path).read_text()))


def derive_seed(seed: int, *path: int) -> int:
    """Independent 64-bit seed for a sub-task identified by ``path``."""
    state = np.random.SeedSequence([int(seed), *map(int, path)]).generate_state(1, np.uint64)
    return int(state[0])


def random_orthogonal_generator(n: int, m: int, seed: int, attempts: int = 100) -> GeneratorMatrix:
    """Random ``n x m`` generator with orthonormal rows.

    The rows are the Gram-Schmidt orthonormalization (via QR, with signs
    fixed so the factor is unique) of ``n`` independent Gaussian
    ``m``-vectors. Draws failing validation are replaced.
    """
    if m < n:
        raise ValueError("need m >= n")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))
    for _ in range(attempts):
        G = rng.standard_normal((m, n))
        Q, R = np.linalg.qr(G)
        Q = Q * np.sign(np.diag(R))
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("error")
                return validate_generators(Q.T)
        except (ValidationError, UserWarning):
            continue
    raise ZonotopeError(f"no valid generator matrix after {attempts} attempts")


def load_matrix(spec: ExperimentSpec) -> GeneratorMatrix:
    if spec.matrix_source == "random":
        return random_orthogonal_generator(spec.n, spec.m, spec.seed)
    A = validate_generators(read_matrix(spec.matrix_source))
    if A.shape != (spec.n, spec.m):
        raise ValueError(f"matrix has shape {A.shape}, spec says {(spec.n, spec.m)}")
    return A


def ground_truth(A: GeneratorMatrix, spec: ExperimentSpec) -> tuple[VertexSet, bool]:
    """Exact vertex set by brute force when ``m`` is small, else a long reference run.

    The reference run uses 100 times the largest checkpoint and is flagged
    inexact (second return value False) unless it reached the full count.
    """
    if A.m <= BRUTEFORCE_LIMIT_M:
        return enumerate_bruteforce(A), True
    if not spec.sample_checkpoints:
        raise NoGroundTruthError("no checkpoints to size a reference run")
    p = 100 * spec.sample_checkpoints[-1]
    cfg = SamplerConfig(seed=derive_seed(spec.seed, 0xFFFF), stop=FixedSamples(p), max_samples=p)
    res = enumerate_parallel(A, cfg, spec.workers)
    return res.vertices, len(res.vertices) == res.target


@dataclass(frozen=True)
class TraceRow:
    p: int
    vertices_found: int
    error: float
    exact_zero: bool


@dataclass
class ErrorTraceResult:
    truth_exact: bool
    num_vertices: int
    traces: list[list[TraceRow]]


def run_error_trace(spec: ExperimentSpec, A: GeneratorMatrix | None = None,
                    truth: VertexSet | None = None) -> ErrorTraceResult:
    """Hausdorff error of ``conv(V_p)`` against the true zonotope at each checkpoint.

    One sampling run per trial up to the last checkpoint; ``V_p`` is read
    off the discovery indices, so errors are evaluated after sampling.
    """
    A = A if A is not None else load_matrix(spec)
    exact = True
    if truth is None:
        truth, exact = ground_truth(A, spec)
    pmax = spec.sample_checkpoints[-1]
    traces = []
    for t in range(spec.trials):
        cfg = SamplerConfig(seed=derive_seed(spec.seed, 1, t), stop=FixedSamples(pmax),
                            max_samples=pmax)
        res = enumerate_parallel(A, cfg, spec.workers)
        rows = []
        for p in spec.sample_checkpoints:
            Vp = res.vertices_at(p).restrict(truth.keys())
            if Vp.keyset() == truth.keyset():
                rows.append(TraceRow(p, len(Vp), 0.0, True))
            else:
                rows.append(TraceRow(p, len(Vp), hausdorff_to_subhull(truth, Vp), False))
        traces.append(rows)
    return ErrorTraceResult(exact, len(truth), traces)


@dataclass
class StoppingResult:
    samples: list[int]
    censored: int
    mean: float
    std: float
    min: int
    max: int


def run_stopping_histogram(spec: ExperimentSpec, A: GeneratorMatrix | None = None) -> StoppingResult:
    """Samples needed for complete enumeration in each of ``spec.trials`` runs.

    Trials that hit ``max_samples`` are recorded at the cap and counted in
    ``censored``.
    """
    A = A if A is not None else load_matrix(spec)
    samples, censored = [], 0
    for t in range(spec.trials):
        cfg = SamplerConfig(seed=derive_seed(spec.seed, 2, t), stop=FullEnumeration(),
                            max_samples=spec.max_samples)
        res = enumerate_parallel(A, cfg, spec.workers)
        censored += res.incomplete
        samples.append(res.samples_used)
    arr = np.asarray(samples)
    return StoppingResult(samples, censored, float(arr.mean()), float(arr.std()),
                          int(arr.min()), int(arr.max()))


@dataclass(frozen=True)
class TimingRow:
    n: int
    m: int
    mean: float
    std: float
    trials: int
    incomplete: int


def run_timing(spec: ExperimentSpec, A: GeneratorMatrix | None = None) -> TimingRow:
    """Wall-clock time of full enumeration, mean and standard deviation over trials."""
    A = A if A is not None else load_matrix(spec)
    times, incomplete = [], 0
    for t in range(spec.trials):
        cfg = SamplerConfig(seed=derive_seed(spec.seed, 3, t), stop=FullEnumeration(),
                            max_samples=spec.max_samples)
        start = time.perf_counter()
        res = enumerate_parallel(A, cfg, spec.workers)
        times.append(time.perf_counter() - start)
        incomplete += res.incomplete
    arr = np.asarray(times)
    return TimingRow(A.n, A.m, float(arr.mean()), float(arr.std()), spec.trials, incomplete)


def timing_table(ns, ms, trials: int, seed: int = 0, max_samples: int = 10**6) -> list[TimingRow]:
    rows = []
    for n in ns:
        for m in ms:
            spec = ExperimentSpec(ExperimentKind.TIMING, m=m, n=n, trials=trials, seed=seed,
                                  max_samples=max_samples)
            rows.append(run_timing(spec))
    return rows


@dataclass(frozen=True)
class MeasureRow:
    key: SignVector
    point: tuple[float, ...]
    mass: float
    standard_error: float
    simplicial_constant: float


@dataclass
class MeasureMapResult:
    rows: list[MeasureRow]
    other: float
    spearman: float


def run_measure_map(spec: ExperimentSpec, A: GeneratorMatrix | None = None,
                    vertices: VertexSet | None = None) -> MeasureMapResult:
    """Monte Carlo pair mass and simplicial constant of every canonical vertex."""
    A = A if A is not None else load_matrix(spec)
    if vertices is None:
        vertices, _ = ground_truth(A, spec)
    est = estimate_vertex_measure(A, vertices, spec.measure_samples, derive_seed(spec.seed, 4))
    alphas = simplicial_constants(vertices)
    rows = [
        MeasureRow(v.key, tuple(float(x) for x in v.point), est.estimates[v.key],
                   est.standard_errors[v.key], alphas[v.key])
        for v in vertices
    ]
    rho = spearman([r.mass for r in rows], [r.simplicial_constant for r in rows])
    return MeasureMapResult(rows, est.other, rho)


def spearman(x, y) -> float:
    if len(x) < 2 or np.ptp(x) == 0 or np.ptp(y) == 0:
        return float("nan")
    return float(stats.spearmanr(x, y).statistic)


def run(spec: ExperimentSpec):
    """Dispatch on ``spec.kind``."""
    return {
        ExperimentKind.ERROR_TRACE: run_error_trace,
        ExperimentKind.STOPPING_HISTOGRAM: run_stopping_histogram,
        ExperimentKind.TIMING: run_timing,
        ExperimentKind.MEASURE_MAP: run_measure_map,
    }[spec.kind](spec)


def _g(x: float) -> str:
    return format(float(x), ".17g")


def _csv_body(result) -> list[str]:
    if isinstance(result, ErrorTraceResult):
        lines = ["trial,p,vertices_found,error,exact_zero"]
        for t, rows in enumerate(result.traces):
            lines += [f"{t},{r.p},{r.vertices_found},{_g(r.error)},{int(r.exact_zero)}" for r in rows]
        return lines
    if isinstance(result, StoppingResult):
        return ["trial,samples"] + [f"{t},{s}" for t, s in enumerate(result.samples)]
    if isinstance(result, TimingRow):
        return ["n,m,mean,std,trials,incomplete",
                f"{result.n},{result.m},{_g(result.mean)},{_g(result.std)},{result.trials},{result.incomplete}"]
    if isinstance(result, MeasureMapResult):
        lines = ["signs,coordinates,mass,standard_error,simplicial_constant"]
        for r in result.rows:
            signs = "".join("+" if s > 0 else "-" for s in r.key.signs)
            coords = " ".join(_g(x) for x in r.point)
            lines.append(f"{signs},{coords},{_g(r.mass)},{_g(r.standard_error)},{_g(r.simplicial_constant)}")
        return lines
    raise TypeError(f"unsupported result type {type(result).__name__}")


def _summary(result) -> dict:
    if isinstance(result, ErrorTraceResult):
        return {"truth_exact": result.truth_exact, "num_vertices": result.num_vertices}
    if isinstance(result, StoppingResult):
        return {"censored": result.censored, "mean": result.mean, "std": result.std,
                "min": result.min, "max": result.max}
    if isinstance(result, MeasureMapResult):
        return {"other": result.other, "spearman": result.spearman}
    return {}


def _jsonable(obj):
    if isinstance(obj, SignVector):
        return list(obj.signs)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {f: _jsonable(getattr(obj, f)) for f in obj.__dataclass_fields__}
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def format_result(spec: ExperimentSpec, result, fmt: str = "csv") -> str:
    """Serialize ``result`` with ``spec`` embedded so outputs are self-describing."""
    if fmt == "json":
        doc = {"spec": spec.to_dict(), "summary": _summary(result), "result": _jsonable(result)}
        return json.dumps(doc, sort_keys=True, allow_nan=False) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    header = ["# spec: " + json.dumps(spec.to_dict(), sort_keys=True)]
    summary = _summary(result)
    if summary:
        header.append("# summary: " + json.dumps(_jsonable(summary), sort_keys=True))
    return "\n".join(header + _csv_body(result)) + "\n"
