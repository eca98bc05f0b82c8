"""Reading generator matrices and writing vertex sets and measure tables."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .core import SignVector, Vertex, VertexSet, ZonotopeError


class MatrixFormatError(ZonotopeError, ValueError):
    pass


def _g(x: float) -> str:
    return format(float(x), ".17g")


def read_matrix_csv(path) -> np.ndarray:
    """One row per ambient dimension, comma separated, no header."""
    text = Path(path).read_text()
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    try:
        arr = np.array([[float(c) for c in r] for r in rows])
    except ValueError as exc:
        raise MatrixFormatError(f"{path}: {exc}") from exc
    if arr.ndim != 2 or arr.size == 0:
        raise MatrixFormatError(f"{path}: rows have unequal lengths or file is empty")
    return arr


def read_matrix_json(path) -> np.ndarray:
    """``{"n": ..., "m": ..., "entries": [row-major flat list]}``."""
    try:
        doc = json.loads(Path(path).read_text())
        n, m = int(doc["n"]), int(doc["m"])
        flat = np.asarray(doc["entries"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"{path}: {exc}") from exc
    if flat.shape != (n * m,):
        raise MatrixFormatError(f"{path}: expected {n * m} entries, got {flat.size}")
    return flat.reshape(n, m)


def read_matrix(path) -> np.ndarray:
    """Dispatch on file suffix: ``.json`` or CSV otherwise."""
    if Path(path).suffix.lower() == ".json":
        return read_matrix_json(path)
    return read_matrix_csv(path)


def matrix_to_csv(A) -> str:
    E = np.asarray(A)
    return "".join(",".join(_g(x) for x in row) + "\n" for row in E)


def matrix_to_json(A) -> str:
    E = np.asarray(A)
    return json.dumps({"n": E.shape[0], "m": E.shape[1], "entries": [float(x) for x in E.ravel()]})


def vertices_to_csv(vertices) -> str:
    """One row per vertex: the ``m`` signs, then ``n`` coordinates to 17 significant digits.

    ``vertices`` is a :class:`VertexSet` (written with negations, each
    canonical vertex first) or an ordered list of :class:`Vertex`.
    """
    rows = vertices.all_vertices() if isinstance(vertices, VertexSet) else vertices
    out = []
    for v in rows:
        out.append(",".join([*(str(s) for s in v.key.signs), *(_g(x) for x in v.point)]) + "\n")
    return "".join(out)


def read_vertices_csv(path, m: int) -> VertexSet:
    """Inverse of :func:`vertices_to_csv`; ``m`` is the number of sign columns."""
    vs = VertexSet()
    for row in csv.reader(io.StringIO(Path(path).read_text())):
        if not row or row[0].startswith("#"):
            continue
        key = SignVector(int(c) for c in row[:m])
        point = np.array([float(c) for c in row[m:]])
        point.setflags(write=False)
        vs.add(Vertex(key, point))
    return vs


def measure_to_csv(estimate) -> str:
    """Rows of canonical signs, estimated pair mass and standard error.

    A leading comment line carries the sample count and the ``other`` mass.
    """
    out = [f"# samples: {estimate.samples}, other: {_g(estimate.other)}\n"]
    for key, p in estimate.estimates.items():
        se = estimate.standard_errors[key]
        out.append(",".join([*(str(s) for s in key.signs), _g(p), _g(se)]) + "\n")
    return "".join(out)
