import sys
import itertools

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from zonoenum import validate_generators


@pytest.fixture
def square():
    return validate_generators(np.eye(2))


@pytest.fixture
def hexagon():
    return validate_generators([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])


def corner_hull_keys(A):
    """Canonical sign vectors of the hull vertices of all 2^m projected cube corners.

    Independent of the LP and sampling code: uses Qhull on the full corner set.
    """
    E = np.asarray(A)
    m = E.shape[1]
    corners = np.array(list(itertools.product([-1, 1], repeat=m)))
    pts = corners @ E.T
    hull = ConvexHull(pts)
    keys = set()
    for i in hull.vertices:
        k = tuple(int(s) for s in corners[i])
        if k[0] < 0:
            k = tuple(-s for s in k)
        keys.add(k)
    return keys


def keys_of(vs):
    return {k.signs for k in vs.keys()}


def gaussian_generators(n, m, seed):
    rng = np.random.default_rng(seed)
    return validate_generators(rng.standard_normal((n, m)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for cid in sorted(results):
            terminalreporter.write_line(results[cid])
