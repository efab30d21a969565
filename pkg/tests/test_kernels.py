import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from efixlab import kernels

py = kernels.python_backend
c = kernels.compiled_backend
needs_c = pytest.mark.skipif(c is None, reason="compiled backend not built")

# small integer-valued entries make ties common, which stresses the ordering rules
square = st.integers(1, 7).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.integers(0, 4).map(float)))


def _brute_triangle(P, tol):
    out = []
    n = len(P)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs, rhs = P[i, j], P[i, k] + P[k, j]
                if lhs > rhs + tol:
                    out.append((i, j, k, lhs, rhs))
    out.sort(key=lambda r: (-(r[3] - r[4]), r[0], r[1], r[2]))
    return out


def _brute_ladder(P, D, deltas):
    n = len(P)
    out = []
    for d in deltas:
        best = (False, -1.0, -1, -1, -1)
        for z in range(n):
            S = [x for x in range(n) if P[z, x] <= d]
            for x in S:
                for y in S:
                    if not best[0] or D[x, y] > best[1]:
                        best = (True, float(D[x, y]), z, x, y)
        out.append(best)
    return out


@given(square, st.sampled_from([0.0, 0.5]), st.integers(1, 12))
@settings(max_examples=60, deadline=None)
def test_triangle_matches_brute_force(P, tol, limit):
    expected = _brute_triangle(P, tol)
    count, top = py.triangle_scan(P, tol, limit)
    assert count == len(expected)
    assert [tuple(r) for r in top] == expected[:limit]
    if c is not None:
        assert c.triangle_scan(P, tol, limit) == (count, top)


@given(square, st.lists(st.sampled_from([0.0, 1.0, 2.5, 4.0]), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_ladder_matches_brute_force(P, deltas):
    D = np.abs(np.subtract.outer(np.arange(len(P)), np.arange(len(P)))).astype(float)
    deltas = np.array(deltas)
    expected = _brute_ladder(P, D, deltas)
    assert [tuple(r) for r in py.ladder_diameters(P, D, deltas)] == expected
    if c is not None:
        assert [tuple(r) for r in c.ladder_diameters(P, D, deltas)] == expected


@needs_c
def test_backends_agree_on_large_input():
    rng = np.random.default_rng(3)
    P = rng.integers(0, 5, size=(40, 40)).astype(float)
    assert py.triangle_scan(P, 0.0, 10) == c.triangle_scan(P, 0.0, 10)
    D = rng.random((40, 40))
    deltas = np.array([2.0, 1.0, 0.0])
    assert [tuple(r) for r in py.ladder_diameters(P, D, deltas)] == \
        [tuple(r) for r in c.ladder_diameters(P, D, deltas)]


def test_backend_selection_flag():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (c is not None)
