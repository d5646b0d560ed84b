"""The pure-NumPy kernels against hand oracles, and the compiled backend
against the pure one (exact agreement expected on identical inputs)."""

import collections
import subprocess
import sys

import numpy as np
import pytest

from perronlab import _pure, kernels
from perronlab.families import complete, cycle, edgeless, kite, petersen, random_regular, ring

try:
    from perronlab import _core
except ImportError:
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled extension not built")


def _bfs_oracle(g, source):
    # deque BFS, independent of the array-based kernel
    dist = [-1] * g.n
    dist[source] = 0
    q = collections.deque([source])
    while q:
        u = q.popleft()
        for v in g.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return np.array(dist, dtype=np.int32)


GRAPHS = [
    cycle(9),
    petersen(),
    kite(6, 4),
    ring(4, 3).graph,
    random_regular(40, 3, seed=2),
]


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: f"n{g.n}m{g.m}")
def test_bfs_matches_oracle(g):
    indptr, indices = g.csr
    for s in range(0, g.n, 3):
        got = _pure.bfs_distances(indptr, indices, s, g.n)
        np.testing.assert_array_equal(got, _bfs_oracle(g, s))


def test_bfs_marks_unreachable():
    g = edgeless(5)
    indptr, indices = g.csr
    dist = _pure.bfs_distances(indptr, indices, 2, 5)
    assert dist[2] == 0
    assert sorted(dist) == [-1, -1, -1, -1, 0]


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: f"n{g.n}m{g.m}")
def test_matvec_matches_dense(g):
    indptr, indices = g.csr
    rng = np.random.default_rng(7)
    x = rng.normal(size=g.n)
    got = _pure.csr_matvec(indptr, indices, x)
    np.testing.assert_allclose(got, g.adjacency_matrix() @ x, atol=1e-12)


def test_power_iteration_complete_graph():
    g = complete(12)
    indptr, indices = g.csr
    x0 = np.ones(12) + np.linspace(0, 0.1, 12)
    rho, x, matvecs, ok = _pure.power_iteration(indptr, indices, x0, 1e-13, 1e-10, 10000)
    assert ok
    assert abs(rho - 11.0) < 1e-9
    np.testing.assert_allclose(x, np.full(12, 1 / np.sqrt(12)), atol=1e-8)
    assert matvecs >= 2


def test_power_iteration_zero_image():
    g = edgeless(4)
    indptr, indices = g.csr
    rho, x, matvecs, ok = _pure.power_iteration(indptr, indices, np.ones(4), 1e-13, 1e-10, 50)
    assert rho == 0.0
    assert not ok
    assert matvecs == 1


def test_power_iteration_rejects_zero_start():
    g = cycle(5)
    indptr, indices = g.csr
    with pytest.raises(ValueError):
        _pure.power_iteration(indptr, indices, np.zeros(5), 1e-13, 1e-10, 50)


@needs_core
@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: f"n{g.n}m{g.m}")
def test_core_bfs_agrees_with_pure(g):
    indptr, indices = g.csr
    for s in (0, g.n // 2, g.n - 1):
        a = _pure.bfs_distances(indptr, indices, s, g.n)
        b = _core.bfs_distances(indptr, indices, s, g.n)
        np.testing.assert_array_equal(np.asarray(a), np.asarray(b))


@needs_core
@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: f"n{g.n}m{g.m}")
def test_core_matvec_agrees_with_pure(g):
    indptr, indices = g.csr
    x = np.random.default_rng(3).normal(size=g.n)
    a = _pure.csr_matvec(indptr, indices, x)
    b = _core.csr_matvec(indptr, indices, x)
    np.testing.assert_allclose(np.asarray(a), np.asarray(b), rtol=0, atol=1e-12)


@needs_core
def test_core_power_agrees_with_pure():
    g = random_regular(60, 3, seed=4)
    indptr, indices = g.csr
    x0 = np.full(60, 1.0 / np.sqrt(60))
    ra, xa, _, oka = _pure.power_iteration(indptr, indices, x0, 1e-13, 1e-10, 10**6)
    rb, xb, _, okb = _core.power_iteration(indptr, indices, x0, 1e-13, 1e-10, 10**6)
    assert oka and okb
    assert abs(ra - rb) < 1e-10
    np.testing.assert_allclose(np.asarray(xa), np.asarray(xb), atol=1e-8)


def test_backend_reports_a_known_name():
    assert kernels.BACKEND in ("python", "cython")


def test_env_override_forces_python_backend():
    code = "import perronlab.kernels as k; print(k.BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PERRONLAB_PURE": "1", "PATH": "/usr/bin:/bin:/usr/local/bin"},
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "python"
