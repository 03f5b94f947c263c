import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from obspart import _kernels as K
from oracles import bfs_reach, brute_sccs, obs_stack_oracle

pure = pytest.mark.skipif(
    not K.USE_NUMBA, reason="backend already runs the pure-python path"
)


def random_bipartite(rng, n_begin, n_end, n_edges):
    cells = rng.choice(n_begin * n_end, size=min(n_edges, n_begin * n_end),
                       replace=False)
    return sorted((int(c) // n_end, int(c) % n_end) for c in cells)


class TestCsr:
    def test_basic_shape(self):
        indptr, indices = K.csr_from_edges(3, [(0, 1), (0, 2), (2, 0)])
        assert indptr.tolist() == [0, 2, 2, 3]
        assert indices.tolist() == [1, 2, 0]

    def test_orders_lexically(self):
        indptr, indices = K.csr_from_edges(2, [(1, 1), (0, 2), (1, 0), (0, 1)])
        assert indices.tolist() == [1, 2, 0, 1]

    def test_empty(self):
        indptr, indices = K.csr_from_edges(2, [])
        assert indptr.tolist() == [0, 0, 0]
        assert indices.size == 0


class TestHopcroftKarp:
    def test_matches_scipy_on_random_graphs(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            nb = int(rng.integers(1, 12))
            ne = int(rng.integers(1, 12))
            edges = random_bipartite(rng, nb, ne, int(rng.integers(0, 3 * nb)) + 1)
            indptr, indices = K.csr_from_edges(nb, edges)
            mine, _ = K.hopcroft_karp(indptr, indices, nb, ne)
            rows = [b for b, _ in edges]
            cols = [e for _, e in edges]
            graph = csr_matrix((np.ones(len(edges)), (rows, cols)), shape=(nb, ne))
            ref = maximum_bipartite_matching(graph, perm_type="column")
            assert int((mine >= 0).sum()) == int((ref >= 0).sum())

    def test_matching_is_consistent(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            nb = int(rng.integers(1, 10))
            ne = int(rng.integers(1, 10))
            edges = random_bipartite(rng, nb, ne, 2 * nb)
            edge_set = set(edges)
            match_begin, match_end = K.hopcroft_karp(
                *K.csr_from_edges(nb, edges), nb, ne
            )
            used_ends = set()
            for b in range(nb):
                e = int(match_begin[b])
                if e >= 0:
                    assert (b, e) in edge_set
                    assert e not in used_ends
                    used_ends.add(e)
                    assert int(match_end[e]) == b

    def test_deterministic(self):
        edges = [(0, 0), (0, 1), (1, 0), (2, 1), (2, 2)]
        a = K.hopcroft_karp(*K.csr_from_edges(3, edges), 3, 3)
        b = K.hopcroft_karp(*K.csr_from_edges(3, edges), 3, 3)
        assert a[0].tolist() == b[0].tolist()
        assert a[1].tolist() == b[1].tolist()


class TestTarjan:
    @given(st.data())
    @settings(max_examples=40)
    def test_matches_brute_force(self, data):
        n = data.draw(st.integers(1, 7))
        arcs = data.draw(
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                max_size=3 * n, unique=True,
            )
        )
        comp, n_comp = K.tarjan_scc(*K.csr_from_edges(n, sorted(arcs)), n)
        groups = {}
        for v in range(n):
            groups.setdefault(int(comp[v]), set()).add(v)
        assert set(map(frozenset, groups.values())) == brute_sccs(n, arcs)
        assert n_comp == len(groups)

    def test_component_ids_topological(self):
        # arcs 0->1->2: pop order makes sinks lower ids
        comp, _ = K.tarjan_scc(*K.csr_from_edges(3, [(0, 1), (1, 2)]), 3)
        assert comp[2] < comp[1] < comp[0]


class TestReachable:
    @given(st.data())
    @settings(max_examples=40)
    def test_matches_bfs(self, data):
        n = data.draw(st.integers(1, 8))
        arcs = data.draw(
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                max_size=3 * n, unique=True,
            )
        )
        seed_nodes = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
        seeds = np.zeros(n, dtype=np.uint8)
        for s in seed_nodes:
            seeds[s] = 1
        mask = K.reachable(*K.csr_from_edges(n, sorted(arcs)), n, seeds)
        assert {v for v in range(n) if mask[v]} == bfs_reach(n, arcs, seed_nodes)


class TestObsStack:
    def test_matches_matrix_powers(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(1, 7))
            p = int(rng.integers(0, 4))
            a = rng.normal(size=(n, n))
            h = rng.normal(size=(p, n))
            np.testing.assert_allclose(
                K.obs_stack(a, h), obs_stack_oracle(a, h), atol=1e-10
            )

    def test_empty_h(self):
        out = K.obs_stack(np.eye(3), np.zeros((0, 3)))
        assert out.shape == (0, 3)


class TestBackendParity:
    """The compiled kernels and their pure-python originals must agree."""

    @pure
    def test_hopcroft_karp_py_func(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            nb = int(rng.integers(1, 10))
            ne = int(rng.integers(1, 10))
            edges = random_bipartite(rng, nb, ne, 2 * nb)
            indptr, indices = K.csr_from_edges(nb, edges)
            jit_b, jit_e = K._hk_kernel(indptr, indices, nb, ne)
            py_b, py_e = K._hk_kernel.py_func(indptr, indices, nb, ne)
            assert jit_b.tolist() == py_b.tolist()
            assert jit_e.tolist() == py_e.tolist()

    @pure
    def test_tarjan_py_func(self):
        rng = np.random.default_rng(29)
        for _ in range(25):
            n = int(rng.integers(1, 10))
            arcs = random_bipartite(rng, n, n, 2 * n)
            indptr, indices = K.csr_from_edges(n, arcs)
            jit_comp, jit_n = K._tarjan_kernel(indptr, indices, n)
            py_comp, py_n = K._tarjan_kernel.py_func(indptr, indices, n)
            assert jit_comp.tolist() == py_comp.tolist()
            assert jit_n == py_n

    @pure
    def test_reachable_py_func(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            n = int(rng.integers(1, 10))
            arcs = random_bipartite(rng, n, n, 2 * n)
            indptr, indices = K.csr_from_edges(n, arcs)
            seeds = (rng.random(n) < 0.3).astype(np.uint8)
            jit = K._reach_kernel(indptr, indices, n, seeds)
            py = K._reach_kernel.py_func(indptr, indices, n, seeds)
            assert jit.tolist() == py.tolist()

    @pure
    def test_obs_stack_py_func(self):
        rng = np.random.default_rng(37)
        a = rng.normal(size=(5, 5))
        h = rng.normal(size=(2, 5))
        jit = K._obs_stack_kernel(np.ascontiguousarray(a), np.ascontiguousarray(h))
        py = K._obs_stack_kernel.py_func(
            np.ascontiguousarray(a), np.ascontiguousarray(h)
        )
        np.testing.assert_allclose(jit, py, atol=0)

    def test_backend_flag_is_reported(self):
        assert K.BACKEND in ("numba", "numpy")
        assert K.USE_NUMBA == (K.BACKEND == "numba")
