import itertools
import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ParameterError, PreconditionError
from graphs.graph import (GnpSpec, Graph, add_edge, edges_within_subset,
                          from_json, non_edges, remove_edge, sample_gnp,
                          to_json)


class GnpSamplingTest(SimpleTestCase):
    def test_sampling_is_deterministic(self):
        """Одинаковые (n, p, seed) дают один и тот же граф."""
        spec = GnpSpec(60, 0.3, seed=7)
        self.assertEqual(sample_gnp(spec), sample_gnp(spec))

    def test_different_seeds_differ(self):
        first = sample_gnp(GnpSpec(60, 0.5, seed=1))
        second = sample_gnp(GnpSpec(60, 0.5, seed=2))
        self.assertNotEqual(first, second)

    def test_limits_of_density(self):
        """p около 0 даёт пустой граф, p около 1 - полный."""
        self.assertEqual(
            sample_gnp(GnpSpec(10, 1e-12, seed=0)).edge_count, 0)
        self.assertEqual(
            sample_gnp(GnpSpec(10, 1 - 1e-12, seed=0)).edge_count, 45)

    def test_invalid_parameters(self):
        cases = [
            {'n': 1, 'p': 0.5},
            {'n': 10, 'p': 0.0},
            {'n': 10, 'p': 1.0},
            {'n': 10, 'p': 0.5, 'seed': -1},
        ]
        for kwargs in cases:
            with self.subTest(kwargs=kwargs):
                with self.assertRaises(ParameterError):
                    GnpSpec(**kwargs)

    def test_binomial_edge_count(self):
        """G(1000, 1/2), 100 зёрен: среднее число рёбер в пределах 3σ."""
        n, p = 1000, 0.5
        pairs = math.comb(n, 2)
        sigma = math.sqrt(pairs * p * (1 - p))
        counts = [sample_gnp(GnpSpec(n, p, seed)).edge_count
                  for seed in range(100)]
        self.assertLessEqual(abs(np.mean(counts) - pairs * p), 3 * sigma)
        for seed, count in enumerate(counts):
            with self.subTest(seed=seed):
                self.assertLessEqual(abs(count - pairs * p), 5 * sigma)

    def test_graph_is_simple(self):
        g = sample_gnp(GnpSpec(40, 0.5, seed=3))
        self.assertTrue(np.array_equal(g.adjacency, g.adjacency.T))
        self.assertFalse(np.diag(g.adjacency).any())
        self.assertEqual(int(g.degrees.sum()), 2 * g.edge_count)


class PerturbationTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.path = Graph.from_edges(3, [(0, 1), (1, 2)])

    def test_add_edge(self):
        g = add_edge(self.path, 2, 0)
        self.assertTrue(g.has_edge(0, 2))
        self.assertEqual(g.edge_count, 3)
        self.assertFalse(self.path.has_edge(0, 2))

    def test_add_closes_triangle(self):
        """Путь 0-1-2 плюс {0, 2}: треугольник со степенями (2, 2, 2)."""
        g = add_edge(self.path, 0, 2)
        self.assertEqual(g.degrees.tolist(), [2, 2, 2])
        self.assertEqual(g, Graph.complete(3))

    def test_add_changes_two_degrees(self):
        g = sample_gnp(GnpSpec(30, 0.3, seed=5))
        for u, v in non_edges(g)[:25]:
            changed = add_edge(g, u, v).degrees - g.degrees
            with self.subTest(pair=(u, v)):
                self.assertEqual(np.flatnonzero(changed).tolist(), [u, v])
                self.assertEqual(changed[[u, v]].tolist(), [1, 1])

    def test_single_edge_on_two_vertices(self):
        g = add_edge(Graph.empty(2), 0, 1)
        self.assertEqual(g.degrees.tolist(), [1, 1])
        self.assertEqual(g.edges, [(0, 1)])

    def test_add_then_remove_is_identity(self):
        g = sample_gnp(GnpSpec(25, 0.5, seed=6))
        for u, v in non_edges(g)[:20]:
            with self.subTest(pair=(u, v)):
                self.assertEqual(remove_edge(add_edge(g, u, v), u, v), g)

    def test_remove_from_complete_graph(self):
        """K₄ без ребра: 5 рёбер, степени {2, 2, 3, 3}."""
        g = remove_edge(Graph.complete(4), 0, 1)
        self.assertEqual(g.edge_count, 5)
        self.assertEqual(sorted(g.degrees.tolist()), [2, 2, 3, 3])

    def test_add_existing_edge_fails(self):
        with self.assertRaises(PreconditionError):
            add_edge(self.path, 0, 1)

    def test_add_self_loop_fails(self):
        with self.assertRaises(PreconditionError):
            add_edge(self.path, 1, 1)

    def test_remove_edge(self):
        g = remove_edge(self.path, 1, 0)
        self.assertEqual(g.edges, [(1, 2)])

    def test_remove_absent_edge_fails(self):
        with self.assertRaises(PreconditionError):
            remove_edge(self.path, 0, 2)

    def test_vertex_out_of_range(self):
        with self.assertRaises(ParameterError):
            add_edge(self.path, 0, 3)

    def test_non_edges(self):
        """Не-рёбра перечисляются лексикографически."""
        self.assertEqual(non_edges(self.path), [(0, 2)])
        self.assertEqual(non_edges(Graph.complete(4)), [])
        self.assertEqual(len(non_edges(Graph.empty(5))), 10)

    def test_edges_and_non_edges_partition_pairs(self):
        for seed in range(5):
            g = sample_gnp(GnpSpec(20, 0.4, seed))
            edges, missing = set(g.edges), set(non_edges(g))
            with self.subTest(seed=seed):
                self.assertFalse(edges & missing)
                self.assertEqual(edges | missing,
                                 set(itertools.combinations(range(20), 2)))


class SubsetEdgesTest(SimpleTestCase):
    def test_matches_brute_force(self):
        g = sample_gnp(GnpSpec(12, 0.4, seed=11))
        rng = np.random.default_rng(0)
        for _ in range(20):
            subset = rng.choice(12, size=int(rng.integers(0, 13)),
                                replace=False)
            expected = sum(
                g.has_edge(int(u), int(v))
                for u, v in itertools.combinations(subset, 2))
            with self.subTest(subset=sorted(subset.tolist())):
                self.assertEqual(edges_within_subset(g, subset), expected)

    def test_small_subsets(self):
        g = Graph.complete(5)
        self.assertEqual(edges_within_subset(g, []), 0)
        self.assertEqual(edges_within_subset(g, [3]), 0)
        self.assertEqual(edges_within_subset(g, range(5)), 10)

    def test_out_of_range_vertex(self):
        with self.assertRaises(ParameterError):
            edges_within_subset(Graph.complete(3), [0, 5])


class GraphJsonTest(SimpleTestCase):
    def test_round_trip(self):
        g = sample_gnp(GnpSpec(15, 0.5, seed=4))
        self.assertEqual(from_json(to_json(g)), g)

    def test_malformed_fixtures(self):
        cases = [
            'not json',
            '{"n": 3}',
            '{"n": 3, "edges": [[0, 1, 2]]}',
            '{"n": 3, "edges": [[0, "a"]]}',
            '{"n": "3", "edges": []}',
        ]
        for text in cases:
            with self.subTest(text=text):
                with self.assertRaises(ParameterError):
                    from_json(text)

    def test_self_loop_in_fixture(self):
        with self.assertRaises(ParameterError):
            from_json('{"n": 3, "edges": [[1, 1]]}')
