import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ParameterError
from delocalization.profiles import (adjacency_profiles, c_sweep,
                                     extended_profiles, linf_family_check,
                                     profile, second_profile, threshold_for)
from graphs.graph import GnpSpec, Graph, sample_gnp
from spectral.decomposition import second_eigenvector


class ProfileTest(SimpleTestCase):
    def test_standard_basis_vector(self):
        """e₁: ровно одна компонента выше порога."""
        v = np.zeros(50)
        v[0] = 1.0
        for exponent in (0.0, 1.0, 3.0):
            with self.subTest(exponent=exponent):
                result = profile(v, exponent)
                self.assertEqual(result.fraction_above, 1 / 50)
                self.assertAlmostEqual(result.linf_ratio, math.sqrt(50))

    def test_flat_vector(self):
        for n in (3, 10, 100):
            v = np.full(n, 1 / math.sqrt(n))
            with self.subTest(n=n):
                result = profile(v, 0.0)
                self.assertEqual(result.fraction_above, 1.0)
                self.assertAlmostEqual(result.linf_ratio, 1.0)
                self.assertEqual(sum(result.histogram), n)

    def test_norms(self):
        v = np.array([0.6, 0.8])
        result = profile(v, scale=0.1)
        self.assertAlmostEqual(result.lq_norms['2'], 1.0)
        self.assertAlmostEqual(result.lq_norms['inf'], 0.8)
        self.assertAlmostEqual(result.lq_norms['4'],
                               (0.6 ** 4 + 0.8 ** 4) ** 0.25)

    def test_norm_chain(self):
        """‖v‖_∞ <= ‖v‖₄ <= ‖v‖₂ = 1 и ‖v‖_q >= n^{-1/2+1/q}."""
        rng = np.random.default_rng(4)
        vectors = [np.eye(30)[0], np.full(30, 1 / math.sqrt(30))]
        for n in (5, 50, 500):
            v = rng.standard_normal(n)
            vectors.append(v / np.linalg.norm(v))
        g = sample_gnp(GnpSpec(80, 0.5, seed=3))
        vectors.append(second_eigenvector(g).vector)
        for v in vectors:
            norms = profile(v, 0.0).lq_norms
            n = v.size
            with self.subTest(n=n):
                self.assertLessEqual(norms['inf'], norms['4'] + 1e-12)
                self.assertLessEqual(norms['4'], norms['2'] + 1e-12)
                self.assertAlmostEqual(norms['2'], 1.0, places=12)
                self.assertGreaterEqual(norms['4'], n ** -0.25 - 1e-12)
                self.assertGreaterEqual(norms['inf'], n ** -0.5 - 1e-12)

    def test_requires_unit_vector(self):
        with self.assertRaises(ParameterError):
            profile(np.ones(4), 1.0)

    def test_threshold(self):
        self.assertAlmostEqual(threshold_for(100, scale=0.1), 0.01)
        self.assertAlmostEqual(threshold_for(100, 1.0),
                               1 / (10 * math.log(100)))
        with self.assertRaises(ParameterError):
            threshold_for(100)

    def test_single_coordinate(self):
        """n = 1: log n = 0, логарифмический порог не определён."""
        with self.assertRaises(ParameterError):
            profile(np.array([1.0]), 1.0)
        self.assertEqual(profile(np.array([1.0]), 0.0).fraction_above, 1.0)
        self.assertEqual(
            profile(np.array([-1.0]), scale=0.5).fraction_above, 1.0)

    def test_histogram_rows(self):
        result = profile(np.full(4, 0.5), 0.0)
        rows = result.histogram_rows()
        self.assertEqual(sum(row[2] for row in rows), 4)
        self.assertLess(rows[0][0], rows[0][1])


class GraphProfilesTest(SimpleTestCase):
    def test_triangle(self):
        """K₃: вырожденная пара векторов, доля не меньше 1/3."""
        profiles = adjacency_profiles(Graph.complete(3), 0.0)
        self.assertEqual([item.vector_id for item in profiles],
                         [('A', 2), ('A', 3)])
        for item in profiles:
            with self.subTest(vector=item.vector_id):
                self.assertTrue(item.degenerate)
                self.assertGreaterEqual(item.fraction_above, 1 / 3)

    def test_empty_graph(self):
        profiles = adjacency_profiles(Graph.empty(5), 1.0)
        self.assertEqual(len(profiles), 4)
        for item in profiles:
            self.assertEqual(item.fraction_above, 1 / 5)

    def test_random_graph(self):
        g = sample_gnp(GnpSpec(300, 0.5, seed=0))
        second = second_profile(g, scale=0.1)
        self.assertEqual(second.vector_id, ('Ahat', 2))
        self.assertGreaterEqual(second.fraction_above, 0.4)
        fractions = [item.fraction_above
                     for item in adjacency_profiles(g, scale=0.1, jobs=2)]
        self.assertGreaterEqual(min(fractions), 0.4)

    def test_extended_profiles_skip_first(self):
        g = sample_gnp(GnpSpec(100, 0.5, seed=1))
        indices = [item.vector_id[1] for item in extended_profiles(g, 1.0)]
        self.assertNotIn(1, indices)
        self.assertIn(2, indices)

    def test_linf_family(self):
        g = sample_gnp(GnpSpec(300, 0.5, seed=2))
        check = linf_family_check(g, 1.0)
        self.assertTrue(check.holds)
        self.assertLessEqual(check.worst_ratio, check.bound)


class SweepTest(SimpleTestCase):
    def test_monotone_in_exponent(self):
        """Большее C - ниже порог - не меньшая доля."""
        rng = np.random.default_rng(0)
        v = rng.standard_normal(400)
        v /= np.linalg.norm(v)
        result = c_sweep(v, [3.0, 0.0, 1.0, 2.0])
        exponents = [row[0] for row in result.rows]
        fractions = [row[1] for row in result.rows]
        self.assertEqual(exponents, [0.0, 1.0, 2.0, 3.0])
        self.assertEqual(fractions, sorted(fractions))
        self.assertIsNotNone(result.smallest_c)

    def test_localized_vector_never_reaches_half(self):
        v = np.zeros(100)
        v[3] = 1.0
        self.assertIsNone(c_sweep(v, [0.0, 2.0, 4.0]).smallest_c)
