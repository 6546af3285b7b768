import math

import numpy as np
from django.test import SimpleTestCase, override_settings
from scipy import stats

from core.exceptions import ParameterError
from delocalization.concentration import (EXACT, MONTE_CARLO,
                                          BernoulliSumSpec, conc_estimate,
                                          conc_exact_1d, conc_monte_carlo_1d,
                                          exact_pmf, lo_bound_check,
                                          rv_projection_check)


def binomial_window(m, p, t):
    pmf = stats.binom.pmf(np.arange(m + 1), m, p)
    width = int(math.floor(2 * t)) + 1
    return max(pmf[k:k + width].sum() for k in range(m + 1))


class ExactConcentrationTest(SimpleTestCase):
    def test_matches_binomial_oracle(self):
        for m in (25, 100, 400):
            for t in (0.0, 1.0, 2.5):
                with self.subTest(m=m, t=t):
                    value = conc_exact_1d(BernoulliSumSpec.ones(m), t).value
                    self.assertAlmostEqual(
                        value, binomial_window(m, 0.5, t), delta=1e-12)

    def test_hundred_ones(self):
        """P(X ∈ {49, 50, 51}) для суммы 100 монет."""
        value = conc_exact_1d(BernoulliSumSpec.ones(100), 1.0).value
        self.assertAlmostEqual(value, 0.2356, places=4)

    def test_single_weight(self):
        for p in (0.1, 0.5, 0.9):
            with self.subTest(p=p):
                self.assertEqual(
                    conc_exact_1d(BernoulliSumSpec.ones(1, p), 1.0).value,
                    1.0)

    def test_zero_radius_is_largest_atom(self):
        spec = BernoulliSumSpec.ones(30, 0.3)
        _, pmf = exact_pmf(spec)
        self.assertAlmostEqual(conc_exact_1d(spec, 0.0).value, pmf.max(),
                               delta=1e-15)

    def test_monotone_in_radius(self):
        specs = [BernoulliSumSpec.ones(40),
                 BernoulliSumSpec((1.0, 2.0, -3.0, 5.0, 1.0), 0.3)]
        radii = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 20.0]
        for spec in specs:
            values = [conc_exact_1d(spec, t).value for t in radii]
            with self.subTest(weights=spec.weights[:5]):
                self.assertEqual(values, sorted(values))
                self.assertAlmostEqual(values[-1], 1.0, places=12)

    def test_zero_weights(self):
        spec = BernoulliSumSpec((0.0, 0.0, 0.0), 0.5)
        self.assertEqual(conc_exact_1d(spec, 0.0).value, 1.0)

    def test_negative_weights(self):
        spec = BernoulliSumSpec((1.0, -1.0), 0.5)
        offset, pmf = exact_pmf(spec)
        self.assertEqual(offset, -1)
        np.testing.assert_allclose(pmf, [0.25, 0.5, 0.25])

    def test_infeasible_requests(self):
        cases = [
            BernoulliSumSpec((0.5, 1.0), 0.5),
            BernoulliSumSpec((10 ** 8,), 0.5),
        ]
        for spec in cases:
            with self.subTest(weights=spec.weights):
                with self.assertRaisesMessage(ParameterError, 'monte_carlo'):
                    conc_exact_1d(spec, 1.0)

    def test_invalid_parameters(self):
        with self.assertRaises(ParameterError):
            BernoulliSumSpec((1.0,), 1.0)
        with self.assertRaises(ParameterError):
            conc_exact_1d(BernoulliSumSpec.ones(3), -1.0)
        with self.assertRaises(ParameterError):
            conc_estimate(BernoulliSumSpec.ones(3), 1.0, method='guess')


class MonteCarloTest(SimpleTestCase):
    def test_agrees_with_exact(self):
        spec = BernoulliSumSpec.ones(20)
        exact = conc_exact_1d(spec, 1.0).value
        sampled = conc_monte_carlo_1d(spec, 1.0, trials=200_000, seed=3)
        self.assertEqual(sampled.method, MONTE_CARLO)
        self.assertLessEqual(abs(sampled.value - exact),
                             4 * sampled.standard_error)

    def test_monotone_in_radius(self):
        """При одном зерне выборка общая, и conc не убывает по t."""
        spec = BernoulliSumSpec((1.0, 0.5, -2.0, 0.25) * 5, 0.4)
        values = [
            conc_monte_carlo_1d(spec, t, trials=20_000, seed=5).value
            for t in (0.0, 0.25, 0.5, 1.0, 2.0, 4.0)
        ]
        self.assertEqual(values, sorted(values))

    @override_settings(MONTE_CARLO_CHUNK=1000)
    def test_independent_of_jobs(self):
        """Результат зависит только от зерна, не от числа потоков."""
        spec = BernoulliSumSpec.ones(15)
        serial = conc_monte_carlo_1d(spec, 1.0, trials=5500, seed=9, jobs=1)
        threaded = conc_monte_carlo_1d(spec, 1.0, trials=5500, seed=9,
                                       jobs=4)
        self.assertEqual(serial, threaded)


class LittlewoodOffordTest(SimpleTestCase):
    def test_implied_constant(self):
        check = lo_bound_check(BernoulliSumSpec.ones(100), 1.0)
        self.assertEqual(check.estimate.method, EXACT)
        self.assertAlmostEqual(check.implied_c, 1.178, places=3)
        self.assertTrue(check.holds)

    def test_scaling_in_m(self):
        values = [lo_bound_check(BernoulliSumSpec.ones(m), 1.0).estimate.value
                  for m in (25, 100, 400)]
        for before, after in zip(values, values[1:]):
            with self.subTest(m_value=before):
                self.assertLessEqual(abs(after / before - 0.5), 0.075)

    def test_radius_growth(self):
        for r in (1.0, 2.0, 4.0, 8.0):
            with self.subTest(r=r):
                check = lo_bound_check(BernoulliSumSpec.ones(100), r)
                self.assertLessEqual(check.implied_c, 4.0)

    def test_radius_below_one(self):
        with self.assertRaises(ParameterError):
            lo_bound_check(BernoulliSumSpec.ones(10), 0.5)

    def test_no_large_weights(self):
        with self.assertRaises(ParameterError):
            lo_bound_check(BernoulliSumSpec((0.5, 0.25), 0.5), 1.0)


class ProjectionCheckTest(SimpleTestCase):
    def test_line_embedding(self):
        """d = 1, T = e₁, нормаль e₂: проекция не трогает прямую."""
        spec = BernoulliSumSpec.ones(20)
        check = rv_projection_check(
            1, 2, spec, 1.0, trials=100_000, seed=1,
            embedding=[[1.0], [0.0]], normal=[0.0, 1.0])
        exact = conc_exact_1d(spec, 1.0).value
        self.assertLessEqual(abs(check.estimate.value - exact),
                             4 * check.estimate.standard_error)

    def test_constant_vector(self):
        spec = BernoulliSumSpec((0.0, 0.0), 0.5)
        check = rv_projection_check(2, 5, spec, 0.5, trials=1000, seed=0)
        self.assertEqual(check.estimate.value, 1.0)

    def test_fitted_constant(self):
        check = rv_projection_check(3, 8, BernoulliSumSpec.ones(50), 1.0,
                                    trials=100_000, seed=0)
        self.assertLessEqual(check.fitted_c, 10.0)
        self.assertTrue(check.holds)
        self.assertLessEqual(check.estimate.value, check.bound)

    def test_dimension_limits(self):
        for d, n in ((0, 5), (5, 5)):
            with self.subTest(d=d, n=n):
                with self.assertRaises(ParameterError):
                    rv_projection_check(d, n, BernoulliSumSpec.ones(3), 1.0,
                                        trials=10)
