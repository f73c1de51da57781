#!/usr/bin/python
from __future__ import print_function, division
import unittest

import numpy as np
from scipy import stats

from splinehmm.dataset import Dataset
from splinehmm.splines import KnotConfig, SplineCoeffs
from splinehmm.hmm import log_likelihood
from splinehmm.prior import (PriorConfig, log_prior, log_prior_k,
                             log_prior_knots, log_gamma_density,
                             log_loggamma_density, init_state,
                             draw_from_prior)
from splinehmm.postprocessing import state_moments
from splinehmm.simulate import simulate_model3
from splinehmm.exceptions import ConfigError, EmptyDataError
from splinehmm.tests.testingtools import random_params


class TestPriorDensities(unittest.TestCase):

    def test_log_prior_k(self):
        self.assertAlmostEqual(log_prior_k(2, 50), -np.log(49))
        self.assertAlmostEqual(log_prior_k(50, 50), -np.log(49))
        self.assertEqual(log_prior_k(51, 50), -np.inf)
        self.assertEqual(log_prior_k(1, 50), -np.inf)

    def test_gamma_matches_scipy(self):
        x = np.array([0.3, 1.2, 4.0])
        expected = stats.gamma.logpdf(x, 2.5, scale=1 / 1.5).sum()
        self.assertAlmostEqual(log_gamma_density(x, 2.5, 1.5), expected)
        self.assertEqual(log_gamma_density([1.0, -1.0], 1.0), -np.inf)

    def test_loggamma_matches_change_of_variables(self):
        x = np.array([-2.0, 0.0, 1.5])
        expected = (stats.gamma.logpdf(np.exp(x), 0.7) + x).sum()
        self.assertAlmostEqual(log_loggamma_density(x, 0.7), expected)

    def test_knot_density(self):
        rng = np.random.default_rng(1)
        params = random_params(2, 3, rng, a=-1.0, b=3.0)
        self.assertAlmostEqual(log_prior_knots(params.knots),
                               np.log(6) - 3 * np.log(4.0))

    def test_out_of_support_is_minus_inf(self):
        rng = np.random.default_rng(2)
        params = random_params(2, 3, rng)
        cfg = PriorConfig(k_max=10)
        self.assertTrue(np.isfinite(log_prior(params, cfg)))
        self.assertEqual(log_prior(params, PriorConfig(k_max=2)), -np.inf)
        unordered = params._replace(
            knots=KnotConfig(0.0, 1.0, params.knots.interior[::-1]))
        self.assertEqual(log_prior(unordered, cfg), -np.inf)
        self.assertEqual(log_prior(params._replace(zeta=-1.0), cfg), -np.inf)
        bad_gamma = params._replace(gamma_uncon=-params.gamma_uncon)
        self.assertEqual(log_prior(bad_gamma, cfg), -np.inf)

    def test_shifting_a_coefficient_row(self):
        # The softmax is unchanged, the log-gamma prior is not.
        rng = np.random.default_rng(6)
        params = random_params(2, 3, rng)
        cfg = PriorConfig(k_max=10)
        shift = 0.7
        uncon = params.coeffs.uncon.copy()
        row = uncon[1].copy()
        uncon[1] += shift
        shifted = params._replace(coeffs=SplineCoeffs(uncon))
        np.testing.assert_allclose(shifted.simplex, params.simplex,
                                   atol=1e-14)
        data = Dataset(rng.uniform(0, 1, 30), bounds=(0, 1))
        self.assertAlmostEqual(log_likelihood(shifted, data),
                               log_likelihood(params, data), places=10)
        expected = (params.zeta * shift * len(row) -
                    np.sum(np.exp(row) * (np.exp(shift) - 1)))
        change = log_prior(shifted, cfg) - log_prior(params, cfg)
        self.assertAlmostEqual(change, expected, places=10)
        self.assertNotAlmostEqual(expected, 0.0)

    def test_config_checks(self):
        with self.assertRaises(ConfigError) as context:
            PriorConfig(k_max=1)
        self.assertEqual(context.exception.key, 'k_max')
        with self.assertRaises(ConfigError):
            PriorConfig(eps1=0)
        with self.assertRaises(ConfigError):
            PriorConfig(bounds=(1, 0))


class TestInitialState(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(8)
        obs = np.concatenate([rng.normal(-3, 1, 200), rng.normal(4, 1, 200)])
        self.data = Dataset(obs, bounds=(-10, 10))
        self.cfg = PriorConfig(k_max=20)

    def test_valid_and_deterministic(self):
        first = init_state(self.data, 2, self.cfg, seed=3)
        second = init_state(self.data, 2, self.cfg, seed=3)
        self.assertEqual(first.N, 2)
        self.assertTrue(2 <= first.K <= 10)
        self.assertEqual(first.knots, second.knots)
        self.assertEqual(first.coeffs, second.coeffs)
        self.assertTrue(np.isfinite(log_prior(first, self.cfg)))

    def test_clusters_are_ordered(self):
        params = init_state(self.data, 2, self.cfg, seed=0)
        m1, _ = state_moments(params)
        self.assertLess(m1[0], m1[1])

    def test_anchors(self):
        params = init_state(self.data, 2, self.cfg, seed=0, anchors=[4, -3])
        m1, _ = state_moments(params)
        self.assertGreater(m1[0], m1[1])
        with self.assertRaises(ValueError):
            init_state(self.data, 2, self.cfg, seed=0, anchors=[1.0])

    def test_equal_anchors_start_both_states_near_zero(self):
        data = simulate_model3(n=500, seed=2).to_dataset()
        params = init_state(data, 2, self.cfg, seed=0, anchors=[0.0, 0.0])
        np.testing.assert_array_equal(params.simplex[0], params.simplex[1])
        m1, _ = state_moments(params)
        self.assertLess(np.max(np.abs(m1)), 2.5)

    def test_zero_inflated(self):
        obs = np.where(np.arange(300) % 3 == 0, 0.0,
                       np.linspace(1, 50, 300))
        data = Dataset(obs, bounds=(0, 60))
        params = init_state(data, 2, self.cfg, seed=0, zero_inflated=True)
        self.assertTrue(params.zero_inflated)
        self.assertTrue(np.all((params.zero_weights >= 0.01) &
                               (params.zero_weights <= 0.99)))

    def test_empty_data(self):
        with self.assertRaises(EmptyDataError):
            init_state(Dataset.empty(5, (0, 1)), 2, self.cfg)

    def test_draw_from_prior(self):
        cfg = PriorConfig(k_max=6, bounds=(0, 1))
        params = draw_from_prior(3, cfg, seed=1)
        self.assertTrue(2 <= params.K <= 6)
        self.assertTrue(np.isfinite(log_prior(params, cfg)))
        with self.assertRaises(ConfigError):
            draw_from_prior(3, PriorConfig())


if __name__ == '__main__':
    unittest.main()
