#!/usr/bin/python
from __future__ import print_function, division
import unittest

import numpy as np

from splinehmm.dataset import Dataset
from splinehmm.splines import build_knot_config, emission_densities
from splinehmm.hmm import (HmmParams, log_likelihood, viterbi,
                           smoothed_probs, cumulative_probs, emission_probs)
from splinehmm.hmm import _kernels
from splinehmm.hmm.engine import log_likelihood_from_probs
from splinehmm.hmm.params import SplineCoeffs
from splinehmm.exceptions import InvalidParamsError
from splinehmm.tests.testingtools import enumerate_paths, random_params


class TestAgainstPathEnumeration(unittest.TestCase):

    def test_random_instances(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            N = int(rng.integers(1, 4))
            K = int(rng.integers(2, 5))
            n = int(rng.integers(1, 7))
            zero_inflated = rng.uniform() < 0.3
            params = random_params(N, K, rng, zero_inflated=zero_inflated)
            obs = rng.uniform(0, 1, size=n)
            obs[rng.uniform(size=n) < 0.2] = np.nan
            if zero_inflated:
                obs[rng.uniform(size=n) < 0.3] = 0.0
            data = Dataset(obs, bounds=(0, 1))
            probs = emission_probs(params, data)
            loglik, best_path, marginals = enumerate_paths(
                params.delta, params.gamma, probs)
            self.assertAlmostEqual(log_likelihood(params, data), loglik,
                                   delta=1e-10)
            np.testing.assert_array_equal(viterbi(params, data), best_path)
            np.testing.assert_allclose(smoothed_probs(params, data),
                                       marginals, atol=1e-10)


class TestEngine(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(5)
        self.params = random_params(2, 3, self.rng)

    def test_all_missing_has_unit_likelihood(self):
        data = Dataset.empty(10, (0, 1))
        self.assertEqual(log_likelihood(self.params, data), 0.0)

    def test_missing_rows_are_identity(self):
        data = Dataset([0.2, np.nan, 0.7], bounds=(0, 1))
        probs = emission_probs(self.params, data)
        np.testing.assert_array_equal(probs[1], [1.0, 1.0])

    def test_single_state_is_sum_of_log_densities(self):
        params = random_params(1, 4, self.rng)
        y = self.rng.uniform(0, 1, 50)
        expected = np.log(emission_densities(params.knots, params.simplex,
                                             y)).sum()
        self.assertAlmostEqual(log_likelihood(params, Dataset(y, bounds=(0,
                                                                         1))),
                               expected, places=9)

    def test_zero_inflated_emission(self):
        params = random_params(2, 3, self.rng, zero_inflated=True)
        data = Dataset([0.0, 0.5], bounds=(0, 1))
        probs = emission_probs(params, data)
        np.testing.assert_allclose(probs[0], params.zero_weights)
        dens = emission_densities(params.knots, params.simplex, [0.5])[0]
        np.testing.assert_allclose(probs[1], (1 - params.zero_weights) * dens)

    def test_cumulative_rows_end_at_one(self):
        data = Dataset(self.rng.uniform(0, 1, 30), bounds=(0, 1))
        cumulative = cumulative_probs(smoothed_probs(self.params, data))
        np.testing.assert_allclose(cumulative[:, -1], 1.0, atol=1e-12)
        self.assertTrue(np.all(np.diff(cumulative, axis=1) >= 0))

    def test_long_series_does_not_underflow(self):
        data = Dataset(self.rng.uniform(0, 1, 5000), bounds=(0, 1))
        self.assertTrue(np.isfinite(log_likelihood(self.params, data)))

    def test_validate(self):
        params = self.params._replace(delta_uncon=np.array([1.0, -1.0]))
        with self.assertRaises(InvalidParamsError):
            params.validate()
        params = self.params._replace(zero_weights=np.array([1.0, 1.0]))
        with self.assertRaises(InvalidParamsError):
            params.validate()

    def test_permute(self):
        perm = [1, 0]
        permuted = self.params.permute(perm)
        np.testing.assert_allclose(permuted.gamma,
                                   self.params.gamma[np.ix_(perm, perm)])
        data = Dataset(self.rng.uniform(0, 1, 20), bounds=(0, 1))
        self.assertAlmostEqual(log_likelihood(permuted, data),
                               log_likelihood(self.params, data), places=10)

    def test_viterbi_is_equivariant_under_relabelling(self):
        params = random_params(3, 4, self.rng)
        data = Dataset(self.rng.uniform(0, 1, 60), bounds=(0, 1))
        perm = np.array([2, 0, 1])
        path = viterbi(params, data)
        permuted_path = viterbi(params.permute(perm), data)
        np.testing.assert_array_equal(perm[permuted_path], path)

    def test_forward_ignores_per_time_emission_scale(self):
        data = Dataset(self.rng.uniform(0, 1, 40), bounds=(0, 1))
        probs = emission_probs(self.params, data)
        scale = self.rng.uniform(0.01, 100.0, size=data.n)
        scaled = probs * scale[:, None]
        self.assertAlmostEqual(
            log_likelihood_from_probs(self.params, scaled),
            log_likelihood_from_probs(self.params, probs) +
            np.log(scale).sum(), places=8)
        posterior, _, _ = _kernels.forward_backward(
            self.params.delta, self.params.gamma, probs)
        rescaled, _, _ = _kernels.forward_backward(
            self.params.delta, self.params.gamma, scaled)
        np.testing.assert_allclose(rescaled, posterior, atol=1e-12)

    def test_dict_round_trip(self):
        params = random_params(3, 4, self.rng, zero_inflated=True)
        back = HmmParams.from_dict(params.to_dict())
        self.assertEqual(back.knots, params.knots)
        self.assertEqual(back.coeffs, params.coeffs)
        np.testing.assert_array_equal(back.gamma_uncon, params.gamma_uncon)
        np.testing.assert_array_equal(back.zero_weights, params.zero_weights)

    def test_viterbi_ties_go_to_lower_state(self):
        knots = build_knot_config(0, 1, [0.3, 0.6])
        params = HmmParams(knots, SplineCoeffs(np.zeros((2, 6))),
                           np.ones(2), np.ones((2, 2)))
        data = Dataset([0.5, 0.5, 0.5], bounds=(0, 1))
        np.testing.assert_array_equal(viterbi(params, data), [0, 0, 0])


if __name__ == '__main__':
    unittest.main()
