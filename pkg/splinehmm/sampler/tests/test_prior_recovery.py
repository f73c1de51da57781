#!/usr/bin/python
"""With no observed data the chain must sample the prior.

The chain runs with the default, adapted tuning.  The longer goodness of
fit run lives in tests_on_large_datasets/prior_recovery.py.
"""
from __future__ import print_function, division
import unittest

import numpy as np
from scipy import stats

from splinehmm.dataset import Dataset
from splinehmm.prior import PriorConfig, draw_from_prior
from splinehmm.sampler import TuningParams, Schedule, run_chain

K_MAX = 8
MIN_P = 1e-4


class TestPriorRecovery(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cfg = PriorConfig(k_max=K_MAX, bounds=(0, 1))
        data = Dataset.empty(1, (0, 1))
        initial = draw_from_prior(2, cfg, seed=0)
        cls.trace = run_chain(data, 2, cfg, TuningParams(),
                              Schedule(burn_in=3000, iters=48000, thin=24),
                              seed=1, initial=initial)

    def test_number_of_knots_is_uniform(self):
        K = self.trace.K_series
        counts = np.array([np.sum(K == k) for k in range(2, K_MAX + 1)])
        self.assertEqual(counts.sum(), len(K))
        _, p = stats.chisquare(counts)
        self.assertGreater(p, MIN_P, counts)

    def test_zeta_is_standard_exponential(self):
        zeta = np.array([params.zeta for params in self.trace])
        _, p = stats.kstest(zeta, stats.expon.cdf)
        self.assertGreater(p, MIN_P)

    def test_transition_rows_are_flat_dirichlet(self):
        # With two states each row is Dirichlet(1, 1): Gamma[i, i] ~ U(0, 1)
        for i in range(2):
            stay = np.array([params.gamma[i, i] for params in self.trace])
            _, p = stats.kstest(stay, stats.uniform.cdf)
            self.assertGreater(p, MIN_P)

    def test_first_knot_is_minimum_of_uniforms(self):
        # The smallest of K uniforms on (0, 1) is Beta(1, K).
        tested = 0
        for K in range(2, K_MAX + 1):
            sub = self.trace.at_K(K)
            if len(sub) < 100:
                continue
            first = np.array([params.knots.interior[0] for params in sub])
            _, p = stats.kstest(first, stats.beta(1, K).cdf)
            self.assertGreater(p, MIN_P, "K={}".format(K))
            tested += 1
        self.assertGreaterEqual(tested, 4)


if __name__ == '__main__':
    unittest.main()
