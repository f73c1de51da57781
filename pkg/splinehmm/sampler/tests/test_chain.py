#!/usr/bin/python
from __future__ import print_function, division
import unittest

import numpy as np

from splinehmm.dataset import Dataset
from splinehmm.prior import PriorConfig, draw_from_prior
from splinehmm.sampler import TuningParams, Schedule, run_chain
from splinehmm.simulate import simulate_model1, simulate_zero_inflated, \
    substate_params
from splinehmm.exceptions import ConfigError


class TestRunChain(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.data = simulate_model1(n=150, seed=1).to_dataset()
        cls.cfg = PriorConfig(k_max=12)
        cls.tuning = TuningParams()

    def test_draw_count_and_sweeps(self):
        schedule = Schedule(burn_in=20, iters=40, thin=10)
        trace = run_chain(self.data, 2, self.cfg, self.tuning, schedule,
                          seed=0)
        self.assertEqual(len(trace), schedule.n_draws)
        self.assertEqual(trace.sweeps, [20, 30, 40, 50, 60])
        self.assertTrue(np.all(np.isfinite(trace.loglik)))
        self.assertTrue(np.all((trace.K_series >= 2) &
                               (trace.K_series <= 12)))
        self.assertIn('birth', trace.acceptance)

    def test_deterministic_under_seed(self):
        schedule = Schedule(burn_in=10, iters=20, thin=5)
        first = run_chain(self.data, 2, self.cfg, self.tuning, schedule,
                          seed=42)
        second = run_chain(self.data, 2, self.cfg, self.tuning, schedule,
                           seed=42)
        np.testing.assert_array_equal(first.loglik, second.loglik)
        np.testing.assert_array_equal(first.K_series, second.K_series)
        for a, b in zip(first, second):
            self.assertEqual(a.coeffs, b.coeffs)

    def test_no_sweeps_returns_initial_state(self):
        initial = run_chain(self.data, 3, self.cfg, self.tuning,
                            Schedule(0, 0, 1), seed=5)
        self.assertEqual(len(initial), 1)
        self.assertEqual(initial.sweeps, [0])
        again = run_chain(self.data, 3, self.cfg, self.tuning,
                          Schedule(0, 0, 1), seed=5)
        self.assertEqual(initial[0].knots, again[0].knots)

    def test_tuning_is_not_modified(self):
        tuning = TuningParams(tau2=0.3)
        trace = run_chain(self.data, 2, self.cfg, tuning,
                          Schedule(burn_in=30, iters=0, thin=1), seed=3)
        self.assertEqual(tuning.tau2, 0.3)
        self.assertIsNone(tuning.tau1)
        self.assertIsNotNone(trace.tuning['tau1'])

    def test_adapted_knot_scale_stays_within_support(self):
        # Without data nearly every knot move is accepted, so adaptation
        # keeps pushing tau1 up.
        cfg = PriorConfig(k_max=4, bounds=(0, 2))
        data = Dataset.empty(1, (0, 2))
        initial = draw_from_prior(2, cfg, seed=0)
        trace = run_chain(data, 2, cfg, TuningParams(),
                          Schedule(burn_in=3000, iters=0, thin=1), seed=2,
                          initial=initial)
        self.assertLessEqual(trace.tuning['tau1'], 2.0)
        self.assertLessEqual(trace.tuning['tau3'], 5.0)

    def test_initial_with_wrong_N(self):
        trace = run_chain(self.data, 2, self.cfg, self.tuning,
                          Schedule(0, 0, 1), seed=5)
        with self.assertRaises(ValueError):
            run_chain(self.data, 3, self.cfg, self.tuning,
                      Schedule(0, 0, 1), initial=trace[0])

    def test_zero_inflated_chain(self):
        truth = simulate_zero_inflated(substate_params(), 300, seed=2)
        trace = run_chain(truth.to_dataset(), 2, self.cfg, self.tuning,
                          Schedule(burn_in=20, iters=20, thin=5), seed=0,
                          zero_inflated=True)
        self.assertTrue(trace.zero_inflated)
        for params in trace:
            self.assertTrue(np.all((params.zero_weights > 0) &
                                   (params.zero_weights < 1)))

    def test_schedule_checks(self):
        with self.assertRaises(ConfigError):
            Schedule(burn_in=-1)
        with self.assertRaises(ConfigError):
            Schedule(thin=0)


if __name__ == '__main__':
    unittest.main()
