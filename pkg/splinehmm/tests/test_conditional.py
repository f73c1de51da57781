#!/usr/bin/python
from __future__ import print_function, division
import unittest
import warnings

import numpy as np

from splinehmm.dataset import Dataset
from splinehmm.sampler import Trace, TuningParams, Schedule
from splinehmm.prior import PriorConfig
from splinehmm.simulate import (simulate_zero_inflated, substate_params,
                                simulate_activity, activity_frame)
from splinehmm.conditional import (extract_bouts, BoutSegmentation,
                                   PipelineConfig, condition_on_paths,
                                   conditioning_bounds, sub_bounds,
                                   minutes_to_samples, substate_report,
                                   decoded_paths, run_pipeline)
from splinehmm.hmm import log_likelihood, emission_probs
from splinehmm.splines import SplineCoeffs
from splinehmm.exceptions import EmptyConditioningError
from splinehmm.tests.testingtools import enumerate_paths, random_params


def four_nights(min_dwell=30):
    """Path of four nights in state 0, each broken by a few short
    awakenings, separated by days in states 1 and 2 with a short nap."""
    night = np.zeros(400, dtype=int)
    night[100:110] = 1
    night[250:262] = 2
    day = np.concatenate([np.full(200, 2), np.zeros(10, dtype=int),
                          np.full(390, 1)])
    path = np.concatenate([np.concatenate([night, day])
                           for _ in range(4)])
    expected = [(i * 1000, i * 1000 + 399) for i in range(4)]
    return path, expected


class TestExtractBouts(unittest.TestCase):

    def test_all_rest_is_one_bout(self):
        bouts = extract_bouts(np.zeros(120, dtype=int), 30)
        self.assertEqual(bouts.bouts, [(0, 119)])

    def test_alternating_has_no_bouts(self):
        path = np.arange(200) % 2
        self.assertEqual(len(extract_bouts(path, 30)), 0)

    def test_four_nights(self):
        path, expected = four_nights()
        bouts = extract_bouts(path, 30)
        self.assertEqual(bouts.bouts, expected)
        np.testing.assert_array_equal(bouts.durations, [400] * 4)
        self.assertTrue(np.all(bouts.durations >= bouts.min_dwell))

    def test_invariant_to_other_labels(self):
        path, expected = four_nights()
        relabelled = np.where(path == 1, 2, np.where(path == 2, 1, path))
        self.assertEqual(extract_bouts(relabelled, 30).bouts, expected)

    def test_open_bout_ends_at_last_rest_point(self):
        path = np.concatenate([np.full(40, 1), np.zeros(50, dtype=int),
                               np.full(5, 1)])
        self.assertEqual(extract_bouts(path, 30).bouts, [(40, 89)])

    def test_short_rest_is_ignored(self):
        path = np.concatenate([np.full(40, 1), np.zeros(29, dtype=int),
                               np.full(40, 1)])
        self.assertEqual(len(extract_bouts(path, 30)), 0)

    def test_mask_and_frame(self):
        bouts = BoutSegmentation([(2, 4), (7, 8)], 2, n=10)
        np.testing.assert_array_equal(
            np.flatnonzero(bouts.mask()), [2, 3, 4, 7, 8])
        frame = bouts.to_frame()
        self.assertEqual(list(frame['duration']), [3, 2])


class TestConditioning(unittest.TestCase):

    def setUp(self):
        obs = np.array([0.0, 3.0, 5.0, 0.0, 40.0, 50.0, 2.0, np.nan])
        self.data = Dataset(obs, bounds=(0, 60))

    def test_minutes_to_samples(self):
        self.assertEqual(minutes_to_samples(30, '1min'), 30)
        self.assertEqual(minutes_to_samples(30, '5min'), 6)
        self.assertEqual(minutes_to_samples(31, '5min'), 7)

    def test_sub_bounds(self):
        self.assertEqual(sub_bounds([0, 2, 10], pad=0.1), (0.0, 11.0))
        self.assertEqual(sub_bounds([0, 0, np.nan]), (0.0, 1.0))

    def test_points_outside_rest_are_missing(self):
        path = np.array([0, 1, 0, 0])
        data, = condition_on_paths(self.data, [path], 2)
        np.testing.assert_array_equal(
            ~data.missing, [True, True, False, False, True, True, True,
                            False])
        self.assertEqual(data.bounds,
                         conditioning_bounds(self.data, [path], 2))
        self.assertAlmostEqual(data.b, 50 * 1.05)

    def test_shared_bounds(self):
        paths = [np.array([0, 1, 1, 1]), np.array([1, 1, 0, 1])]
        first, second = condition_on_paths(self.data, paths, 2)
        self.assertEqual(first.bounds, second.bounds)
        self.assertAlmostEqual(first.b, 50 * 1.05)

    def test_nothing_conditioned(self):
        with self.assertRaises(EmptyConditioningError):
            condition_on_paths(self.data, [np.ones(4, dtype=int)], 2)

    def test_restrict_to_bouts(self):
        path = np.array([0, 1, 0, 0])
        data, = condition_on_paths(self.data, [path], 2, min_dwell=3,
                                   restrict_to_bouts=True)
        np.testing.assert_array_equal(np.flatnonzero(~data.missing),
                                      [4, 5, 6])
        with self.assertRaises(ValueError):
            condition_on_paths(self.data, [path], 2, restrict_to_bouts=True)

    def test_masked_likelihood_uses_identity_rows(self):
        path = np.array([0, 1, 0, 0])
        data, = condition_on_paths(self.data, [path], 2)
        rng = np.random.default_rng(3)
        sub = random_params(2, 3, rng, a=data.a, b=data.b,
                            zero_inflated=True)
        conditioned = ~data.missing
        same_mask = Dataset(np.where(conditioned, self.data.obs, np.nan),
                            bounds=data.bounds)
        self.assertAlmostEqual(log_likelihood(sub, data),
                               log_likelihood(sub, same_mask), delta=1e-10)
        observed = Dataset(np.nan_to_num(self.data.obs), bounds=data.bounds)
        probs = emission_probs(sub, observed)
        probs[~conditioned] = 1.0
        expected, _, _ = enumerate_paths(sub.delta, sub.gamma, probs)
        self.assertAlmostEqual(log_likelihood(sub, data), expected,
                               delta=1e-10)

    def test_identical_substates_ignore_transitions(self):
        data, = condition_on_paths(self.data, [np.array([0, 1, 0, 0])], 2)
        rng = np.random.default_rng(4)
        sub = random_params(2, 3, rng, a=data.a, b=data.b,
                            zero_inflated=True)
        uncon = sub.coeffs.uncon.copy()
        uncon[1] = uncon[0]
        sub = sub._replace(coeffs=SplineCoeffs(uncon),
                           zero_weights=np.full(2, sub.zero_weights[0]))
        base = log_likelihood(sub, data)
        for _ in range(5):
            other = sub._replace(gamma_uncon=rng.gamma(2.0, size=(2, 2)))
            self.assertAlmostEqual(log_likelihood(other, data), base,
                                   delta=1e-10)

    def test_unknown_v_mode(self):
        with self.assertRaises(ValueError):
            decoded_paths(Trace(2), self.data, v_mode='sample')


class TestSubstateReport(unittest.TestCase):

    def test_report(self):
        params = substate_params()
        truth = simulate_zero_inflated(params, 200, seed=0)
        missing = np.zeros(200, dtype=bool)
        missing[60:100] = True
        data = Dataset(truth.obs, missing, bounds=truth.bounds)
        trace = Trace(2)
        for i in range(3):
            trace.append(i, params, -1.0, -1.0)
        bouts = BoutSegmentation([(0, 59), (100, 199)], 30, n=200)
        states, table = substate_report(trace, data, bouts)
        self.assertEqual(len(states), 200)
        self.assertTrue(np.all(states['substate'][missing] == -1))
        self.assertTrue(np.all(states['substate'][~missing] >= 0))
        np.testing.assert_allclose(states['cumprob_1'], 1.0, atol=1e-12)
        np.testing.assert_allclose(table[['frac_0', 'frac_1']].sum(axis=1),
                                   1.0)
        states, table = substate_report(trace, data)
        self.assertIsNone(table)


class TestPipelineConfig(unittest.TestCase):

    def test_defaults(self):
        config = PipelineConfig().check()
        self.assertEqual(config.factor, 5)
        self.assertEqual(config.min_dwell, 30)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            PipelineConfig(v_mode='sample').check()
        with self.assertRaises(ValueError):
            PipelineConfig(main_period='7min', sub_period='2min').check()


class TestRunPipeline(unittest.TestCase):

    def test_small_run(self):
        truth = simulate_activity(n_days=2, seed=3, samples_per_day=720)
        frame = activity_frame(truth)
        schedule = Schedule(burn_in=10, iters=10, thin=5)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            result = run_pipeline(frame, 2, PipelineConfig(),
                                  PriorConfig(k_max=8), TuningParams(),
                                  schedule, seed=0)
        self.assertEqual(len(result.main_path), 288)
        self.assertEqual(len(result.substate_frame()), 1440)
        self.assertEqual(result.sub_trace.N, 2)
        self.assertTrue(result.sub_trace.zero_inflated)
        self.assertEqual(list(result.bout_frame().columns[:3]),
                         ['start', 'end', 'duration'])


if __name__ == '__main__':
    unittest.main()
