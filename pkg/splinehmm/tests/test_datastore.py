#!/usr/bin/python
from __future__ import print_function, division
import unittest
from os.path import join, isfile
from shutil import rmtree
from tempfile import mkdtemp

import numpy as np
import pandas as pd

from splinehmm.dataset import Dataset
from splinehmm.sampler import Trace
from splinehmm.datastore import (CSVDataStore, read_dataset_csv,
                                 write_dataset_csv, read_activity_csv,
                                 write_trace_csv, read_trace_csv,
                                 write_trace_jsonl, read_trace_jsonl,
                                 write_json, read_json)
from splinehmm.exceptions import DataFormatError, EmptyTraceError
from splinehmm.tests.testingtools import random_params


def write_text(filename, text):
    with open(filename, 'w') as text_file:
        text_file.write(text)


def make_trace(zero_inflated=False):
    rng = np.random.default_rng(9)
    trace = Trace(3)
    for i, K in enumerate([2, 5, 3]):
        trace.append(i * 10, random_params(3, K, rng, a=-1.5, b=2.5,
                                           zero_inflated=zero_inflated),
                     -123.456789 * (i + 1), -7.0 / 3)
    return trace


class TestDatastore(unittest.TestCase):

    def setUp(self):
        self.directory = mkdtemp()

    def tearDown(self):
        rmtree(self.directory)

    def assert_traces_equal(self, first, second):
        self.assertEqual(first.sweeps, second.sweeps)
        np.testing.assert_array_equal(first.loglik, second.loglik)
        np.testing.assert_array_equal(first.logprior, second.logprior)
        for a, b in zip(first, second):
            self.assertEqual(a.knots, b.knots)
            self.assertEqual(a.coeffs, b.coeffs)
            np.testing.assert_array_equal(a.gamma_uncon, b.gamma_uncon)
            self.assertEqual(a.zeta, b.zeta)
            if a.zero_weights is None:
                self.assertIsNone(b.zero_weights)
            else:
                np.testing.assert_array_equal(a.zero_weights,
                                              b.zero_weights)

    def test_trace_csv_is_exact(self):
        for zero_inflated in (False, True):
            trace = make_trace(zero_inflated)
            filename = join(self.directory, 'trace.csv')
            write_trace_csv(filename, trace)
            self.assert_traces_equal(trace, read_trace_csv(filename))

    def test_trace_jsonl_is_exact(self):
        trace = make_trace(True)
        filename = join(self.directory, 'trace.jsonl')
        write_trace_jsonl(filename, trace)
        self.assert_traces_equal(trace, read_trace_jsonl(filename))

    def test_bad_trace_line(self):
        filename = join(self.directory, 'trace.jsonl')
        write_trace_jsonl(filename, make_trace())
        with open(filename, 'a') as jsonl_file:
            jsonl_file.write('{"sweep": \n')
        with self.assertRaises(DataFormatError) as context:
            read_trace_jsonl(filename)
        self.assertEqual(context.exception.line, 4)

    def test_empty_trace_file(self):
        filename = join(self.directory, 'trace.jsonl')
        write_text(filename, '')
        with self.assertRaises(EmptyTraceError):
            read_trace_jsonl(filename)

    def test_dataset_csv(self):
        filename = join(self.directory, 'data.csv')
        write_text(filename, "value,missing\n0.5,0\n,0\nNA,0\n0.25,1\n1,0\n")
        data = read_dataset_csv(filename, bounds=(0, 1))
        np.testing.assert_array_equal(data.missing,
                                      [False, True, True, True, False])
        write_dataset_csv(filename, data)
        back = read_dataset_csv(filename, bounds=(0, 1))
        np.testing.assert_array_equal(back.missing, data.missing)
        np.testing.assert_array_equal(back.observed, data.observed)

    def test_dataset_csv_errors(self):
        filename = join(self.directory, 'data.csv')
        write_text(filename, "value\n0.5\n0.7\nabc\n")
        with self.assertRaises(DataFormatError) as context:
            read_dataset_csv(filename, bounds=(0, 1))
        self.assertEqual(context.exception.line, 4)
        write_text(filename, "count\n1\n")
        with self.assertRaises(DataFormatError):
            read_dataset_csv(filename, bounds=(0, 1))

    def test_activity_csv(self):
        filename = join(self.directory, 'activity.csv')
        write_text(filename, "timestamp,count\n"
                   "2020-01-01 00:01,5\n2020-01-01 00:00,0\n"
                   "2020-01-01 00:02,\n")
        frame = read_activity_csv(filename)
        self.assertEqual(list(frame['count'][:2]), [0.0, 5.0])
        self.assertTrue(np.isnan(frame['count'][2]))
        write_text(filename, "timestamp,count\n2020-01-01 00:01,5\n"
                   "yesterday,1\n")
        with self.assertRaises(DataFormatError) as context:
            read_activity_csv(filename)
        self.assertEqual(context.exception.line, 3)

    def test_json(self):
        filename = join(self.directory, 'summary.json')
        write_json(filename, {'x': np.arange(3), 'y': np.float64(0.1)})
        self.assertEqual(read_json(filename), {'x': [0, 1, 2], 'y': 0.1})

    def test_store(self):
        store = CSVDataStore(join(self.directory, 'out'))
        frame = pd.DataFrame({'a': [1.5, 2.5]})
        store.put('/fit/N2/frame', frame)
        self.assertTrue(isfile(join(self.directory, 'out', 'fit', 'N2',
                                    'frame.csv')))
        self.assertIn('/fit/N2/frame', store)
        pd.testing.assert_frame_equal(store['/fit/N2/frame'], frame)
        with self.assertRaises(KeyError):
            store['/nothing']
        store.save_metadata({'seed': 42})
        self.assertEqual(store.load_metadata(), {'seed': 42})


if __name__ == '__main__':
    unittest.main()
