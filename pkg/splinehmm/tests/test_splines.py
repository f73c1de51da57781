#!/usr/bin/python
from __future__ import print_function, division
import unittest

import numpy as np

from splinehmm.splines import (SplineCoeffs, build_knot_config, eval_basis,
                               basis_matrix, emission_density, basis_cdf,
                               basis_quantile, basis_moments, quadrature_rule,
                               insert_knot_transform, delete_knot_transform)
from splinehmm.exceptions import (InvalidKnotsError, TooFewKnotsError,
                                  MinimumKnotsError, DegenerateInsertionError,
                                  OutOfRangeError, KnotError)
from splinehmm.tests.testingtools import (reference_basis, reference_spline,
                                          numerical_log_jacobian)


def de_boor_u(cfg, r_c):
    """Free insertion variable that leaves the curve unchanged."""
    t = cfg.augmented
    n_star = int(np.searchsorted(cfg.interior, r_c))
    return (r_c - t[n_star + 3]) / (t[n_star + 6] - t[n_star + 3])


class TestKnotConfig(unittest.TestCase):

    def test_augmented(self):
        cfg = build_knot_config(0, 1, [0.25, 0.5, 0.75])
        self.assertEqual(cfg.K, 3)
        self.assertEqual(cfg.n_basis, 7)
        np.testing.assert_array_equal(
            cfg.augmented, [0, 0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1, 1])

    def test_invalid(self):
        with self.assertRaises(InvalidKnotsError):
            build_knot_config(0, 1, [0.5, 0.3])
        with self.assertRaises(InvalidKnotsError):
            build_knot_config(0, 1, [0.0, 0.5])
        with self.assertRaises(InvalidKnotsError):
            build_knot_config(1, 0, [0.2, 0.5])
        with self.assertRaises(TooFewKnotsError):
            build_knot_config(0, 1, [0.5])
        self.assertTrue(issubclass(TooFewKnotsError, KnotError))

    def test_interior_is_read_only(self):
        cfg = build_knot_config(0, 1, [0.25, 0.5])
        with self.assertRaises(ValueError):
            cfg.interior[0] = 0.1


class TestBasis(unittest.TestCase):

    def setUp(self):
        self.cfg = build_knot_config(-2.0, 3.0, [-1.2, 0.1, 0.4, 2.2])

    def test_integrates_to_one(self):
        np.testing.assert_allclose(basis_moments(self.cfg, 0), 1.0,
                                   atol=1e-8)

    def test_matches_cox_de_boor(self):
        rng = np.random.default_rng(3)
        points = np.concatenate([[self.cfg.a, self.cfg.b, 0.1],
                                 rng.uniform(self.cfg.a, self.cfg.b, 30)])
        for y in points:
            np.testing.assert_allclose(eval_basis(self.cfg, y),
                                       reference_basis(self.cfg, y),
                                       atol=1e-10)

    def test_partition_of_unity(self):
        y = np.linspace(self.cfg.a, self.cfg.b, 101)
        unnormalised = basis_matrix(self.cfg, y) / self.cfg.scale
        np.testing.assert_allclose(unnormalised.sum(axis=1), 1.0, atol=1e-12)

    def test_out_of_range(self):
        with self.assertRaises(OutOfRangeError) as context:
            eval_basis(self.cfg, 3.5)
        self.assertEqual(context.exception.value, 3.5)

    def test_density_integrates_to_one(self):
        rng = np.random.default_rng(0)
        row = SplineCoeffs(rng.normal(size=(1, self.cfg.n_basis))).simplex[0]
        points, weights = quadrature_rule(self.cfg)
        total = weights @ emission_density(self.cfg, row, points)
        self.assertAlmostEqual(total, 1.0, places=10)

    def test_density_rejects_non_simplex(self):
        with self.assertRaises(ValueError):
            emission_density(self.cfg, np.ones(self.cfg.n_basis), 0.0)

    def test_cdf_and_quantile(self):
        for k in range(self.cfg.n_basis):
            self.assertEqual(basis_cdf(self.cfg, k, self.cfg.a), 0.0)
            self.assertEqual(basis_cdf(self.cfg, k, self.cfg.b), 1.0)
            p = np.array([0.01, 0.3, 0.5, 0.9, 0.999])
            y = basis_quantile(self.cfg, k, p)
            np.testing.assert_allclose(basis_cdf(self.cfg, k, y), p,
                                       atol=1e-8)
            grid = np.linspace(self.cfg.a, self.cfg.b, 200)
            self.assertTrue(np.all(np.diff(basis_cdf(self.cfg, k, grid))
                                   >= -1e-15))


class TestKnotInsertion(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(11)
        self.cfg = build_knot_config(0.0, 1.0, [0.2, 0.45, 0.6, 0.85])
        self.coeffs = SplineCoeffs(rng.normal(size=(2, self.cfg.n_basis)))

    def test_preserves_curve(self):
        for r_c in [0.05, 0.3, 0.5, 0.7, 0.95]:
            u = np.full(2, de_boor_u(self.cfg, r_c))
            new_cfg, new_coeffs, _ = insert_knot_transform(
                self.cfg, self.coeffs, r_c, u)
            self.assertEqual(new_cfg.K, self.cfg.K + 1)
            for y in np.linspace(0, 1, 41):
                for i in range(2):
                    self.assertAlmostEqual(
                        reference_spline(self.cfg, self.coeffs.uncon[i], y),
                        reference_spline(new_cfg, new_coeffs.uncon[i], y),
                        places=10)

    def test_round_trip(self):
        u = np.array([0.3, 0.8])
        for r_c in [0.1, 0.5, 0.9]:
            new_cfg, new_coeffs, log_jac = insert_knot_transform(
                self.cfg, self.coeffs, r_c, u)
            d_star = int(np.searchsorted(new_cfg.interior, r_c)) + 1
            back_cfg, back_coeffs, back_u, back_jac = delete_knot_transform(
                new_cfg, new_coeffs, d_star)
            self.assertEqual(back_cfg, self.cfg)
            np.testing.assert_allclose(back_coeffs.uncon, self.coeffs.uncon,
                                       atol=1e-10)
            np.testing.assert_allclose(back_u, u, atol=1e-10)
            self.assertAlmostEqual(back_jac, -log_jac, places=10)

    def test_jacobian_matches_finite_differences(self):
        coeffs = SplineCoeffs(self.coeffs.uncon[:1])
        for r_c in [0.1, 0.5, 0.9]:
            def transform(x):
                _, new, _ = insert_knot_transform(
                    self.cfg, SplineCoeffs(x[:-1][None, :]), r_c, x[-1:])
                return new.uncon[0]
            x = np.concatenate([coeffs.uncon[0], [0.4]])
            _, _, log_jac = insert_knot_transform(self.cfg, coeffs, r_c,
                                                  [0.4])
            self.assertAlmostEqual(log_jac, numerical_log_jacobian(
                transform, x), delta=1e-4)

    def test_errors(self):
        with self.assertRaises(DegenerateInsertionError):
            insert_knot_transform(self.cfg, self.coeffs, 0.45, [0.5, 0.5])
        with self.assertRaises(OutOfRangeError):
            insert_knot_transform(self.cfg, self.coeffs, 1.0, [0.5, 0.5])
        with self.assertRaises(ValueError):
            insert_knot_transform(self.cfg, self.coeffs, 0.5, [0.0, 0.5])
        small = build_knot_config(0, 1, [0.3, 0.6])
        with self.assertRaises(MinimumKnotsError):
            delete_knot_transform(
                small, SplineCoeffs(np.zeros((1, small.n_basis))), 1)


if __name__ == '__main__':
    unittest.main()
