import dataclasses
import math
from fractions import Fraction

from django.test import SimpleTestCase

from gldpc.codes import WeightEnumerator, IOWeightEnumerator, repetition_code, single_parity_check_code
from gldpc.ensemble import build_ensemble
from gldpc.exceptions import PNotDefinedError, TheoremHypothesisError
from gldpc.spectral import (
    check_theorem_hypothesis,
    growth_rate_slope,
    p_inverse,
    small_weight_regime,
    spectral_params,
    stability_bound,
)

from .factories import (
    cycle_ensemble,
    dgldpc_ensemble,
    hamming_cn_ensemble,
    irregular_ldpc,
    mixed_gldpc,
    regular_ldpc,
)


class SpectralParamsTests(SimpleTestCase):
    def test_regular_ldpc(self):
        params = spectral_params(regular_ldpc())
        self.assertEqual((params.r, params.p), (2, 2))
        self.assertEqual(params.C, 2)
        self.assertEqual(params.P_coeffs, {1: 1})
        self.assertEqual(params.L_t, {1: (1,)})

    def test_mixed_gldpc(self):
        params = spectral_params(mixed_gldpc())
        self.assertEqual(params.X_c, (1,))
        self.assertEqual(params.X_v, (1,))
        self.assertEqual(params.C_t, {1: 5, 2: 3})
        self.assertEqual(params.C, Fraction(5, 2))
        self.assertEqual(params.P_coeffs, {1: Fraction(1, 2)})

    def test_dgldpc(self):
        params = spectral_params(dgldpc_ensemble())
        self.assertEqual(params.C, 3)
        self.assertEqual(params.P_coeffs, {1: Fraction(2, 3), 2: Fraction(1, 3)})
        self.assertEqual(params.L_t, {1: (1, 2)})

    def test_no_p_without_weight_two_vns(self):
        ensemble = build_ensemble([(single_parity_check_code(3), 1)], [(repetition_code(3), 1)])
        params = spectral_params(ensemble)
        self.assertEqual(params.p, 3)
        self.assertIsNone(params.P_coeffs)
        with self.assertRaises(PNotDefinedError):
            p_inverse(params, 0.5)


class GrowthRateSlopeTests(SimpleTestCase):
    def test_regular_ldpc_is_log_two(self):
        self.assertAlmostEqual(growth_rate_slope(regular_ldpc()), math.log(2), delta=1e-10)

    def test_irregular_ldpc_matches_lambda_rho(self):
        ensemble = irregular_ldpc()
        expected = math.log(ensemble.lambda_prime_zero() * ensemble.rho_prime_one())
        self.assertAlmostEqual(growth_rate_slope(ensemble), expected, delta=1e-10)
        self.assertAlmostEqual(expected, math.log(2.5), delta=1e-15)

    def test_gldpc_matches_lambda_c(self):
        ensemble = mixed_gldpc()
        params = spectral_params(ensemble)
        expected = math.log(ensemble.lambda_prime_zero() * params.C)
        self.assertAlmostEqual(growth_rate_slope(ensemble), expected, delta=1e-10)

    def test_dgldpc_inverts_p(self):
        # P(x) = (2x + x^2)/3, C = 3: P^-1(1/3) = sqrt(2) - 1
        self.assertAlmostEqual(growth_rate_slope(dgldpc_ensemble()), math.asinh(1), delta=1e-10)
        self.assertAlmostEqual(stability_bound(spectral_params(dgldpc_ensemble())), math.sqrt(2) - 1, delta=1e-12)

    def test_cycle_code_is_boundary(self):
        slope = growth_rate_slope(cycle_ensemble())
        self.assertAlmostEqual(slope, 0.0, delta=1e-12)
        self.assertEqual(small_weight_regime(slope), 'boundary')
        self.assertEqual(small_weight_regime(growth_rate_slope(regular_ldpc())), 'exponentially many')

    def test_hamming_check_nodes_fail_hypothesis(self):
        with self.assertRaises(TheoremHypothesisError) as ctx:
            growth_rate_slope(hamming_cn_ensemble())
        self.assertEqual(ctx.exception.side, 'check')
        self.assertIn('r=3', str(ctx.exception.detail))
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_both_sides_fail(self):
        ensemble = build_ensemble([(repetition_code(3), 1)], [(repetition_code(3), 1)])
        with self.assertRaises(TheoremHypothesisError) as ctx:
            check_theorem_hypothesis(spectral_params(ensemble))
        self.assertEqual(ctx.exception.side, 'both')


class PInverseTests(SimpleTestCase):
    def test_residual(self):
        params = spectral_params(dgldpc_ensemble())
        for y in (1e-6, 0.01, 0.5, 3.0, 1e4):
            x = p_inverse(params, y)
            self.assertLessEqual(abs(params.P(x) - y), 1e-12 * y)

    def test_round_trip_over_twelve_decades(self):
        params = spectral_params(dgldpc_ensemble())
        for exponent in range(-6, 7):
            y = 10.0 ** exponent
            x = p_inverse(params, y)
            self.assertGreaterEqual(x, 0)
            self.assertLessEqual(abs(params.P(x) - y), 1e-12 * y)

    def test_rejects_nonpositive(self):
        with self.assertRaises(ValueError):
            p_inverse(spectral_params(regular_ldpc()), 0)


class MinimumDistanceTwoDependenceTests(SimpleTestCase):
    """C, P and the slope only see weight-r CN and weight-2 VN codewords"""

    def assert_same(self, original, perturbed):
        a, b = spectral_params(original), spectral_params(perturbed)
        self.assertEqual(a.C, b.C)
        self.assertEqual(a.P_coeffs, b.P_coeffs)
        self.assertEqual(growth_rate_slope(original), growth_rate_slope(perturbed))

    def test_cn_coefficients_above_r(self):
        ensemble = mixed_gldpc()
        spc = ensemble.cn_types[0]
        coeffs = list(spc.enumerator.coeffs)
        coeffs[4] += 11
        coeffs[6] += 3
        changed = dataclasses.replace(spc, enumerator=WeightEnumerator(tuple(coeffs)))
        self.assert_same(ensemble, dataclasses.replace(ensemble, cn_types=(changed, ensemble.cn_types[1])))

    def test_non_minimal_cn_type(self):
        ensemble = mixed_gldpc()
        hamming = ensemble.cn_types[1]
        coeffs = list(hamming.enumerator.coeffs)
        coeffs[3] += 5
        changed = dataclasses.replace(hamming, enumerator=WeightEnumerator(tuple(coeffs)))
        self.assert_same(ensemble, dataclasses.replace(ensemble, cn_types=(ensemble.cn_types[0], changed)))

    def test_vn_coefficients_above_two(self):
        ensemble = dgldpc_ensemble()
        vn = ensemble.vn_types[0]
        table = [list(row) for row in vn.io_enumerator.table]
        table[1][3] += 4
        table[2][3] += 1
        changed = dataclasses.replace(vn, io_enumerator=IOWeightEnumerator(tuple(tuple(row) for row in table)))
        self.assert_same(ensemble, dataclasses.replace(ensemble, vn_types=(changed, ensemble.vn_types[1])))
