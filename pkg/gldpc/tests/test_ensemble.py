from fractions import Fraction

from django.test import SimpleTestCase

from gldpc.codes import LinearCode, repetition_code, single_parity_check_code
from gldpc.ensemble import as_fraction, build_ensemble, design_rate, instance_dims
from gldpc.exceptions import DegenerateTypeError, FractionSumError, InputError, NonIntegralInstanceError

from .factories import cycle_ensemble, irregular_ldpc, mixed_gldpc, regular_ldpc


class BuildEnsembleTests(SimpleTestCase):
    def test_regular_ldpc_integrals(self):
        ensemble = regular_ldpc()
        self.assertEqual(ensemble.int_lambda, Fraction(1, 2))
        self.assertEqual(ensemble.int_rho, Fraction(1, 3))
        self.assertEqual(ensemble.gamma, {1: 1})
        self.assertEqual(ensemble.delta, {1: 1})

    def test_node_fractions(self):
        ensemble = irregular_ldpc()
        # lambda_t / q_t = 1/4, 1/6
        self.assertEqual(ensemble.delta, {1: Fraction(3, 5), 2: Fraction(2, 5)})
        self.assertEqual(sum(ensemble.delta.values()), 1)

    def test_fractions_must_sum_to_one(self):
        with self.assertRaises(FractionSumError):
            build_ensemble(
                [(single_parity_check_code(3), 1)],
                [(repetition_code(2), Fraction(1, 2)), (repetition_code(3), Fraction(1, 3))],
            )

    def test_fraction_out_of_range(self):
        with self.assertRaises(FractionSumError):
            build_ensemble(
                [(single_parity_check_code(3), 1)],
                [(repetition_code(2), Fraction(3, 2)), (repetition_code(3), Fraction(-1, 2))],
            )

    def test_duplicate_types_rejected(self):
        with self.assertRaises(DegenerateTypeError):
            build_ensemble(
                [(single_parity_check_code(3), Fraction(1, 2)), (single_parity_check_code(3), Fraction(1, 2))],
                [(repetition_code(2), 1)],
            )

    def test_full_space_cn_warns(self):
        with self.assertLogs('gldpc.ensemble', level='WARNING'):
            build_ensemble([(LinearCode.from_rows(['10', '01']), 1)], [(repetition_code(2), 1)])

    def test_degree_polynomials(self):
        ensemble = irregular_ldpc()
        self.assertEqual(ensemble.lambda_poly(), {1: Fraction(1, 2), 2: Fraction(1, 2)})
        self.assertEqual(ensemble.rho_poly(), {5: 1})
        self.assertEqual(ensemble.lambda_prime_zero(), Fraction(1, 2))
        self.assertEqual(ensemble.rho_prime_one(), 5)

    def test_max_alpha(self):
        self.assertEqual(regular_ldpc().max_alpha(), 1)


class AsFractionTests(SimpleTestCase):
    def test_accepted_forms(self):
        self.assertEqual(as_fraction((1, 3)), Fraction(1, 3))
        self.assertEqual(as_fraction('1/6'), Fraction(1, 6))
        self.assertEqual(as_fraction(0.1), Fraction(1, 10))
        self.assertEqual(as_fraction(2), 2)

    def test_rejected_forms(self):
        with self.assertRaises(InputError):
            as_fraction('one half')
        with self.assertRaises(InputError):
            as_fraction(True)


class InstanceDimsTests(SimpleTestCase):
    def test_regular_ldpc_n6(self):
        dims = instance_dims(regular_ldpc(), 6)
        self.assertEqual((dims.E, dims.m, dims.N, dims.M), (12, 4, 6, 4))
        self.assertEqual(dims.vn_counts, (6,))
        self.assertEqual(dims.cn_counts, (4,))

    def test_cycle_instance(self):
        dims = instance_dims(cycle_ensemble(), 2)
        self.assertEqual((dims.E, dims.m, dims.N, dims.M), (4, 2, 2, 2))

    def test_non_integral_suggests_next_valid_n(self):
        ensemble = regular_ldpc()
        self.assertEqual(ensemble.period(), 3)
        with self.assertRaises(NonIntegralInstanceError) as ctx:
            instance_dims(ensemble, 5)
        self.assertEqual(ctx.exception.suggested_n, 6)
        self.assertIn('6', str(ctx.exception.detail))

    def test_mixed_period(self):
        ensemble = mixed_gldpc()
        n = ensemble.period()
        self.assertEqual(n, 35)
        dims = instance_dims(ensemble, n)
        self.assertEqual(dims.E, 84)
        self.assertEqual(dims.vn_counts, (21, 14))
        self.assertEqual(dims.cn_counts, (7, 6))

    def test_counts_scale_linearly(self):
        ensemble = mixed_gldpc()
        base = instance_dims(ensemble, ensemble.period())
        for j in (2, 3, 5):
            dims = instance_dims(ensemble, j * ensemble.period())
            self.assertEqual((dims.E, dims.m, dims.N, dims.M), (j * base.E, j * base.m, j * base.N, j * base.M))
            self.assertEqual(dims.vn_counts, tuple(j * count for count in base.vn_counts))
            self.assertEqual(dims.cn_counts, tuple(j * count for count in base.cn_counts))

    def test_edge_counts_agree_on_both_sides(self):
        for ensemble in (regular_ldpc(), irregular_ldpc(), mixed_gldpc()):
            for n in (ensemble.period(), 4 * ensemble.period()):
                dims = instance_dims(ensemble, n)
                vn_edges = sum(count * vn.q for vn, count in zip(ensemble.vn_types, dims.vn_counts))
                cn_edges = sum(count * cn.s for cn, count in zip(ensemble.cn_types, dims.cn_counts))
                self.assertEqual(vn_edges, dims.E)
                self.assertEqual(cn_edges, dims.E)

    def test_invalid_n(self):
        with self.assertRaises(InputError):
            instance_dims(regular_ldpc(), 0)


class DesignRateTests(SimpleTestCase):
    def test_regular_ldpc(self):
        self.assertEqual(design_rate(regular_ldpc()), Fraction(1, 3))

    def test_mixed_gldpc(self):
        self.assertEqual(design_rate(mixed_gldpc()), Fraction(2, 7))

    def test_matches_instance_counts(self):
        ensemble = mixed_gldpc()
        dims = instance_dims(ensemble, ensemble.period())
        self.assertEqual(design_rate(ensemble), 1 - Fraction(dims.M, dims.N))
