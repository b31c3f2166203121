import json
import math
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from gldpc.reports import render_json

from .factories import config_path


def run(name, *args):
    out = StringIO()
    call_command(name, *args, stdout=out)
    return out.getvalue()


def run_failing(test, name, *args):
    """Run a command that must fail; returns (stdout, CommandError)"""
    out = StringIO()
    with test.assertRaises(CommandError) as ctx:
        call_command(name, *args, stdout=out)
    return out.getvalue(), ctx.exception


def without_timing(text):
    envelope = json.loads(text)
    envelope.pop('timing')
    return envelope


class AnalyzeCommandTests(SimpleTestCase):
    def test_regular_ldpc_slope(self):
        envelope = json.loads(run('analyze', config_path('ldpc')))
        self.assertEqual(envelope['tool'], 'dgldpc')
        self.assertEqual(envelope['command'], 'analyze')
        self.assertEqual(envelope['status'], 'success')
        self.assertEqual(len(envelope['config_hash']), 64)
        results = envelope['results']
        self.assertAlmostEqual(results['slope'], math.log(2), delta=1e-10)
        self.assertEqual(results['r'], 2)
        self.assertEqual(results['small_weight_regime'], 'exponentially many')
        self.assertEqual(results['design_rate'], {'num': 1, 'den': 3, 'decimal': '0.33333333333333333'})

    def test_log_base_two(self):
        envelope = json.loads(run('analyze', config_path('ldpc'), '--log-base', '2'))
        self.assertAlmostEqual(envelope['results']['slope'], 1.0, delta=1e-10)
        self.assertAlmostEqual(envelope['results']['slope_nats'], math.log(2), delta=1e-10)

    def test_hamming_check_nodes_exit_two(self):
        text, error = run_failing(self, 'analyze', config_path('hamming'))
        self.assertEqual(error.returncode, 2)
        envelope = json.loads(text)
        self.assertEqual(envelope['status'], 'error')
        self.assertEqual(envelope['error']['code'], 'theorem_hypothesis')
        self.assertEqual(envelope['error']['side'], 'check')
        self.assertIn('r=3', envelope['error']['detail'])

    def test_hypothesis_failure_keeps_defined_parameters(self):
        text, _ = run_failing(self, 'analyze', config_path('hamming'))
        results = json.loads(text)['results']
        self.assertEqual((results['r'], results['p']), (3, 2))
        self.assertEqual(results['C']['num'], 3)
        self.assertEqual(results['C']['den'], 1)
        self.assertEqual(results['P'], {'1': {'num': 1, 'den': 1, 'decimal': '1'}})
        self.assertAlmostEqual(results['P_inverse_one_over_C'], 1 / 3, delta=1e-12)
        self.assertNotIn('slope', results)

    def test_malformed_json_exit_one(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'broken.json'
            path.write_text('{"name": "broken",\n  "cn_types": [\n')
            text, error = run_failing(self, 'analyze', str(path))
        self.assertEqual(error.returncode, 1)
        self.assertEqual(json.loads(text)['error']['code'], 'config_parse_error')

    def test_missing_file_exit_one(self):
        _, error = run_failing(self, 'analyze', config_path('does_not_exist'))
        self.assertEqual(error.returncode, 1)

    def test_csv_format(self):
        lines = run('analyze', config_path('ldpc'), '--format', 'csv').splitlines()
        self.assertEqual(lines[0], 'quantity,value')
        self.assertIn('r,2', lines)

    def test_json_round_trip_is_stable(self):
        text = run('analyze', config_path('mixed'))
        self.assertEqual(render_json(json.loads(text)) + '\n', text)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'report.json'
            self.assertEqual(run('analyze', config_path('ldpc'), '--out', str(path)), '')
            envelope = json.loads(path.read_text())
        self.assertEqual(envelope['status'], 'success')
        self.assertNotIn('out', envelope['parameters'])


class GrowthCommandTests(SimpleTestCase):
    def test_empty_alpha_list(self):
        results = json.loads(run('growth', config_path('ldpc')))['results']
        self.assertEqual(results['rows'], [])
        self.assertAlmostEqual(results['slope'], math.log(2), delta=1e-10)

    def test_general_and_infeasible_rows(self):
        rows = json.loads(run('growth', config_path('ldpc'), '--alpha-list', '1/6,1'))['results']['rows']
        first, second = rows
        expected = (2 / 3) * (math.log(4 / 3) + 0.5 * math.log(3)) + (1 / 6) * math.log(1 / 6) + (5 / 6) * math.log(5 / 6)
        self.assertEqual(first['status'], 'ok')
        self.assertAlmostEqual(first['g_general'], expected, delta=1e-6)
        self.assertAlmostEqual(first['g_slope'], math.log(2) / 6, delta=1e-10)
        self.assertEqual(second['status'], 'infeasible')

    def test_slope_only(self):
        rows = json.loads(run('growth', config_path('ldpc'), '--alpha-list', '0.01', '--method', 'slope'))['results']['rows']
        self.assertNotIn('g_general', rows[0])
        self.assertAlmostEqual(rows[0]['g_slope'], 0.01 * math.log(2), delta=1e-12)

    def test_negative_alpha_rejected(self):
        _, error = run_failing(self, 'growth', config_path('ldpc'), '--alpha-list', '-0.1')
        self.assertEqual(error.returncode, 1)

    def test_general_rows_survive_missing_slope(self):
        results = json.loads(run('growth', config_path('hamming'), '--alpha-list', '0.3'))['results']
        self.assertIsNone(results['slope'])
        self.assertEqual(results['slope_error']['code'], 'theorem_hypothesis')
        row, = results['rows']
        self.assertEqual(row['status'], 'ok')
        self.assertNotIn('g_slope', row)
        self.assertAlmostEqual(row['g_general'], 0.0437, delta=1e-3)

    def test_slope_only_fails_without_slope(self):
        _, error = run_failing(self, 'growth', config_path('hamming'), '--alpha-list', '0.3', '--method', 'slope')
        self.assertEqual(error.returncode, 2)


class SpectrumCommandTests(SimpleTestCase):
    def test_cycle_exact(self):
        results = json.loads(run('spectrum', config_path('cycle'), '--n', '2'))['results']
        self.assertEqual(results['method'], 'exact-gf')
        self.assertEqual(results['dims']['E'], 4)
        value = results['rows'][1]['value']
        self.assertEqual((value['num'], value['den']), (2, 3))

    @override_settings(DGLDPC={'EXACT_SPECTRUM_MAX_CELLS': 0})
    def test_log_domain_rows(self):
        results = json.loads(run('spectrum', config_path('cycle'), '--n', '2'))['results']
        self.assertTrue(results['log_domain'])
        row = results['rows'][1]
        self.assertIsNone(row['value'])
        self.assertTrue(row['decimal'].startswith('0.66666666666666'))
        self.assertAlmostEqual(row['log_value'], math.log(2 / 3), delta=1e-12)

    def test_cycle_csv(self):
        lines = run('spectrum', config_path('cycle'), '--n', '2', '--format', 'csv').splitlines()
        self.assertEqual(lines[0], 'w,value,decimal,log_value')
        self.assertTrue(lines[2].startswith('1,2/3,0.6666'))

    def test_brute_force_matches_exact(self):
        exact = json.loads(run('spectrum', config_path('cycle'), '--n', '2'))['results']['rows']
        brute = json.loads(run('spectrum', config_path('cycle'), '--n', '2', '--brute-force'))['results']['rows']
        self.assertEqual(exact, brute)

    def test_splits(self):
        results = json.loads(run('spectrum', config_path('cycle'), '--n', '2', '--splits'))['results']
        self.assertEqual(results['splits']['1'][0]['v'], 2)

    def test_non_integral_n_suggests_next(self):
        text, error = run_failing(self, 'spectrum', config_path('ldpc'), '--n', '5')
        self.assertEqual(error.returncode, 1)
        payload = json.loads(text)['error']
        self.assertEqual(payload['code'], 'non_integral_instance')
        self.assertEqual(payload['suggested_n'], 6)

    def test_sample_requires_seed(self):
        _, error = run_failing(self, 'spectrum', config_path('cycle'), '--n', '2', '--sample', '--trials', '5')
        self.assertEqual(error.returncode, 1)


class SampleCommandTests(SimpleTestCase):
    def test_deterministic_for_a_seed(self):
        args = ('sample', config_path('ldpc'), '--n', '6', '--trials', '25', '--seed', '7')
        first, second = without_timing(run(*args)), without_timing(run(*args))
        self.assertEqual(first, second)
        self.assertEqual(first['results']['method'], 'monte-carlo')
        self.assertEqual(first['results']['seed'], 7)

    def test_matches_spectrum_sample_mode(self):
        sampled = without_timing(run('sample', config_path('ldpc'), '--n', '6', '--trials', '10', '--seed', '3'))
        spectrum = without_timing(
            run('spectrum', config_path('ldpc'), '--n', '6', '--sample', '--trials', '10', '--seed', '3')
        )
        self.assertEqual(sampled['results'], spectrum['results'])


class LemmaCommandTests(SimpleTestCase):
    def test_univariate(self):
        results = json.loads(run('lemma', '--poly', '1,1', '--xi', '0.5', '--ell-list', '2,3,4'))['results']
        self.assertAlmostEqual(results['value'], math.log(2), delta=1e-10)
        statuses = [row['status'] for row in results['rows']]
        self.assertEqual(statuses, ['ok', 'skipped', 'ok'])
        self.assertAlmostEqual(results['rows'][0]['exact'], math.log(2) / 2, delta=1e-12)

    def test_ratio_outside_support(self):
        text, error = run_failing(self, 'lemma', '--poly', '1,1', '--xi', '1.5')
        self.assertEqual(error.returncode, 2)
        self.assertEqual(json.loads(text)['error']['code'], 'infeasible_ratio')

    def test_bivariate(self):
        # B(x, y) = 1 + x y^2: the only path to (1/2, 1) splits the power in half
        results = json.loads(run('lemma', '--bipoly', '1;0,0,1', '--xi', '1/2', '--theta', '1'))['results']
        self.assertAlmostEqual(results['value'], math.log(2), delta=1e-9)

    def test_bivariate_needs_theta(self):
        _, error = run_failing(self, 'lemma', '--bipoly', '1;0,0,1', '--xi', '1/2')
        self.assertEqual(error.returncode, 1)


class ValidateCommandTests(SimpleTestCase):
    def test_cycle_passes(self):
        envelope = json.loads(run('validate', config_path('cycle')))
        self.assertEqual(envelope['status'], 'success')
        self.assertEqual(envelope['results']['failed'], [])
        statuses = {check['check']: check['status'] for check in envelope['results']['checks']}
        self.assertEqual(statuses['oracle_vs_brute_force'], 'pass')
        self.assertEqual(statuses['small_weight_slope'], 'pass')

    def test_bad_fractions_exit_one(self):
        text, error = run_failing(self, 'validate', config_path('bad_sum'))
        self.assertEqual(error.returncode, 1)
        self.assertEqual(json.loads(text)['status'], 'error')
