from gldpc.ensemble import instance_dims
from gldpc.management.base import CommandResult, ReportCommand
from gldpc.oracle import brute_force_spectrum, expected_spectrum, sample_spectrum
from gldpc.reports import to_log_base
from gldpc.serializers import fraction_decimal, log_decimal

EXACT_COLUMNS = ['w', 'value', 'decimal', 'log_value']
SAMPLE_COLUMNS = ['w', 'mean', 'std_error']


class Command(ReportCommand):
    help = 'Expected weight spectrum E[N_w] of one instance size: exact, brute force or sampled'
    command_name = 'spectrum'

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='Path to an ensemble config (JSON)')
        parser.add_argument('--n', type=int, required=True, help='Number of variable nodes')
        mode = parser.add_mutually_exclusive_group()
        mode.add_argument('--exact', dest='mode', action='store_const', const='exact', help='Generating-function spectrum (default)')
        mode.add_argument('--brute-force', dest='mode', action='store_const', const='brute-force', help='Average over all E! permutations')
        mode.add_argument('--sample', dest='mode', action='store_const', const='sample', help='Monte Carlo over random permutations')
        parser.add_argument('--trials', type=int, default=1000, help='Sampled codes (--sample)')
        parser.add_argument('--seed', type=int, default=None, help='64-bit seed (--sample)')
        parser.add_argument('--wmax', type=int, default=None, help='Largest weight counted (--sample)')
        parser.add_argument('--splits', action='store_true', help='Include the per-(u, v) split table (--exact)')

    def run(self, config, n, mode=None, trials=1000, seed=None, wmax=None, splits=False, log_base='e', **options):
        ensemble = self.load_ensemble(config)
        dims = instance_dims(ensemble, n)
        mode = mode or 'exact'

        if mode == 'sample':
            report = sample_spectrum(ensemble, n, trials, seed=seed, wmax=wmax)
            rows = [
                {'w': w, 'mean': mean, 'std_error': error}
                for w, mean, error in zip(report.weights, report.values, report.std_errors)
            ]
            columns = SAMPLE_COLUMNS
        else:
            if mode == 'exact':
                report = expected_spectrum(ensemble, n, with_splits=splits)
            else:
                report = brute_force_spectrum(ensemble, n)
            rows = [
                {
                    'w': w,
                    'value': None if report.log_domain else value,
                    'decimal': log_decimal(log_value) if report.log_domain else fraction_decimal(value),
                    'log_value': to_log_base(log_value, log_base),
                }
                for w, value, log_value in zip(report.weights, report.values, report.log_values())
            ]
            columns = EXACT_COLUMNS

        results = {
            'n': n,
            'method': report.method,
            'dims': {'E': dims.E, 'm': dims.m, 'N': dims.N, 'M': dims.M,
                     'vn_counts': list(dims.vn_counts), 'cn_counts': list(dims.cn_counts)},
            'log_base': log_base,
            'log_domain': report.log_domain,
            'rows': rows,
        }
        if report.trials is not None:
            results.update(trials=report.trials, seed=report.seed)
        if report.split_table is not None:
            results['splits'] = {
                u: [{'v': v, 'value': value} for v, value in sorted(row.items())]
                for u, row in report.split_table.items()
            }
        return CommandResult(results, columns=columns, rows=rows)
