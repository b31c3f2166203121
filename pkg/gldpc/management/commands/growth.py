import logging

from gldpc.asymptotics import growth_rate_general
from gldpc.ensemble import as_fraction
from gldpc.exceptions import ConvergenceError, InfeasibleRatioError, InputError, TheoremHypothesisError
from gldpc.management.base import CommandResult, ReportCommand
from gldpc.reports import to_log_base
from gldpc.spectral import growth_rate_slope

logger = logging.getLogger(__name__)

COLUMNS = ['alpha', 'g_slope', 'g_general', 'beta', 'status', 'detail']


def parse_ratio_list(text):
    """Comma-separated rationals ('0.001,1/6') as floats; blank gives an empty list"""
    if not text or not text.strip():
        return []
    return [float(as_fraction(item.strip())) for item in text.split(',') if item.strip()]


class Command(ReportCommand):
    help = 'Growth rate G(alpha) of the weight spectrum: first-order slope and/or general evaluation'
    command_name = 'growth'

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='Path to an ensemble config (JSON)')
        parser.add_argument('--alpha-list', default='', help='Comma-separated normalized weights alpha')
        parser.add_argument('--method', choices=['slope', 'general', 'both'], default='both')

    def run(self, config, alpha_list='', method='both', log_base='e', **options):
        ensemble = self.load_ensemble(config)
        alphas = parse_ratio_list(alpha_list)
        if any(alpha < 0 for alpha in alphas):
            raise InputError('alpha values must be nonnegative')

        slope = slope_error = None
        if method in ('slope', 'both'):
            try:
                slope = growth_rate_slope(ensemble)
            except TheoremHypothesisError as exc:
                if method == 'slope':
                    raise
                logger.info('growth: no slope column, %s', exc.detail)
                slope_error = exc.as_dict()
        alpha_max = float(ensemble.max_alpha())

        rows = []
        for alpha in alphas:
            row = {'alpha': alpha, 'status': 'ok'}
            if alpha >= alpha_max:
                row.update(status='infeasible', detail=f'alpha must lie in [0, {alpha_max})')
                rows.append(row)
                continue
            if slope is not None:
                row['g_slope'] = to_log_base(alpha * slope, log_base)
            if method in ('general', 'both'):
                try:
                    result = growth_rate_general(ensemble, alpha)
                except InfeasibleRatioError as exc:
                    row.update(status='infeasible', detail=str(exc.detail))
                except ConvergenceError as exc:
                    logger.warning('G(%g) did not converge: %s', alpha, exc.detail)
                    row.update(status='not_converged', detail=str(exc.detail))
                else:
                    row['g_general'] = to_log_base(result.value, log_base)
                    row['beta'] = result.beta
                    row['beta_range'] = list(result.beta_range)
                    row['beta_ratio_range'] = list(result.beta_ratio_range)
                    row['higher_weight_mass'] = result.higher_weight_mass()
            rows.append(row)

        results = {'slope': to_log_base(slope, log_base), 'log_base': log_base, 'rows': rows}
        if slope_error is not None:
            results['slope_error'] = slope_error
        return CommandResult(results, columns=COLUMNS, rows=rows)
