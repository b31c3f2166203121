import math

from gldpc.ensemble import design_rate
from gldpc.exceptions import TheoremHypothesisError
from gldpc.management.base import CommandResult, ReportCommand
from gldpc.reports import to_log_base
from gldpc.spectral import (
    check_theorem_hypothesis,
    growth_rate_slope,
    small_weight_regime,
    spectral_params,
    stability_bound,
)


class Command(ReportCommand):
    help = 'Spectral parameters r, p, C, P(x) and the small-weight growth-rate slope of an ensemble'
    command_name = 'analyze'

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='Path to an ensemble config (JSON)')

    def run(self, config, log_base='e', **options):
        ensemble = self.load_ensemble(config)
        params = spectral_params(ensemble)

        results = {
            'name': ensemble.name,
            'design_rate': design_rate(ensemble),
            'period': ensemble.period(),
            'lambda': ensemble.lambda_poly(),
            'rho': ensemble.rho_poly(),
            'int_lambda': ensemble.int_lambda,
            'int_rho': ensemble.int_rho,
            'lambda_prime_zero': ensemble.lambda_prime_zero(),
            'rho_prime_one': ensemble.rho_prime_one(),
            'lambda_prime_zero_rho_prime_one': ensemble.lambda_prime_zero() * ensemble.rho_prime_one(),
            'lambda_prime_zero_C': ensemble.lambda_prime_zero() * params.C,
            'r': params.r,
            'p': params.p,
            'X_c': list(params.X_c),
            'X_v': list(params.X_v),
            'C_t': params.C_t,
            'C': params.C,
            'P': params.P_coeffs,
            'L_t': {t: list(L) for t, L in (params.L_t or {}).items()},
        }
        results['P_inverse_one_over_C'] = stability_bound(params) if params.has_p() else None
        try:
            check_theorem_hypothesis(params)
        except TheoremHypothesisError as exc:
            exc.partial_results = results
            raise

        slope = growth_rate_slope(ensemble, params)
        results.update({
            'slope': to_log_base(slope, log_base),
            'slope_nats': slope,
            'slope_bits': slope / math.log(2),
            'log_base': log_base,
            'small_weight_regime': small_weight_regime(slope),
        })
        rows = [{'quantity': key, 'value': value} for key, value in results.items()]
        return CommandResult(results, columns=['quantity', 'value'], rows=rows)
