import math
from fractions import Fraction

from gldpc.asymptotics import (
    GrowthQuery1D,
    GrowthQuery2D,
    check_side_growth,
    coeff_growth_1d,
    coeff_growth_2d,
    max_check_ratio,
)
from gldpc.conf import app_setting
from gldpc.ensemble import design_rate, instance_dims
from gldpc.exceptions import DGLDPCError, TheoremHypothesisError
from gldpc.management.base import CommandResult, ReportCommand
from gldpc.oracle import brute_force_spectrum, expected_spectrum, p_valid
from gldpc.spectral import growth_rate_slope, spectral_params

COLUMNS = ['check', 'status', 'measured', 'tolerance', 'detail']

DUALITY_TOL = 1e-9
SLOPE_TOL = 1e-10


def outcome(name, passed, measured=None, tolerance=None, detail=''):
    status = 'skipped' if passed is None else ('pass' if passed else 'fail')
    return {'check': name, 'status': status, 'measured': measured, 'tolerance': tolerance, 'detail': detail}


class Command(ReportCommand):
    help = 'Run the cross-module invariant suite on an ensemble at desk scale'
    command_name = 'validate'

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='Path to an ensemble config (JSON)')

    def run(self, config, **options):
        ensemble = self.load_ensemble(config)
        checks = [
            self.check_fractions(ensemble),
            self.check_dims(ensemble),
            *self.check_oracles(ensemble),
            self.check_cn_duality(ensemble),
            self.check_vn_duality(ensemble),
            self.check_check_side(ensemble),
            self.check_slope(ensemble),
        ]
        failed = [check['check'] for check in checks if check['status'] == 'fail']
        results = {'checks': checks, 'failed': failed}
        if failed:
            return CommandResult(results, columns=COLUMNS, rows=checks, status='failed', exit_code=1)
        return CommandResult(results, columns=COLUMNS, rows=checks)

    def check_fractions(self, ensemble):
        gamma = sum(ensemble.gamma.values(), Fraction(0))
        delta = sum(ensemble.delta.values(), Fraction(0))
        return outcome('node_fractions', gamma == 1 and delta == 1, detail=f'sum gamma={gamma}, sum delta={delta}')

    def check_dims(self, ensemble):
        n = ensemble.period()
        dims = instance_dims(ensemble, n)
        rate = Fraction(dims.N - dims.M, dims.N)
        return outcome('design_rate', rate == design_rate(ensemble), detail=f'n={n}: 1 - M/N = {rate}')

    def check_oracles(self, ensemble):
        n = ensemble.period()
        dims = instance_dims(ensemble, n)
        checks = []
        try:
            exact = expected_spectrum(ensemble, n)
        except DGLDPCError as exc:
            return [outcome('zero_codeword', None, detail=str(exc.detail))]
        checks.append(outcome('zero_codeword', exact.values[0] == 1, detail=f'E[N_0]={exact.values[0]} at n={n}'))

        probabilities = [p_valid(ensemble, n, v) for v in range(dims.E + 1)]
        checks.append(outcome('p_valid_range', all(0 <= p <= 1 for p in probabilities), detail=f'n={n}'))

        if dims.E > int(app_setting('BRUTE_FORCE_MAX_EDGES')):
            checks.append(outcome('oracle_vs_brute_force', None, detail=f'E={dims.E} at the smallest valid n={n}'))
        else:
            brute = brute_force_spectrum(ensemble, n)
            mismatched = [w for w, a, b in zip(exact.weights, exact.values, brute.values) if a != b]
            checks.append(outcome(
                'oracle_vs_brute_force',
                not mismatched,
                detail=f'n={n}, E={dims.E}' + (f'; mismatched weights {mismatched}' if mismatched else ''),
            ))
        return checks

    def check_cn_duality(self, ensemble):
        enumerator = ensemble.cn_types[0].enumerator
        xi = Fraction(enumerator.n, 3)
        value, beta = coeff_growth_1d(GrowthQuery1D(enumerator=enumerator.coeffs, xi=xi))
        gap = abs(beta.objective() - value)
        return outcome('cn_dual_equality', gap <= DUALITY_TOL, measured=gap, tolerance=DUALITY_TOL, detail=f'xi={xi}')

    def check_vn_duality(self, ensemble):
        io = ensemble.vn_types[0].io_enumerator
        support = io.support()
        xi = Fraction(sum(u for u, _ in support), len(support))
        theta = Fraction(sum(v for _, v in support), len(support))
        value, eta = coeff_growth_2d(GrowthQuery2D(enumerator=io.table, xi=xi, theta=theta))
        gap = abs(eta.objective() - value)
        return outcome(
            'vn_dual_equality', gap <= DUALITY_TOL, measured=gap, tolerance=DUALITY_TOL, detail=f'(xi, theta)=({xi}, {theta})'
        )

    def check_check_side(self, ensemble):
        delta = max_check_ratio(ensemble) / 3
        try:
            check_side_growth(ensemble, delta)
        except DGLDPCError as exc:
            return outcome('check_side_partition', False, detail=str(exc.detail))
        return outcome('check_side_partition', True, tolerance=1e-9, detail=f'delta={delta}')

    def check_slope(self, ensemble):
        params = spectral_params(ensemble)
        try:
            slope = growth_rate_slope(ensemble, params)
        except TheoremHypothesisError as exc:
            return outcome('small_weight_slope', None, detail=str(exc.detail))

        if ensemble.is_ldpc():
            expected = math.log(ensemble.lambda_prime_zero() * ensemble.rho_prime_one())
            label = "slope = log lambda'(0) rho'(1)"
        elif ensemble.has_repetition_vns():
            expected = math.log(ensemble.lambda_prime_zero() * params.C)
            label = "slope = log lambda'(0) C"
        else:
            return outcome('small_weight_slope', True, measured=slope, detail='slope = -log P^-1(1/C)')
        gap = abs(slope - expected)
        return outcome('small_weight_slope', gap <= SLOPE_TOL, measured=gap, tolerance=SLOPE_TOL, detail=label)
