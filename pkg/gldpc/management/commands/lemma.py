import math

from gldpc.asymptotics import (
    GrowthQuery1D,
    GrowthQuery2D,
    coeff_growth_1d,
    coeff_growth_2d,
    exact_coeff_power_1d,
    exact_coeff_power_2d,
    small_xi_expansion_1d,
)
from gldpc.ensemble import as_fraction
from gldpc.exceptions import InputError
from gldpc.management.base import CommandResult, ReportCommand
from gldpc.reports import to_log_base

COLUMNS = ['ell', 'exact', 'gap', 'status']


def parse_poly(text):
    """'1,0,3' -> (1, 0, 3)"""
    try:
        return tuple(int(item) for item in text.split(','))
    except ValueError as exc:
        raise InputError(f'--poly expects comma-separated integers, got {text!r}') from exc


def parse_bipoly(text):
    """'1;0,0,2;0,0,1' -> rows B[u][v] for u = 0, 1, 2"""
    try:
        return tuple(tuple(int(item) for item in row.split(',')) for row in text.split(';'))
    except ValueError as exc:
        raise InputError(f'--bipoly expects ;-separated rows of integers, got {text!r}') from exc


def parse_ells(text):
    try:
        return [int(item) for item in text.split(',') if item.strip()] if text else []
    except ValueError as exc:
        raise InputError(f'--ell-list expects comma-separated integers, got {text!r}') from exc


class Command(ReportCommand):
    help = 'Coefficient growth of A(x)^l or B(x, y)^l: dual value, maximizing distribution and exact finite-l values'
    command_name = 'lemma'

    def add_command_arguments(self, parser):
        poly = parser.add_mutually_exclusive_group(required=True)
        poly.add_argument('--poly', help='Coefficients A_0,A_1,... of A(x)')
        poly.add_argument('--bipoly', help='Rows B_u,0,B_u,1,... of B(x, y), separated by ;')
        parser.add_argument('--xi', required=True, help='Target ratio xi (decimal or p/q)')
        parser.add_argument('--theta', default=None, help='Output-weight ratio theta (--bipoly)')
        parser.add_argument('--ell-list', default='', help='Comma-separated powers for the exact coefficients')

    def run(self, poly=None, bipoly=None, xi=None, theta=None, ell_list='', log_base='e', **options):
        xi = as_fraction(xi)
        ells = parse_ells(ell_list)
        if poly is not None:
            results, exact = self.univariate(parse_poly(poly), xi, ells)
        else:
            if theta is None:
                raise InputError('--bipoly needs --theta')
            results, exact = self.bivariate(parse_bipoly(bipoly), xi, as_fraction(theta), ells)

        limit = results['value']
        rows = []
        for ell, coefficient in exact:
            if coefficient is None:
                rows.append({'ell': ell, 'status': 'skipped'})
                continue
            if coefficient == 0:
                rows.append({'ell': ell, 'status': 'zero'})
                continue
            value = math.log(coefficient) / ell
            rows.append({
                'ell': ell,
                'exact': to_log_base(value, log_base),
                'gap': to_log_base(abs(value - limit), log_base),
                'status': 'ok',
            })
        results['value'] = to_log_base(limit, log_base)
        if 'expansion' in results:
            results['expansion'] = to_log_base(results['expansion'], log_base)
        results.update(log_base=log_base, rows=rows)
        return CommandResult(results, columns=COLUMNS, rows=rows)

    def univariate(self, coeffs, xi, ells):
        query = GrowthQuery1D(enumerator=coeffs, xi=xi)
        value, beta = coeff_growth_1d(query)
        c = min(u for u, a in enumerate(query.enumerator) if u > 0 and a)
        results = {
            'value': value,
            'argmax': [{'i': i, 'beta': w} for i, w in zip(beta.support, beta.weights)],
            'multiplier': beta.multiplier,
            'expansion': small_xi_expansion_1d(query.enumerator[c], c, xi),
        }
        exact = []
        for ell in ells:
            w = xi * ell
            exact.append((ell, exact_coeff_power_1d(coeffs, ell, int(w)) if w.denominator == 1 else None))
        return results, exact

    def bivariate(self, rows, xi, theta, ells):
        query = GrowthQuery2D(enumerator=rows, xi=xi, theta=theta)
        value, eta = coeff_growth_2d(query)
        results = {
            'value': value,
            'argmax': [{'i': i, 'j': j, 'eta': w} for (i, j), w in zip(eta.support, eta.weights)],
            'multipliers': list(eta.multipliers) if eta.multipliers is not None else None,
        }
        exact = []
        for ell in ells:
            u, v = xi * ell, theta * ell
            integral = u.denominator == 1 and v.denominator == 1
            exact.append((ell, exact_coeff_power_2d(rows, ell, int(u), int(v)) if integral else None))
        return results, exact
