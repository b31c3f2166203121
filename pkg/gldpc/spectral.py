"""
Minimum-distance-2 spectral parameters of an ensemble: r, p, X_c, X_v, C_t,
C, L_t and the polynomial P(x), plus the inverse P^-1 and the small-weight
growth-rate slope log[1/P^-1(1/C)].
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from scipy import optimize

from .exceptions import ConvergenceError, PNotDefinedError, TheoremHypothesisError

logger = logging.getLogger(__name__)

P_INVERSE_RTOL = 1e-12


@dataclass(frozen=True)
class SpectralParams:
    r: int
    p: int
    X_c: tuple
    X_v: tuple
    C_t: dict
    C: Fraction
    P_coeffs: dict = field(default=None)
    L_t: dict = field(default=None)

    def has_p(self):
        return self.p == 2 and bool(self.P_coeffs)

    def P(self, x):
        """Evaluate P(x) in floating point"""
        return sum(float(coeff) * x ** i for i, coeff in self.P_coeffs.items())

    def P_prime(self, x):
        return sum(i * float(coeff) * x ** (i - 1) for i, coeff in self.P_coeffs.items())


def spectral_params(ensemble):
    """Exact r, p, X_c, X_v, C_t, C, and (when p = 2) L_t and P(x)"""
    r = min(cn.r_t for cn in ensemble.cn_types)
    p = min(vn.p_t for vn in ensemble.vn_types)
    X_c = tuple(cn.id for cn in ensemble.cn_types if cn.r_t == r)
    X_v = tuple(vn.id for vn in ensemble.vn_types if vn.p_t == p)

    C_t = {cn.id: Fraction(cn.r_t * cn.enumerator[cn.r_t], cn.s) for cn in ensemble.cn_types}
    C = sum((cn.rho * C_t[cn.id] for cn in ensemble.cn_types if cn.id in X_c), Fraction(0))

    P_coeffs = None
    L_t = None
    if p == 2:
        P_coeffs = {}
        L_t = {}
        for vn in ensemble.vn_types:
            if vn.id not in X_v:
                continue
            B = vn.io_enumerator
            L_t[vn.id] = tuple(i for i in range(B.k + 1) if B.coeff(i, 2) > 0)
            for i in L_t[vn.id]:
                coeff = vn.lam * 2 * B.coeff(i, 2) / vn.q
                P_coeffs[i] = P_coeffs.get(i, Fraction(0)) + coeff
        P_coeffs = dict(sorted(P_coeffs.items()))

    logger.debug('Spectral parameters: r=%d p=%d C=%s P=%s', r, p, C, P_coeffs)
    return SpectralParams(r=r, p=p, X_c=X_c, X_v=X_v, C_t=C_t, C=C, P_coeffs=P_coeffs, L_t=L_t)


def p_inverse(params, y):
    """
    Unique x >= 0 with P(x) = y.

    Bisection on the bracket [0, 2^j] (doubled from 1 until P >= y), then a
    Newton polish to |P(x) - y| <= 1e-12 y.
    """
    if not params.has_p():
        raise PNotDefinedError(f'p={params.p}: P(x) requires p=2')
    y = float(y)
    if not y > 0:
        raise ValueError(f'p_inverse needs y > 0, got {y}')

    # Bracket the root
    upper = 1.0
    while params.P(upper) < y:
        upper *= 2.0

    def residual(x):
        return params.P(x) - y

    root = optimize.bisect(residual, 0.0, upper, xtol=1e-300, maxiter=2000)
    if params.P_prime(root) > 0:
        root = optimize.newton(residual, root, fprime=params.P_prime, tol=1e-15 * max(1.0, root), maxiter=50, disp=False)

    if abs(params.P(root) - y) > P_INVERSE_RTOL * y:
        raise ConvergenceError(
            f'P^-1({y}) did not converge',
            diagnostics={'x': root, 'residual': params.P(root) - y},
        )
    return root


def check_theorem_hypothesis(params):
    """Raise TheoremHypothesisError unless r = p = 2"""
    failures = []
    if params.r != 2:
        failures.append(f'r={params.r}: the small-weight slope requires r=2')
    if params.p != 2:
        failures.append(f'p={params.p}: the small-weight slope requires p=2')
    if failures:
        side = 'both' if len(failures) == 2 else ('check' if params.r != 2 else 'variable')
        raise TheoremHypothesisError('; '.join(failures), side=side)


def stability_bound(params):
    """P^-1(1/C): the BEC stability bound on the iterative decoding threshold"""
    return p_inverse(params, 1 / params.C)


def growth_rate_slope(ensemble, params=None):
    """
    log[1/P^-1(1/C)] in nats: the coefficient of alpha in
    G(alpha) = alpha log[1/P^-1(1/C)] + O(alpha^2).
    """
    if params is None:
        params = spectral_params(ensemble)
    check_theorem_hypothesis(params)
    return -math.log(stability_bound(params))


def small_weight_regime(slope, tol=1e-12):
    """Expected number of small linear-weight codewords, by the sign of the slope"""
    if slope > tol:
        return 'exponentially many'
    if slope < -tol:
        return 'exponentially few'
    return 'boundary'
