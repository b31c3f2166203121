"""
Exponential growth of generating-function coefficients.

The limits (1/l) log Coeff[A(x)^l, x^(xi l)] and the bivariate analogue are
constrained entropy maximizations. They are solved through their convex
duals (Legendre transforms of log A and log B), which are one- or
two-dimensional: a bracketed root of the tilted mean in 1-D, a damped Newton
iteration in 2-D. The maximizing distributions are recovered in closed
form, beta_i = A_i z^i / A(z). Mixtures sum_t w_t log A_t share a single
multiplier, which is how the check-side and VN-side partitions of the
ensemble growth rate are handled.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import optimize, spatial, special

from .conf import app_setting
from .exceptions import CapacityError, ConvergenceError, InfeasibleRatioError, InputError
from .spectral import spectral_params

logger = logging.getLogger(__name__)

# Dual solutions are accurate well below this (absolute, nats).
DUAL_TOL = 1e-10
# Outer beta search tolerance of the general growth rate.
OUTER_TOL = 1e-8
# Targets this close (relative) to the support hull are solved on the face.
FACE_TOL = 1e-12
# Beyond this the 2-D dual is treated as unbounded.
MAX_MULTIPLIER = 1e3
# Newton stopping rule: moment residual of the dual gradient.
GRADIENT_TOL = 1e-13
MOMENT_TOL = 1e-10
PURE_NEWTON_DECREMENT = 1e-2
MAX_NEWTON_STEPS = 500


@dataclass(frozen=True)
class GrowthQuery1D:
    """A(x) = 1 + sum_{u=c}^{d} A_u x^u with the target ratio xi"""

    enumerator: tuple
    xi: Fraction

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.enumerator)
        if not coeffs or coeffs[0] != 1 or any(a < 0 for a in coeffs) or not any(coeffs[1:]):
            raise InputError('A(x) must have A_0 = 1, nonnegative coefficients and a nonzero term of positive degree')
        object.__setattr__(self, 'enumerator', coeffs)

    @property
    def degree(self):
        return max(u for u, a in enumerate(self.enumerator) if a)


@dataclass(frozen=True)
class GrowthQuery2D:
    """B(x, y) given as rows B[u][v] with B_{0,0} = 1, and the targets (xi, theta)"""

    enumerator: tuple
    xi: Fraction
    theta: Fraction

    def __post_init__(self):
        rows = tuple(tuple(int(b) for b in row) for row in self.enumerator)
        if not rows or not rows[0] or rows[0][0] != 1:
            raise InputError('B(x, y) must have B_{0,0} = 1')
        if any(b < 0 for row in rows for b in row):
            raise InputError('B(x, y) must have nonnegative coefficients')
        object.__setattr__(self, 'enumerator', rows)

    def items(self):
        return [((u, v), b) for u, row in enumerate(self.enumerator) for v, b in enumerate(row) if b]


@dataclass(frozen=True)
class BetaDistribution:
    """Maximizing distribution over the support of A(x)"""

    support: tuple
    weights: tuple
    log_coeffs: tuple = field(repr=False)
    multiplier: float = None

    def objective(self):
        """sum beta_i log(A_i / beta_i)"""
        return _entropy_objective(self.weights, self.log_coeffs)

    def mean(self):
        return sum(i * w for i, w in zip(self.support, self.weights))


@dataclass(frozen=True)
class EtaDistribution:
    """Maximizing distribution over the support S of B(x, y)"""

    support: tuple
    weights: tuple
    log_coeffs: tuple = field(repr=False)
    multipliers: tuple = None

    def objective(self):
        return _entropy_objective(self.weights, self.log_coeffs)

    def means(self):
        xi = sum(i * w for (i, _), w in zip(self.support, self.weights))
        theta = sum(j * w for (_, j), w in zip(self.support, self.weights))
        return xi, theta

    def as_dict(self):
        return dict(zip(self.support, self.weights))


def _entropy_objective(weights, log_coeffs):
    return float(sum(w * (lc - math.log(w)) for w, lc in zip(weights, log_coeffs) if w > 0))


def _log(count):
    return math.log(count)


# ---------------------------------------------------------------------------
# 1-D dual

def _softmax(z):
    return np.exp(z - special.logsumexp(z))


def _legendre_1d(terms, target):
    """
    Solve max sum_t w_t sum_k beta_tk log(a_tk / beta_tk) subject to each
    beta_t on the simplex and sum_t w_t sum_k p_tk beta_tk = target.

    terms is a list of (w, positions, log_coeffs). Returns
    (value, multiplier, [beta_t]); the multiplier is None on a vertex.
    """
    lo = sum(w * positions.min() for w, positions, _ in terms)
    hi = sum(w * positions.max() for w, positions, _ in terms)
    tol = FACE_TOL * max(1.0, abs(lo), abs(hi))
    if target < lo - tol or target > hi + tol:
        raise InfeasibleRatioError(
            f'target {target} outside feasible range [{lo}, {hi}]', feasible_range=[float(lo), float(hi)]
        )

    # Vertex: every term sits on its extreme positions
    if target <= lo + tol or target >= hi - tol:
        pick = np.argmin if target <= lo + tol else np.argmax
        value = 0.0
        dists = []
        for w, positions, log_coeffs in terms:
            extreme = positions[pick(positions)]
            on_face = np.isclose(positions, extreme, rtol=0, atol=1e-12)
            face_lse = special.logsumexp(log_coeffs[on_face])
            dist = np.zeros_like(log_coeffs)
            dist[on_face] = np.exp(log_coeffs[on_face] - face_lse)
            value += w * face_lse
            dists.append(dist)
        return float(value), None, dists

    def excess(mu):
        return sum(w * (_softmax(log_coeffs + mu * positions) @ positions) for w, positions, log_coeffs in terms) - target

    # Expand the bracket until the tilted mean straddles the target
    left, right = -1.0, 1.0
    while excess(left) > 0:
        left *= 2.0
        if left < -1e6:
            raise ConvergenceError('1-D dual bracket did not close', diagnostics={'target': target})
    while excess(right) < 0:
        right *= 2.0
        if right > 1e6:
            raise ConvergenceError('1-D dual bracket did not close', diagnostics={'target': target})

    mu = optimize.brentq(excess, left, right, xtol=1e-15, maxiter=500)
    value = sum(w * special.logsumexp(log_coeffs + mu * positions) for w, positions, log_coeffs in terms) - mu * target
    dists = [_softmax(log_coeffs + mu * positions) for _, positions, log_coeffs in terms]
    return float(value), float(mu), dists


def coeff_growth_1d(query):
    """
    lim (1/l) log Coeff[A(x)^l, x^(xi l)] as the maximum entropy value.

    Returns (value, BetaDistribution). xi in {0, d} gives the vertex
    distribution.
    """
    support = [u for u, a in enumerate(query.enumerator) if a]
    degree = query.degree
    xi = float(query.xi)
    if xi < 0 or xi > degree:
        raise InfeasibleRatioError(f'xi={query.xi} outside [0, {degree}]', feasible_range=[0, degree])
    positions = np.array(support, dtype=float)
    log_coeffs = np.array([_log(query.enumerator[u]) for u in support])
    value, mu, (dist,) = _legendre_1d([(1.0, positions, log_coeffs)], xi)
    beta = BetaDistribution(
        support=tuple(support),
        weights=tuple(float(w) for w in dist),
        log_coeffs=tuple(float(lc) for lc in log_coeffs),
        multiplier=mu,
    )
    return value, beta


def small_xi_expansion_1d(A_c, c, xi):
    """(xi/c) log(e c A_c / xi), the small-xi form of the 1-D growth"""
    if A_c <= 0 or c < 1 or xi < 0:
        raise InputError('expansion needs A_c > 0, c >= 1 and xi >= 0')
    if xi == 0:
        return 0.0
    xi = float(xi)
    return (xi / c) * (1.0 + math.log(c * A_c / xi))


# ---------------------------------------------------------------------------
# 2-D dual

def _term_extremes(points):
    """Hull vertices of one term's support (all points when degenerate)"""
    if len(points) >= 3 and np.linalg.matrix_rank(points - points[0]) == 2:
        return points[spatial.ConvexHull(points).vertices]
    return np.unique(points, axis=0)


def _minkowski_vertices(terms):
    total = np.zeros((1, 2))
    for w, points, _ in terms:
        extremes = w * _term_extremes(points)
        total = (total[:, None, :] + extremes[None, :, :]).reshape(-1, 2)
        total = _term_extremes(total)
    return total


def _dual_2d(terms, target, theta):
    value = -theta @ target
    grad = -target.copy()
    hess = np.zeros((2, 2))
    dists = []
    for w, points, log_coeffs in terms:
        z = log_coeffs + points @ theta
        lse = special.logsumexp(z)
        prob = np.exp(z - lse)
        mean = prob @ points
        second = (points * prob[:, None]).T @ points
        value += w * lse
        grad += w * mean
        hess += w * (second - np.outer(mean, mean))
        dists.append(prob)
    return value, grad, hess, dists


def _newton_2d(terms, target):
    """Damped Newton on the convex dual; full steps once the Newton decrement is small"""
    theta = np.zeros(2)
    value, grad, hess, dists = _dual_2d(terms, target, theta)
    iteration = 0
    while np.abs(grad).max() > GRADIENT_TOL and iteration < MAX_NEWTON_STEPS:
        iteration += 1
        try:
            step = -np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            step = -np.linalg.lstsq(hess, grad, rcond=None)[0]
        decrement = -grad @ step
        if not decrement > 0:
            step, decrement = -grad, grad @ grad

        t = 1.0
        if decrement > PURE_NEWTON_DECREMENT:
            # Backtracking line search
            while t >= 1e-12:
                candidate = theta + t * step
                cand = _dual_2d(terms, target, candidate)
                if cand[0] <= value - 1e-4 * t * decrement:
                    break
                t /= 2.0
            else:
                break
        else:
            candidate = theta + step
            cand = _dual_2d(terms, target, candidate)

        theta = candidate
        value, grad, hess, dists = cand
        if np.abs(theta).max() > MAX_MULTIPLIER:
            raise InfeasibleRatioError(f'dual unbounded at target {tuple(target)}', feasible_range=None)

    residual = float(np.abs(grad).max())
    if residual > MOMENT_TOL:
        raise ConvergenceError(
            'two-dimensional dual did not converge',
            diagnostics={'iterations': iteration, 'moment_residual': residual, 'target': target.tolist()},
        )
    logger.debug('2-D dual converged in %d iterations at %s', iteration, target)
    return float(value), theta, dists


def _legendre_2d(terms, target):
    """
    Solve max sum_t w_t sum_k eta_tk log(b_tk / eta_tk) over simplices with
    sum_t w_t sum_k (i, j)_tk eta_tk = target.

    terms is a list of (w, points (K x 2), log_coeffs), every support
    containing the origin. Returns (value, multipliers or None, [eta_t]).
    """
    target = np.asarray(target, dtype=float)
    stacked = np.vstack([points for _, points, _ in terms])
    rank = np.linalg.matrix_rank(stacked) if stacked.any() else 0
    scale = 1.0 + np.abs(stacked).max()

    if rank == 0:
        if np.abs(target).max() > FACE_TOL:
            raise InfeasibleRatioError('support is the origin only', feasible_range=[[0, 0]])
        return _legendre_1d([(w, points[:, 0], lc) for w, points, lc in terms], 0.0)

    if rank == 1:
        # Collinear support: reduce to 1-D along the common direction
        direction = stacked[np.abs(stacked).sum(axis=1).argmax()]
        cross = target[0] * direction[1] - target[1] * direction[0]
        if abs(cross) > FACE_TOL * scale * scale:
            raise InfeasibleRatioError(
                f'target {tuple(target)} is off the support line through {tuple(direction)}',
                feasible_range={'direction': direction.tolist()},
            )
        norm = direction @ direction
        reduced = [(w, points @ direction / norm, lc) for w, points, lc in terms]
        value, mu, dists = _legendre_1d(reduced, float(target @ direction / norm))
        multipliers = None if mu is None else tuple(mu * direction / norm)
        return value, multipliers, dists

    vertices = _minkowski_vertices(terms)
    hull = spatial.ConvexHull(vertices)
    margins = hull.equations[:, :2] @ target + hull.equations[:, 2]
    worst = int(margins.argmax())
    if margins[worst] > FACE_TOL * scale:
        raise InfeasibleRatioError(
            f'target {tuple(target)} outside the support hull',
            feasible_range={'hull_vertices': vertices[hull.vertices].tolist()},
        )
    if margins[worst] >= -FACE_TOL * scale:
        # On a face: only the face points of each term carry mass
        normal = hull.equations[worst, :2]
        tangent = np.array([-normal[1], normal[0]])
        reduced = []
        masks = []
        for w, points, log_coeffs in terms:
            heights = points @ normal
            mask = heights >= heights.max() - FACE_TOL * scale
            masks.append(mask)
            reduced.append((w, points[mask] @ tangent, log_coeffs[mask]))
        value, _, face_dists = _legendre_1d(reduced, float(target @ tangent))
        dists = []
        for (w, points, log_coeffs), mask, face_dist in zip(terms, masks, face_dists):
            dist = np.zeros(len(points))
            dist[mask] = face_dist
            dists.append(dist)
        return value, None, dists

    value, theta, dists = _newton_2d(terms, target)
    return value, tuple(float(t) for t in theta), dists


def coeff_growth_2d(query):
    """
    lim (1/l) log Coeff[B(x,y)^l, x^(xi l) y^(theta l)] as the maximum
    entropy value. Returns (value, EtaDistribution).
    """
    items = query.items()
    points = np.array([point for point, _ in items], dtype=float)
    log_coeffs = np.array([_log(b) for _, b in items])
    value, multipliers, (dist,) = _legendre_2d(
        [(1.0, points, log_coeffs)], (float(query.xi), float(query.theta))
    )
    eta = EtaDistribution(
        support=tuple(point for point, _ in items),
        weights=tuple(float(w) for w in dist),
        log_coeffs=tuple(float(lc) for lc in log_coeffs),
        multipliers=multipliers,
    )
    return value, eta


# ---------------------------------------------------------------------------
# Exact coefficient oracle

def truncated_power(terms, exponent, limits, start=None):
    """
    start * (sum of terms)^exponent, truncated to index <= limits per axis.

    terms is a list of (index tuple, int coefficient). The power is built by
    successive multiplication with the sparse base, on numpy object arrays
    of exact Python ints.
    """
    shape = tuple(limit + 1 for limit in limits)
    if start is None:
        acc = np.zeros(shape, dtype=object)
        acc[(0,) * len(shape)] = 1
        reach = [0] * len(shape)
    else:
        acc, reach = start
    max_offsets = [max(index[axis] for index, _ in terms) for axis in range(len(shape))]

    for _ in range(exponent):
        new = np.zeros(shape, dtype=object)
        for index, coeff in terms:
            if any(o > limit for o, limit in zip(index, limits)):
                continue
            spans = [min(r, limit - o) for r, o, limit in zip(reach, index, limits)]
            src = tuple(slice(0, span + 1) for span in spans)
            dst = tuple(slice(o, o + span + 1) for o, span in zip(index, spans))
            new[dst] += acc[src] if coeff == 1 else coeff * acc[src]
        acc = new
        reach = [min(r + m, limit) for r, m, limit in zip(reach, max_offsets, limits)]
    return acc, reach


def _check_power_capacity(exponent, degree):
    limit = int(app_setting('POWER_DEGREE_LIMIT'))
    if exponent * degree > limit:
        raise CapacityError(
            f'power degree {exponent}*{degree} exceeds the oracle limit {limit}',
            limit=limit,
            advisory='Lower ell or raise DGLDPC_POWER_DEGREE_LIMIT.',
        )


def exact_coeff_power_1d(A, ell, w):
    """Exact Coeff[A(x)^ell, x^w]"""
    coeffs = [int(a) for a in A]
    degree = max((u for u, a in enumerate(coeffs) if a), default=0)
    if ell < 1:
        raise InputError(f'ell must be >= 1, got {ell}')
    if not 0 <= w <= ell * degree:
        raise InputError(f'w={w} outside [0, {ell * degree}]')
    _check_power_capacity(ell, degree)
    terms = [((u,), a) for u, a in enumerate(coeffs) if a]
    acc, _ = truncated_power(terms, ell, (w,))
    return int(acc[w])


def exact_coeff_power_2d(B, ell, u, v):
    """Exact Coeff[B(x,y)^ell, x^u y^v]"""
    terms = [((i, j), int(b)) for i, row in enumerate(B) for j, b in enumerate(row) if b]
    if ell < 1:
        raise InputError(f'ell must be >= 1, got {ell}')
    max_i = max(i for (i, _), _ in terms)
    max_j = max(j for (_, j), _ in terms)
    if not (0 <= u <= ell * max_i and 0 <= v <= ell * max_j):
        raise InputError(f'(u, v)=({u}, {v}) outside [0, {ell * max_i}] x [0, {ell * max_j}]')
    _check_power_capacity(ell, max(i + j for (i, j), _ in terms))
    acc, _ = truncated_power(terms, ell, (u, v))
    return int(acc[u, v])


# ---------------------------------------------------------------------------
# Ensemble growth exponents

def _cn_terms(ensemble):
    terms = []
    for cn in ensemble.cn_types:
        support = cn.enumerator.support()
        terms.append((
            float(ensemble.gamma[cn.id]),
            np.array(support, dtype=float),
            np.array([_log(cn.enumerator[u]) for u in support]),
        ))
    return terms


def _vn_terms(ensemble):
    terms = []
    for vn in ensemble.vn_types:
        items = vn.io_enumerator.items()
        terms.append((
            float(ensemble.delta[vn.id]),
            np.array([point for point, _ in items], dtype=float),
            np.array([_log(b) for _, b in items]),
        ))
    return terms


def max_check_ratio(ensemble):
    """Largest check-valid assignment weight per CN: sum gamma_t deg A_t"""
    return sum((ensemble.gamma[cn.id] * cn.enumerator.support()[-1] for cn in ensemble.cn_types), Fraction(0))


def check_side_growth(ensemble, delta):
    """
    lim (1/m) log N_c(delta m), the growth of check-valid assignments.

    Computed twice and cross-checked: (a) the epsilon-partition over CN types
    found by bisection on the common multiplier, each type then solved on
    its own; (b) the dual of the mixture prod_t A_t^gamma_t.
    """
    delta = float(delta)
    delta_max = float(max_check_ratio(ensemble))
    if delta < 0 or delta > delta_max * (1 + FACE_TOL):
        raise InfeasibleRatioError(f'delta={delta} outside [0, {delta_max}]', feasible_range=[0.0, delta_max])
    if delta == 0:
        return 0.0

    terms = _cn_terms(ensemble)
    mixture_value, mu, _ = _legendre_1d(terms, delta)

    # (a) common-multiplier partition of delta into epsilon_t
    if mu is None:
        epsilons = [gamma * positions.max() for gamma, positions, _ in terms]
    else:
        def excess(m):
            return sum(g * (_softmax(lc + m * pos) @ pos) for g, pos, lc in terms) - delta

        left, right = mu - 1.0, mu + 1.0
        while excess(left) > 0:
            left -= 2.0 * (right - left)
        while excess(right) < 0:
            right += 2.0 * (right - left)
        common = optimize.bisect(excess, left, right, xtol=1e-14, maxiter=200)
        epsilons = [g * (_softmax(lc + common * pos) @ pos) for g, pos, lc in terms]

    partition_value = 0.0
    for (gamma, positions, log_coeffs), epsilon in zip(terms, epsilons):
        value, _, _ = _legendre_1d([(1.0, positions, log_coeffs)], float(epsilon / gamma))
        partition_value += gamma * value

    if abs(partition_value - mixture_value) > 1e-9 * max(1.0, abs(mixture_value)):
        raise ConvergenceError(
            'check-side partition and mixture duals disagree',
            diagnostics={'partition': partition_value, 'mixture': mixture_value, 'delta': delta},
        )
    return mixture_value


def check_side_expansion(ensemble, delta, params=None):
    """Small-delta form (delta/r) log(e C / (delta int_rho))"""
    if delta == 0:
        return 0.0
    params = params or spectral_params(ensemble)
    delta = float(delta)
    return (delta / params.r) * (1.0 + math.log(float(params.C) / (delta * float(ensemble.int_rho))))


def binomial_growth(tau, sigma):
    """lim (1/n) log binom(tau n, sigma n) = tau h(sigma / tau) in nats"""
    tau, sigma = float(tau), float(sigma)
    if sigma < 0 or sigma > tau:
        raise InfeasibleRatioError(f'sigma={sigma} outside [0, {tau}]', feasible_range=[0.0, tau])
    if sigma == 0 or sigma == tau:
        return 0.0
    p = sigma / tau
    return tau * (-p * math.log(p) - (1 - p) * math.log1p(-p))


def binomial_growth_expansion(tau, sigma):
    """Stirling small-sigma form sigma log(e tau / sigma)"""
    if sigma == 0:
        return 0.0
    return float(sigma) * (1.0 + math.log(float(tau) / float(sigma)))


def p_valid_exponent(ensemble, beta):
    """
    Y(beta) = lim (1/n) log P_valid(beta n): check-valid assignments over
    all assignments of the same weight.
    """
    int_rho, int_lambda = float(ensemble.int_rho), float(ensemble.int_lambda)
    return (int_rho / int_lambda) * check_side_growth(ensemble, beta * int_lambda / int_rho) - binomial_growth(
        1 / int_lambda, beta
    )


def p_valid_exponent_expansion(ensemble, beta, params=None):
    """(beta/r) log(e C / (beta int_lambda)) - beta log(e / (beta int_lambda))"""
    if beta == 0:
        return 0.0
    params = params or spectral_params(ensemble)
    beta, int_lambda = float(beta), float(ensemble.int_lambda)
    return (beta / params.r) * (1.0 + math.log(float(params.C) / (beta * int_lambda))) - beta * (
        1.0 + math.log(1.0 / (beta * int_lambda))
    )


def vn_side_growth(ensemble, alpha, beta, terms=None):
    """
    lim (1/n) log Coeff[prod_t B_t^(delta_t n), x^(alpha n) y^(beta n)],
    maximized jointly over the partitions (alpha_t, beta_t) and the
    eta distributions. Returns (value, multipliers, [eta_t]).
    """
    if terms is None:
        terms = _vn_terms(ensemble)
    return _legendre_2d(terms, (float(alpha), float(beta)))


@dataclass(frozen=True)
class GrowthRateResult:
    alpha: float
    value: float
    beta: float
    beta_range: tuple
    beta_ratio_range: tuple
    etas: dict
    deltas: dict
    alpha_parts: dict
    beta_parts: dict

    def higher_weight_mass(self):
        """sum_t delta_t sum_{j > 2} eta_t(i, j)"""
        return sum(
            self.deltas[t] * sum(w for (_, j), w in eta.items() if j > 2) for t, eta in self.etas.items()
        )

    def k2(self):
        """K_2(nu) = z(nu)/2 - sum nu with nu = delta_t eta / alpha on the nonzero support"""
        if self.alpha == 0:
            return 0.0
        total = 0.0
        z = 0.0
        for t, eta in self.etas.items():
            for (i, j), w in eta.items():
                if (i, j) != (0, 0):
                    nu = self.deltas[t] * w / self.alpha
                    total += nu
                    z += j * nu
        return z / 2 - total

    def fringe_term(self):
        """sum_t delta_t F_t(eta_t), F_t = eta_00 log(1/eta_00) - sum_{S-} eta"""
        total = 0.0
        for t, eta in self.etas.items():
            eta00 = eta.get((0, 0), 0.0)
            rest = sum(w for point, w in eta.items() if point != (0, 0))
            value = -eta00 * math.log(eta00) if eta00 > 0 else 0.0
            total += self.deltas[t] * (value - rest)
        return total


def fringe_bound_constant(ensemble):
    """Constant k with |sum_t delta_t F_t| <= k alpha^2 while each alpha_t <= delta_t / 2"""
    return max(float(1 / delta) for delta in ensemble.delta.values())


def beta_ratio_range(ensemble):
    """[min j/i, max j/i] over the nonzero VN supports"""
    ratios = [
        Fraction(j, i) for vn in ensemble.vn_types for (i, j), _ in vn.io_enumerator.items() if i > 0
    ]
    return min(ratios), max(ratios)


def _beta_bounds(ensemble, alpha, terms):
    """Feasible beta interval at alpha for the VN mixture, by linear programming"""
    costs, rows_alpha, rows_type = [], [], []
    for t, (w, points, _) in enumerate(terms):
        for i, j in points:
            costs.append(j)
            rows_alpha.append(i)
            rows_type.append(t)
    costs = np.array(costs)
    a_eq = np.zeros((len(terms) + 1, len(costs)))
    for col, t in enumerate(rows_type):
        a_eq[t, col] = 1.0
    a_eq[-1] = rows_alpha
    b_eq = np.array([w for w, _, _ in terms] + [alpha])
    bounds = []
    for sign in (1.0, -1.0):
        res = optimize.linprog(sign * costs, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method='highs')
        if res.status != 0:
            raise InfeasibleRatioError(
                f'alpha={alpha} infeasible for the VN types', feasible_range=[0.0, float(ensemble.max_alpha())]
            )
        bounds.append(sign * res.fun)
    return bounds[0], bounds[1]


def growth_rate_general(ensemble, alpha):
    """
    G(alpha): max over beta of the VN-side growth (joint over partitions and
    eta), plus the check-side growth, minus the exact entropy exponent of
    binom(E, beta n).

    The outer search runs over the logit of beta within its feasible
    interval: a grid scan, then bounded golden-section/Brent refinement.
    """
    alpha = float(alpha)
    alpha_max = float(ensemble.max_alpha())
    if alpha < 0 or alpha >= alpha_max:
        raise InfeasibleRatioError(
            f'alpha={alpha} outside [0, {alpha_max})', feasible_range=[0.0, alpha_max]
        )
    ratio_lo, ratio_hi = beta_ratio_range(ensemble)
    ratio_range = (float(ratio_lo), float(ratio_hi))
    deltas = {vn.id: float(ensemble.delta[vn.id]) for vn in ensemble.vn_types}
    if alpha == 0:
        etas = {vn.id: {(0, 0): 1.0} for vn in ensemble.vn_types}
        zeros = {vn.id: 0.0 for vn in ensemble.vn_types}
        return GrowthRateResult(0.0, 0.0, 0.0, (0.0, 0.0), ratio_range, etas, deltas, zeros, dict(zeros))

    int_rho, int_lambda = float(ensemble.int_rho), float(ensemble.int_lambda)
    check_terms = _cn_terms(ensemble)
    vn_terms = _vn_terms(ensemble)
    delta_max = float(max_check_ratio(ensemble))

    beta_lo, beta_hi = _beta_bounds(ensemble, alpha, vn_terms)
    beta_hi = min(beta_hi, 1.0 / int_lambda, delta_max * int_rho / int_lambda)
    if beta_hi < beta_lo - 1e-15:
        raise InfeasibleRatioError(
            f'alpha={alpha}: no assignment weight is feasible on both sides', feasible_range=[0.0, alpha_max]
        )

    def objective(beta):
        vn_value, _, _ = vn_side_growth(ensemble, alpha, beta, vn_terms)
        check_value, _, _ = _legendre_1d(check_terms, beta * int_lambda / int_rho)
        return vn_value + (int_rho / int_lambda) * check_value - binomial_growth(1.0 / int_lambda, beta)

    width = beta_hi - beta_lo
    if width <= 1e-12 * max(1.0, beta_hi):
        best_beta = beta_lo
    else:
        def beta_at(t):
            return beta_lo + width * special.expit(t)

        def safe(t):
            try:
                value = objective(beta_at(t))
            except (InfeasibleRatioError, ConvergenceError):
                return -np.inf
            return value if np.isfinite(value) else -np.inf

        grid = np.linspace(-30.0, 30.0, 121)
        scores = np.array([safe(t) for t in grid])
        if not np.isfinite(scores).any():
            raise ConvergenceError('outer beta search found no finite objective', diagnostics={'alpha': alpha})
        k = int(scores.argmax())
        lower, upper = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
        res = optimize.minimize_scalar(
            lambda t: -safe(t), bounds=(lower, upper), method='bounded', options={'xatol': 1e-10}
        )
        best_t = res.x if -res.fun >= scores[k] else grid[k]
        best_value = max(-res.fun, scores[k])
        # Local optimality check around the refined point
        for neighbour in (best_t - 1e-3, best_t + 1e-3):
            if safe(neighbour) > best_value + OUTER_TOL:
                raise ConvergenceError(
                    'outer beta search did not reach tolerance',
                    diagnostics={'alpha': alpha, 't': float(best_t), 'value': best_value, 'neighbour': float(neighbour)},
                )
        best_beta = beta_at(best_t)

    value = objective(best_beta)
    _, _, dists = vn_side_growth(ensemble, alpha, best_beta, vn_terms)
    etas, alpha_parts, beta_parts = {}, {}, {}
    for vn, (w, points, _), dist in zip(ensemble.vn_types, vn_terms, dists):
        etas[vn.id] = {(int(i), int(j)): float(p) for (i, j), p in zip(points, dist)}
        alpha_parts[vn.id] = float(w * (dist @ points[:, 0]))
        beta_parts[vn.id] = float(w * (dist @ points[:, 1]))

    logger.debug('G(%g) = %.12g at beta=%.12g in [%g, %g]', alpha, value, best_beta, beta_lo, beta_hi)
    return GrowthRateResult(
        alpha=alpha,
        value=float(value),
        beta=float(best_beta),
        beta_range=(float(beta_lo), float(beta_hi)),
        beta_ratio_range=ratio_range,
        etas=etas,
        deltas=deltas,
        alpha_parts=alpha_parts,
        beta_parts=beta_parts,
    )
