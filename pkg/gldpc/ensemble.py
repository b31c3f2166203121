"""
Irregular D-GLDPC ensembles: node-type tables, edge-perspective fractions
and the derived structural quantities (gamma, delta, integrals, instance
dimensions). All fractions are exact rationals.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .codes import io_weight_enumerator, weight_enumerator
from .exceptions import DegenerateTypeError, FractionSumError, InputError, NonIntegralInstanceError

logger = logging.getLogger(__name__)


def as_fraction(value):
    """Exact rational from a Fraction, int, (num, den) pair or decimal string"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f'Edge fraction {value!r} is not a rational number')
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, tuple) and len(value) == 2:
        return Fraction(value[0], value[1])
    if isinstance(value, float):
        # decimal text of the float, never its binary expansion
        return Fraction(repr(value))
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f'Edge fraction {value!r} is not a rational number') from exc


@dataclass(frozen=True)
class CNTypeSpec:
    """Check-node type t: an (s_t, h_t) code carrying a fraction rho_t of the edges"""

    id: int
    code: object
    rho: Fraction
    enumerator: object
    r_t: int

    @property
    def s(self):
        return self.code.n

    @property
    def h(self):
        return self.code.k


@dataclass(frozen=True)
class VNTypeSpec:
    """Variable-node type t: a (q_t, k_t) code carrying a fraction lambda_t of the edges"""

    id: int
    code: object
    lam: Fraction
    io_enumerator: object
    p_t: int

    @property
    def q(self):
        return self.code.n

    @property
    def k(self):
        return self.code.k


@dataclass(frozen=True)
class Ensemble:
    cn_types: tuple
    vn_types: tuple
    int_rho: Fraction
    int_lambda: Fraction
    gamma: dict
    delta: dict
    name: str = ''

    def lambda_poly(self):
        """Edge-perspective VN degree distribution as {exponent: coefficient}"""
        poly = {}
        for vn in self.vn_types:
            poly[vn.q - 1] = poly.get(vn.q - 1, Fraction(0)) + vn.lam
        return dict(sorted(poly.items()))

    def rho_poly(self):
        """Edge-perspective CN degree distribution as {exponent: coefficient}"""
        poly = {}
        for cn in self.cn_types:
            poly[cn.s - 1] = poly.get(cn.s - 1, Fraction(0)) + cn.rho
        return dict(sorted(poly.items()))

    def lambda_prime_zero(self):
        """lambda'(0): fraction of edges on length-2 VNs"""
        return sum((vn.lam for vn in self.vn_types if vn.q == 2), Fraction(0))

    def rho_prime_one(self):
        """rho'(1) = sum rho_t (s_t - 1)"""
        return sum((cn.rho * (cn.s - 1) for cn in self.cn_types), Fraction(0))

    def max_alpha(self):
        """Largest normalized codeword weight: N / n = sum delta_t k_t"""
        return sum((self.delta[vn.id] * vn.k for vn in self.vn_types), Fraction(0))

    def period(self):
        """Smallest n for which every node and edge count is an integer"""
        denominators = [(vn.lam / vn.q).denominator for vn in self.vn_types]
        denominators += [(cn.rho / cn.s).denominator for cn in self.cn_types]
        edges = math.lcm(*denominators)
        n = edges * self.int_lambda
        assert n.denominator == 1
        return int(n)

    def next_valid_n(self, n):
        """Smallest valid instance size that is >= n"""
        period = self.period()
        return max(1, -(-n // period)) * period

    def is_ldpc(self):
        return all(vn.code.is_repetition() for vn in self.vn_types) and all(
            cn.code.is_single_parity_check() for cn in self.cn_types
        )

    def has_repetition_vns(self):
        return all(vn.code.is_repetition() for vn in self.vn_types)


@dataclass(frozen=True)
class EnsembleInstanceDims:
    n: int
    E: int
    m: int
    N: int
    M: int
    vn_counts: tuple
    cn_counts: tuple


def _type_key(code):
    return (code.n, code.k, code.generator)


def build_ensemble(cn_specs, vn_specs, name=''):
    """
    Build and validate an ensemble.

    cn_specs / vn_specs are sequences of (LinearCode, edge fraction) pairs.
    """
    cn_specs = list(cn_specs)
    vn_specs = list(vn_specs)
    if not cn_specs or not vn_specs:
        raise InputError('An ensemble needs at least one CN type and one VN type')

    # Validate fractions
    cn_fracs = [as_fraction(frac) for _, frac in cn_specs]
    vn_fracs = [as_fraction(frac) for _, frac in vn_specs]
    for label, fracs in (('rho', cn_fracs), ('lambda', vn_fracs)):
        for t, frac in enumerate(fracs, start=1):
            if not 0 < frac <= 1:
                raise FractionSumError(f'{label}_{t} = {frac} must lie in (0, 1]')
        if sum(fracs) != 1:
            raise FractionSumError(f'Sum of {label} fractions is {sum(fracs)}, expected 1')

    # Reject duplicate (code, generator) types
    for label, specs in (('CN', cn_specs), ('VN', vn_specs)):
        seen = {}
        for t, (code, _) in enumerate(specs, start=1):
            key = _type_key(code)
            if key in seen:
                raise DegenerateTypeError(
                    f'{label} types {seen[key]} and {t} share code and generator {code}'
                )
            seen[key] = t

    cn_types = []
    for t, ((code, _), rho) in enumerate(zip(cn_specs, cn_fracs), start=1):
        enumerator = weight_enumerator(code)
        if code.k == code.n:
            logger.warning('CN type %d is the full space (h=s=%d) and imposes no constraint', t, code.n)
        cn_types.append(CNTypeSpec(id=t, code=code, rho=rho, enumerator=enumerator, r_t=enumerator.min_distance))

    vn_types = []
    for t, ((code, _), lam) in enumerate(zip(vn_specs, vn_fracs), start=1):
        io_enumerator = io_weight_enumerator(code)
        vn_types.append(VNTypeSpec(id=t, code=code, lam=lam, io_enumerator=io_enumerator, p_t=io_enumerator.min_distance))

    int_rho = sum((cn.rho / cn.s for cn in cn_types), Fraction(0))
    int_lambda = sum((vn.lam / vn.q for vn in vn_types), Fraction(0))
    gamma = {cn.id: cn.rho / (cn.s * int_rho) for cn in cn_types}
    delta = {vn.id: vn.lam / (vn.q * int_lambda) for vn in vn_types}

    return Ensemble(
        cn_types=tuple(cn_types),
        vn_types=tuple(vn_types),
        int_rho=int_rho,
        int_lambda=int_lambda,
        gamma=gamma,
        delta=delta,
        name=name,
    )


def instance_dims(ensemble, n):
    """Exact node, edge, length and check counts for an instance with n VNs"""
    if not isinstance(n, int) or n < 1:
        raise InputError(f'Instance size n must be a positive integer, got {n!r}')

    def reject(quantity, value):
        suggested = ensemble.next_valid_n(n)
        raise NonIntegralInstanceError(
            f'n={n} gives non-integral {quantity}={value}; smallest valid n >= {n} is {suggested}',
            quantity=quantity,
            suggested_n=suggested,
        )

    edges = n / ensemble.int_lambda
    if edges.denominator != 1:
        reject('E', edges)
    checks = edges * ensemble.int_rho
    if checks.denominator != 1:
        reject('m', checks)

    vn_counts = []
    for vn in ensemble.vn_types:
        count = edges * vn.lam / vn.q
        if count.denominator != 1:
            reject(f'vn_count[{vn.id}]', count)
        vn_counts.append(int(count))
    cn_counts = []
    for cn in ensemble.cn_types:
        count = edges * cn.rho / cn.s
        if count.denominator != 1:
            reject(f'cn_count[{cn.id}]', count)
        cn_counts.append(int(count))

    length = sum(count * vn.k for count, vn in zip(vn_counts, ensemble.vn_types))
    equations = sum(count * (cn.s - cn.h) for count, cn in zip(cn_counts, ensemble.cn_types))
    return EnsembleInstanceDims(
        n=n,
        E=int(edges),
        m=int(checks),
        N=length,
        M=equations,
        vn_counts=tuple(vn_counts),
        cn_counts=tuple(cn_counts),
    )


def design_rate(ensemble):
    """1 - M/N as an exact rational (independent of n)"""
    equations = sum((cn.rho * (cn.s - cn.h) / cn.s for cn in ensemble.cn_types), Fraction(0))
    length = sum((vn.lam * vn.k / vn.q for vn in ensemble.vn_types), Fraction(0))
    return 1 - equations / length
