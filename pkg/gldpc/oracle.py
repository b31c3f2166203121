"""
Finite-length ground truth for the ensemble weight spectrum.

expected_spectrum counts split assignments with generating functions over
the edge-permutation ensemble; brute_force_spectrum builds every permuted
Tanner graph and enumerates its codewords; sample_spectrum draws permutations
at random. All three index codewords by their information (VN input) weight.
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import special

from .asymptotics import truncated_power
from .codes import gf2_nullspace, parity_check_rows
from .conf import app_setting
from .ensemble import as_fraction, instance_dims
from .exceptions import (
    CapacityError,
    EmptySequenceError,
    InputError,
    NonIntegralInstanceError,
    SeedRequiredError,
)

logger = logging.getLogger(__name__)

EXACT_GF = 'exact-gf'
BRUTE_FORCE = 'brute-force'
MONTE_CARLO = 'monte-carlo'


def log_fraction(value):
    """Natural log of a nonnegative rational of any size; -inf at 0"""
    if value == 0:
        return -math.inf
    return math.log(value.numerator) - math.log(value.denominator)


@dataclass(frozen=True)
class SpectrumReport:
    """
    Expected weight spectrum E[N_w] for w = 0..wmax of one instance size.
    With log_domain set, values holds natural logs of E[N_w].
    """

    n: int
    weights: tuple
    values: tuple
    method: str
    std_errors: tuple = None
    split_table: dict = field(default=None, repr=False)
    trials: int = None
    seed: int = None
    log_domain: bool = False

    def value(self, w):
        return self.values[self.weights.index(w)]

    def log_values(self):
        """Natural-log values; exact rationals never overflow here"""
        if self.log_domain:
            return self.values
        out = []
        for value in self.values:
            if isinstance(value, Fraction):
                out.append(log_fraction(value))
            else:
                out.append(math.log(value) if value > 0 else -math.inf)
        return tuple(out)


# ---------------------------------------------------------------------------
# Generating-function counting

def _cn_product(ensemble, dims, vmax):
    """N_c(v) for v = 0..vmax as exact ints: Coeff[prod_t A_t^{count_t}, x^v]"""
    state = None
    for cn, count in zip(ensemble.cn_types, dims.cn_counts):
        terms = [((u,), a) for u, a in enumerate(cn.enumerator.coeffs) if a]
        state = truncated_power(terms, count, (vmax,), start=state)
    acc, _ = state
    return [int(c) for c in acc]


def _vn_product(ensemble, dims, umax):
    """Coeff[prod_t B_t^{vncount_t}, x^u y^v] for u <= umax, v <= E"""
    state = None
    for vn, count in zip(ensemble.vn_types, dims.vn_counts):
        terms = list(vn.io_enumerator.items())
        state = truncated_power(terms, count, (umax, dims.E), start=state)
    acc, _ = state
    return acc


def check_valid_count(ensemble, n, v):
    """Exact number of check-valid assignments of weight v"""
    dims = instance_dims(ensemble, n)
    if not 0 <= v <= dims.E:
        raise InputError(f'v={v} outside [0, E={dims.E}]')
    return _cn_product(ensemble, dims, v)[v]


def p_valid(ensemble, n, v):
    """Probability that a uniformly chosen weight-v assignment is check-valid"""
    dims = instance_dims(ensemble, n)
    if not 0 <= v <= dims.E:
        raise InputError(f'v={v} outside [0, E={dims.E}]')
    return Fraction(_cn_product(ensemble, dims, v)[v], math.comb(dims.E, v))


def _p_valid_table(ensemble, dims):
    counts = _cn_product(ensemble, dims, dims.E)
    return [Fraction(count, math.comb(dims.E, v)) for v, count in enumerate(counts)]


def _max_feasible_n(ensemble, limit):
    """Largest valid n whose (N+1)(E+1) spectrum table fits within limit"""
    period = ensemble.period()
    best = None
    n = period
    while True:
        cells = (n * ensemble.max_alpha() + 1) * (n / ensemble.int_lambda + 1)
        if cells > limit:
            return best
        best = n
        n += period


def _v_chunks(E, workers):
    size = -(-(E + 1) // workers)
    return [range(start, min(start + size, E + 1)) for start in range(0, E + 1, size)]


def _map_chunks(work, chunks):
    """work applied to each chunk of v, results in chunk order"""
    if len(chunks) == 1:
        return [work(chunks[0])]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        return list(pool.map(work, chunks))


def _exact_terms(table, pv, columns):
    """Per u, {v: count(u, v) * p_valid(v)} over the v in columns"""
    rows = []
    for u in range(table.shape[0]):
        row = {}
        for v in columns:
            count = table[u, v]
            if count and pv[v]:
                row[v] = count * pv[v]
        rows.append(row)
    return rows


def _log_terms(table, log_pv, columns):
    """log(count(u, v) * p_valid(v)) over the v in columns; -inf where zero"""
    out = np.full((table.shape[0], len(columns)), -np.inf)
    for u in range(table.shape[0]):
        for k, v in enumerate(columns):
            count = table[u, v]
            if count and log_pv[v] > -math.inf:
                out[u, k] = math.log(count) + log_pv[v]
    return out


def expected_spectrum(ensemble, n, with_splits=False):
    """
    E[N_u] for u = 0..N:
    sum_v Coeff[prod_t B_t^{vncount_t}, x^u y^v] * N_c(v) / binom(E, v).

    Exact rationals while the (N+1)(E+1) table fits EXACT_SPECTRUM_MAX_CELLS;
    past it the v-sum runs in log domain (logsumexp, values are natural logs)
    up to the LOG_SPECTRUM_MAX_CELLS ceiling. The v range is split across
    SPECTRUM_WORKERS threads and reduced in v order.
    """
    dims = instance_dims(ensemble, n)
    exact_limit = int(app_setting('EXACT_SPECTRUM_MAX_CELLS'))
    log_limit = int(app_setting('LOG_SPECTRUM_MAX_CELLS'))
    cells = (dims.N + 1) * (dims.E + 1)
    ceiling = max(exact_limit, log_limit)
    if cells > ceiling:
        raise CapacityError(
            f'spectrum at n={n} needs {cells} cells, limit is {ceiling}',
            limit=ceiling,
            advisory=f'largest feasible n is {_max_feasible_n(ensemble, ceiling)}; use --sample beyond it',
        )
    log_domain = cells > exact_limit
    if log_domain:
        logger.info('Spectrum n=%d needs %d cells, past the exact limit %d: using log domain', n, cells, exact_limit)

    pv = _p_valid_table(ensemble, dims)
    table = _vn_product(ensemble, dims, dims.N)
    chunks = _v_chunks(dims.E, max(1, int(app_setting('SPECTRUM_WORKERS'))))
    splits = None
    if log_domain:
        log_pv = [log_fraction(p) for p in pv]
        terms = np.hstack(_map_chunks(lambda columns: _log_terms(table, log_pv, columns), chunks))
        with np.errstate(divide='ignore'):
            values = tuple(float(value) for value in special.logsumexp(terms, axis=1))
        if with_splits:
            splits = {}
            for u, row in enumerate(terms):
                entries = {v: float(t) for v, t in enumerate(row) if t > -math.inf}
                if entries:
                    splits[u] = entries
    else:
        parts = _map_chunks(lambda columns: _exact_terms(table, pv, columns), chunks)
        rows = [{v: term for part in parts for v, term in part[u].items()} for u in range(dims.N + 1)]
        values = tuple(sum(row.values(), Fraction(0)) for row in rows)
        if with_splits:
            splits = {u: row for u, row in enumerate(rows) if row}
    logger.debug('Spectrum n=%d: N=%d E=%d log_domain=%s', n, dims.N, dims.E, log_domain)
    return SpectrumReport(
        n=n,
        weights=tuple(range(dims.N + 1)),
        values=values,
        method=EXACT_GF,
        split_table=splits,
        log_domain=log_domain,
    )


def expected_weight_count(ensemble, n, w):
    """Exact E[N_w] for a single weight, with the VN product truncated at x^w"""
    dims = instance_dims(ensemble, n)
    if not 0 <= w <= dims.N:
        raise InputError(f'w={w} outside [0, N={dims.N}]')
    pv = _p_valid_table(ensemble, dims)
    table = _vn_product(ensemble, dims, w)
    return sum((table[w, v] * pv[v] for v in range(dims.E + 1) if table[w, v]), Fraction(0))


# ---------------------------------------------------------------------------
# Concrete Tanner graphs

class TannerGraph:
    """
    One member of the ensemble: VN sockets (ordered by node, then position)
    wired to CN sockets by a permutation on the E edges.

    Information bits are numbered node by node; column_masks[i] is the set
    of edges (ints over E bits, in CN-socket order) that info bit i drives.
    """

    def __init__(self, ensemble, dims, permutation):
        self.N = dims.N
        self.E = dims.E
        edge_sources = [0] * dims.E  # CN socket -> info-bit mask
        info_offset = 0
        socket = 0
        for vn, count in zip(ensemble.vn_types, dims.vn_counts):
            for _ in range(count):
                for position in range(vn.q):
                    mask = 0
                    for bit, row in enumerate(vn.code.generator):
                        if (row >> position) & 1:
                            mask |= 1 << (info_offset + bit)
                    edge_sources[permutation[socket]] = mask
                    socket += 1
                info_offset += vn.k

        self.column_masks = [0] * dims.N
        for edge, mask in enumerate(edge_sources):
            for bit in range(dims.N):
                if (mask >> bit) & 1:
                    self.column_masks[bit] |= 1 << edge

        # CN parity checks, over edges and pulled back to info bits
        self.check_rows = []
        self.info_checks = []
        base = 0
        for cn, count in zip(ensemble.cn_types, dims.cn_counts):
            rows = parity_check_rows(cn.code)
            for _ in range(count):
                for row in rows:
                    edges = 0
                    info = 0
                    for position in range(cn.s):
                        if (row >> position) & 1:
                            edges |= 1 << (base + position)
                            info ^= edge_sources[base + position]
                    self.check_rows.append(edges)
                    self.info_checks.append(info)
                base += cn.s

    def edge_word(self, info):
        word = 0
        for bit in range(self.N):
            if (info >> bit) & 1:
                word ^= self.column_masks[bit]
        return word

    def is_check_valid(self, edge_word):
        return all((edge_word & row).bit_count() % 2 == 0 for row in self.check_rows)

    def kernel_basis(self):
        return gf2_nullspace(self.info_checks, self.N)

    def weight_counts(self, wmax=None):
        """Codewords per information weight, enumerating the code by Gray walk over its basis"""
        wmax = self.N if wmax is None else wmax
        basis = self.kernel_basis()
        counts = [0] * (wmax + 1)
        counts[0] = 1
        word = 0
        for step in range(1, 1 << len(basis)):
            word ^= basis[(step & -step).bit_length() - 1]
            weight = word.bit_count()
            if weight <= wmax:
                counts[weight] += 1
        return counts

    def bounded_weight_counts(self, wmax):
        """Codewords of weight <= wmax by walking VN inputs of bounded weight and testing check-validity"""
        counts = [0] * (wmax + 1)
        counts[0] = 1
        for weight in range(1, wmax + 1):
            for bits in itertools.combinations(range(self.N), weight):
                word = 0
                for bit in bits:
                    word ^= self.column_masks[bit]
                if self.is_check_valid(word):
                    counts[weight] += 1
        return counts


def brute_force_spectrum(ensemble, n):
    """Average of the true codeword spectrum over all E! permutations"""
    dims = instance_dims(ensemble, n)
    limit = int(app_setting('BRUTE_FORCE_MAX_EDGES'))
    if dims.E > limit:
        raise CapacityError(
            f'brute force over {dims.E}! permutations exceeds the limit E <= {limit}',
            limit=limit,
            advisory='Use the exact generating-function spectrum instead.',
        )
    totals = [0] * (dims.N + 1)
    count = 0
    for permutation in itertools.permutations(range(dims.E)):
        graph = TannerGraph(ensemble, dims, permutation)
        for w, c in enumerate(graph.weight_counts()):
            totals[w] += c
        count += 1
    return SpectrumReport(
        n=n,
        weights=tuple(range(dims.N + 1)),
        values=tuple(Fraction(total, count) for total in totals),
        method=BRUTE_FORCE,
    )


def _sample_trial(ensemble, dims, seed_seq, wmax, exhaustive):
    rng = np.random.Generator(np.random.Philox(seed_seq))
    permutation = rng.permutation(dims.E).tolist()
    graph = TannerGraph(ensemble, dims, permutation)
    if exhaustive:
        return graph.weight_counts(wmax)
    return graph.bounded_weight_counts(wmax)


def sample_spectrum(ensemble, n, trials, seed=None, wmax=None, reproducible=True):
    """
    Empirical E[N_w], w <= wmax, over `trials` uniformly drawn permutations.

    Each trial runs on its own Philox stream spawned from the seed, so the
    report does not depend on the number of workers.
    """
    dims = instance_dims(ensemble, n)
    if trials < 1:
        raise InputError(f'trials must be >= 1, got {trials}')
    wmax = dims.N if wmax is None else wmax
    if not 0 <= wmax <= dims.N:
        raise InputError(f'wmax={wmax} outside [0, N={dims.N}]')
    if seed is None:
        if reproducible:
            raise SeedRequiredError('A seed is required for reproducible sampling')
        seed = np.random.SeedSequence().entropy % (1 << 64)

    max_bits = int(app_setting('SAMPLE_MAX_INFO_BITS'))
    max_candidates = int(app_setting('SAMPLE_MAX_CANDIDATES'))
    # Code dimension is at least N - M, so exhaustive mode is safe when 2^N fits
    exhaustive = dims.N <= max_bits and (1 << dims.N) <= max_candidates
    if not exhaustive:
        bounded = sum(math.comb(dims.N, w) for w in range(wmax + 1))
        if bounded > max_candidates:
            raise CapacityError(
                f'{bounded} candidate inputs of weight <= {wmax} exceed the limit {max_candidates}',
                limit=max_candidates,
                advisory='Lower --wmax or n.',
            )

    children = np.random.SeedSequence(seed).spawn(trials)
    workers = max(1, int(app_setting('SAMPLE_WORKERS')))
    if workers == 1:
        rows = [_sample_trial(ensemble, dims, child, wmax, exhaustive) for child in children]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda child: _sample_trial(ensemble, dims, child, wmax, exhaustive), children))

    counts = np.array(rows, dtype=float)
    means = counts.mean(axis=0)
    if trials > 1:
        errors = counts.std(axis=0, ddof=1) / math.sqrt(trials)
    else:
        errors = np.zeros_like(means)
    logger.debug('Sampled %d codes at n=%d (exhaustive=%s)', trials, n, exhaustive)
    return SpectrumReport(
        n=n,
        weights=tuple(range(wmax + 1)),
        values=tuple(float(m) for m in means),
        method=MONTE_CARLO,
        std_errors=tuple(float(e) for e in errors),
        trials=trials,
        seed=int(seed),
    )


# ---------------------------------------------------------------------------
# Finite-length growth estimates

def growth_estimate(ensemble, alpha, n_list):
    """
    (n, (1/n) log E[N_{alpha n}]) over the admissible n of n_list: valid
    instance sizes with alpha n integral and a positive expectation.
    A float alpha is snapped to the nearest rational with a small denominator.
    """
    if isinstance(alpha, float):
        alpha = Fraction(alpha).limit_denominator()
    alpha = as_fraction(alpha)
    sequence = []
    for n in n_list:
        try:
            dims = instance_dims(ensemble, n)
        except NonIntegralInstanceError:
            logger.debug('growth_estimate: skipping n=%d (not a valid instance size)', n)
            continue
        w = alpha * n
        if w.denominator != 1 or not 0 <= w <= dims.N:
            continue
        value = expected_weight_count(ensemble, n, int(w))
        if value <= 0:
            continue
        sequence.append((n, log_fraction(value) / n))
    if not sequence:
        raise EmptySequenceError(f'no admissible n in {list(n_list)} for alpha={alpha}')
    return sequence


def extrapolate_growth(sequence):
    """
    Least-squares fit of a + b log(n)/n + c/n to the finite-length estimates;
    returns the limit a with the fit coefficients and R^2.
    """
    ns = np.array([n for n, _ in sequence], dtype=float)
    ys = np.array([y for _, y in sequence], dtype=float)
    if len(ns) < 2:
        raise EmptySequenceError('extrapolation needs at least two estimates')
    columns = [np.ones_like(ns), np.log(ns) / ns]
    if len(ns) >= 3:
        columns.append(1.0 / ns)
    design = np.column_stack(columns)
    coeffs, *_ = np.linalg.lstsq(design, ys, rcond=None)
    fitted = design @ coeffs
    spread = ((ys - ys.mean()) ** 2).sum()
    r_squared = 1.0 - ((ys - fitted) ** 2).sum() / spread if spread > 0 else 1.0
    return {'limit': float(coeffs[0]), 'coefficients': [float(c) for c in coeffs], 'r_squared': float(r_squared)}
