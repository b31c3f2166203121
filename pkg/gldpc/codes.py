"""
Small binary linear block codes and their exact weight enumerators.

A code is given by its generator matrix; each row is stored as an int whose
bit j is column j (little-endian within the 64-bit word). Enumerators are
computed by walking all 2^k information words in Gray-code order, so every
coefficient is an exact Python int.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from .conf import MAX_ENUMERATION_GUARD, app_setting
from .exceptions import CapacityError, InvalidCodeError

logger = logging.getLogger(__name__)


def gf2_rank(rows):
    """Rank over GF(2) of bit rows given as ints"""
    pivots = []
    for row in rows:
        for pivot in pivots:
            row = min(row, row ^ pivot)
        if row:
            pivots.append(row)
    return len(pivots)


def gf2_nullspace(rows, width):
    """
    Basis (ints over `width` bits) of {x : popcount(row & x) even for every row}.

    Rows are brought to reduced row echelon form; each free column then
    yields one basis vector.
    """
    reduced = []
    pivots = []
    for row in rows:
        for prow, pcol in zip(reduced, pivots):
            if (row >> pcol) & 1:
                row ^= prow
        if not row:
            continue
        pcol = (row & -row).bit_length() - 1
        reduced = [r ^ row if (r >> pcol) & 1 else r for r in reduced]
        reduced.append(row)
        pivots.append(pcol)

    basis = []
    pivot_set = set(pivots)
    for free in range(width):
        if free in pivot_set:
            continue
        vector = 1 << free
        for prow, pcol in zip(reduced, pivots):
            if (prow >> free) & 1:
                vector |= 1 << pcol
        basis.append(vector)
    return basis


@dataclass(frozen=True)
class LinearCode:
    """
    Binary (n, k) linear block code given by a k x n generator matrix.

    The generator is the encoder: input-output enumerators depend on it, so
    no row reduction is ever applied.
    """

    generator: tuple
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n <= 64:
            raise InvalidCodeError(
                f'Code dimensions must satisfy 1 <= k <= n <= 64, got n={self.n}, k={self.k}'
            )
        if len(self.generator) != self.k:
            raise InvalidCodeError(f'Generator has {len(self.generator)} rows but k={self.k}')
        for row in self.generator:
            if row < 0 or row >> self.n:
                raise InvalidCodeError(f'Generator row {row:#x} does not fit in n={self.n} columns')
        if gf2_rank(self.generator) != self.k:
            raise InvalidCodeError('Generator rows are linearly dependent over GF(2)')

    @classmethod
    def from_rows(cls, rows):
        """Build a code from bit-strings such as ["101", "011"] (character j is column j)"""
        if not rows:
            raise InvalidCodeError('Generator matrix has no rows')
        n = len(rows[0])
        generator = []
        for row in rows:
            if len(row) != n:
                raise InvalidCodeError('Generator rows must all have the same length')
            if n == 0 or set(row) - {'0', '1'}:
                raise InvalidCodeError(f'Generator row {row!r} is not a bit-string')
            generator.append(sum(1 << j for j, bit in enumerate(row) if bit == '1'))
        return cls(generator=tuple(generator), n=n, k=len(rows))

    def to_rows(self):
        return [''.join('1' if (row >> j) & 1 else '0' for j in range(self.n)) for row in self.generator]

    def encode(self, info):
        """Codeword (as an int) of the information word given as an int over k bits"""
        word = 0
        for bit, row in enumerate(self.generator):
            if (info >> bit) & 1:
                word ^= row
        return word

    def is_repetition(self):
        return self.k == 1 and self.generator[0] == (1 << self.n) - 1

    def is_single_parity_check(self):
        return self.k == self.n - 1 and all(row.bit_count() % 2 == 0 for row in self.generator)

    def __str__(self):
        return f'({self.n},{self.k}) [{" ".join(self.to_rows())}]'


def repetition_code(q):
    """(q, 1) repetition code"""
    return LinearCode(generator=((1 << q) - 1,), n=q, k=1)


def single_parity_check_code(s):
    """(s, s-1) single parity-check code with systematic generator"""
    last = 1 << (s - 1)
    return LinearCode(generator=tuple((1 << j) | last for j in range(s - 1)), n=s, k=s - 1)


def hamming_code():
    """(7, 4) Hamming code, systematic form"""
    return LinearCode.from_rows(['1000110', '0100011', '0010111', '0001101'])


@dataclass(frozen=True)
class WeightEnumerator:
    """Exact weight enumerator A(x) = sum_u A_u x^u"""

    coeffs: tuple

    @property
    def n(self):
        return len(self.coeffs) - 1

    @property
    def min_distance(self):
        return next(u for u, count in enumerate(self.coeffs) if u > 0 and count > 0)

    def total(self):
        return sum(self.coeffs)

    def support(self):
        return [u for u, count in enumerate(self.coeffs) if count > 0]

    def __getitem__(self, u):
        return self.coeffs[u] if 0 <= u < len(self.coeffs) else 0

    def __str__(self):
        terms = []
        for u, count in enumerate(self.coeffs):
            if count:
                terms.append(str(count) if u == 0 else f'{count if count != 1 else ""}x^{u}')
        return ' + '.join(terms)


@dataclass(frozen=True)
class IOWeightEnumerator:
    """
    Exact input-output weight enumerator B(x, y) = sum B_{u,v} x^u y^v.

    table[u][v] counts codewords of weight v produced by input words of
    weight u under the code's generator matrix.
    """

    table: tuple

    @property
    def k(self):
        return len(self.table) - 1

    @property
    def n(self):
        return len(self.table[0]) - 1

    def coeff(self, u, v):
        if 0 <= u <= self.k and 0 <= v <= self.n:
            return self.table[u][v]
        return 0

    def items(self):
        """Nonzero ((u, v), count) pairs in (u, v) order"""
        return [((u, v), count) for u, row in enumerate(self.table) for v, count in enumerate(row) if count]

    def support(self):
        return [point for point, _ in self.items()]

    def marginal(self):
        """Weight enumerator obtained by summing over input weights"""
        return WeightEnumerator(tuple(sum(row[v] for row in self.table) for v in range(self.n + 1)))

    def total(self):
        return sum(sum(row) for row in self.table)

    @property
    def min_distance(self):
        return self.marginal().min_distance


def _enumeration_guard():
    guard = int(app_setting('ENUMERATION_GUARD'))
    if guard > MAX_ENUMERATION_GUARD:
        logger.warning('ENUMERATION_GUARD=%d exceeds the ceiling; using %d', guard, MAX_ENUMERATION_GUARD)
        guard = MAX_ENUMERATION_GUARD
    elif guard > 24:
        logger.warning('ENUMERATION_GUARD=%d: exhaustive enumeration of up to 2^%d words', guard, guard)
    return guard


def _check_capacity(code):
    guard = _enumeration_guard()
    if code.k > guard:
        raise CapacityError(
            f'Enumerating 2^{code.k} information words exceeds the enumeration guard k <= {guard}',
            limit=guard,
            advisory='Raise DGLDPC_ENUMERATION_GUARD (at most 64) to enumerate larger codes.',
        )


def _walk_codewords(code):
    """Yield (input weight, codeword) over all 2^k information words in Gray-code order"""
    word = 0
    gray = 0
    yield 0, 0
    for step in range(1, 1 << code.k):
        bit = (step & -step).bit_length() - 1
        gray ^= 1 << bit
        word ^= code.generator[bit]
        yield gray.bit_count(), word


def weight_enumerator(code):
    """Exact count of codewords per Hamming weight"""
    _check_capacity(code)
    return _weight_enumerator(code)


@lru_cache(maxsize=None)
def _weight_enumerator(code):
    coeffs = [0] * (code.n + 1)
    for _, word in _walk_codewords(code):
        coeffs[word.bit_count()] += 1
    return WeightEnumerator(tuple(coeffs))


def io_weight_enumerator(code):
    """Exact B_{u,v} table using the generator matrix as the encoder"""
    _check_capacity(code)
    return _io_weight_enumerator(code)


@lru_cache(maxsize=None)
def _io_weight_enumerator(code):
    table = [[0] * (code.n + 1) for _ in range(code.k + 1)]
    for input_weight, word in _walk_codewords(code):
        table[input_weight][word.bit_count()] += 1
    return IOWeightEnumerator(tuple(tuple(row) for row in table))


def min_distance(code):
    """Smallest nonzero codeword weight"""
    return weight_enumerator(code).min_distance


@lru_cache(maxsize=None)
def parity_check_rows(code):
    """Rows spanning the dual code; empty for the full space"""
    return tuple(gf2_nullspace(code.generator, code.n))
