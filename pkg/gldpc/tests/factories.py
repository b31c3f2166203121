from fractions import Fraction
from pathlib import Path

from gldpc.codes import LinearCode, hamming_code, repetition_code, single_parity_check_code
from gldpc.ensemble import build_ensemble

CONFIG_DIR = Path(__file__).resolve().parent.parent.parent / 'configs'


def config_path(name):
    return str(CONFIG_DIR / f'{name}.json')


def ldpc(lambdas, rhos):
    """LDPC ensemble from {VN degree: lambda} and {CN degree: rho}"""
    return build_ensemble(
        [(single_parity_check_code(s), Fraction(rho)) for s, rho in rhos.items()],
        [(repetition_code(q), Fraction(lam)) for q, lam in lambdas.items()],
    )


def cycle_ensemble():
    return ldpc({2: 1}, {2: 1})


def regular_ldpc():
    """lambda(x) = x, rho(x) = x^2"""
    return ldpc({2: 1}, {3: 1})


def irregular_ldpc():
    """lambda(x) = x/2 + x^2/2, rho(x) = x^5"""
    return ldpc({2: Fraction(1, 2), 3: Fraction(1, 2)}, {6: 1})


def spc_vn_ensemble():
    """(3,2) SPC VNs over (3,2) SPC CNs"""
    return build_ensemble([(single_parity_check_code(3), 1)], [(single_parity_check_code(3), 1)])


def rep3_over_spc2():
    return ldpc({3: 1}, {2: 1})


def pair_code_ensemble():
    """(4,2) VNs with generator 1100 / 0011 over SPC-4 CNs"""
    return build_ensemble(
        [(single_parity_check_code(4), 1)],
        [(LinearCode.from_rows(['1100', '0011']), 1)],
    )


def hamming_cn_ensemble():
    return build_ensemble([(hamming_code(), 1)], [(repetition_code(2), 1)])


def mixed_gldpc():
    """SPC-6 and Hamming CNs (rho = 1/2 each) over rep-2 and rep-3 VNs (lambda = 1/2 each)"""
    return build_ensemble(
        [(single_parity_check_code(6), Fraction(1, 2)), (hamming_code(), Fraction(1, 2))],
        [(repetition_code(2), Fraction(1, 2)), (repetition_code(3), Fraction(1, 2))],
    )


def dgldpc_ensemble():
    """SPC-3 and rep-3 VNs (lambda = 1/2 each) over SPC-4 CNs"""
    return build_ensemble(
        [(single_parity_check_code(4), 1)],
        [(single_parity_check_code(3), Fraction(1, 2)), (repetition_code(3), Fraction(1, 2))],
    )
