"""
Error hierarchy for ensemble analysis.

Every error carries a short machine code, a human-readable detail and the
process exit code the management commands use for it:
0 success, 1 input error, 2 hypothesis/feasibility error, 3 capacity error.
"""


class DGLDPCError(Exception):
    """Base class for all analysis errors."""

    default_detail = 'Ensemble analysis failed.'
    default_code = 'error'
    exit_code = 1
    # Results computed before the failure; reported next to the error
    partial_results = None

    def __init__(self, detail=None, code=None, **extra):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        self.extra = extra
        super().__init__(self.detail)

    def as_dict(self):
        """Structured form used in error envelopes"""
        payload = {'code': self.code, 'detail': str(self.detail)}
        payload.update({key: value for key, value in self.extra.items() if value is not None})
        return payload


# Input errors (exit 1)

class InputError(DGLDPCError):
    default_detail = 'Invalid input.'
    default_code = 'invalid_input'
    exit_code = 1


class ConfigParseError(InputError):
    default_detail = 'Ensemble config could not be parsed.'
    default_code = 'config_parse_error'


class InvalidCodeError(InputError):
    default_detail = 'Generator matrix does not define a valid binary linear code.'
    default_code = 'invalid_code'


class FractionSumError(InputError):
    default_detail = 'Edge fractions must sum to exactly 1.'
    default_code = 'fraction_sum'


class DegenerateTypeError(InputError):
    default_detail = 'Two node types share the same code and generator matrix.'
    default_code = 'degenerate_type'


class NonIntegralInstanceError(InputError):
    default_detail = 'Instance size yields non-integral node or edge counts.'
    default_code = 'non_integral_instance'

    def __init__(self, detail=None, quantity=None, suggested_n=None, **extra):
        self.quantity = quantity
        self.suggested_n = suggested_n
        super().__init__(detail, quantity=quantity, suggested_n=suggested_n, **extra)


class SeedRequiredError(InputError):
    default_detail = 'Reproducible sampling requires an explicit seed.'
    default_code = 'seed_required'


# Hypothesis and feasibility errors (exit 2)

class HypothesisError(DGLDPCError):
    default_detail = 'Analysis hypothesis not satisfied.'
    default_code = 'hypothesis'
    exit_code = 2


class TheoremHypothesisError(HypothesisError):
    default_detail = 'Small-weight growth-rate slope requires r=2 and p=2.'
    default_code = 'theorem_hypothesis'

    def __init__(self, detail=None, side=None, **extra):
        self.side = side
        super().__init__(detail, side=side, **extra)


class PNotDefinedError(HypothesisError):
    default_detail = 'P(x) is only defined when the smallest VN minimum distance is 2.'
    default_code = 'p_not_defined'


class InfeasibleRatioError(HypothesisError):
    default_detail = 'Requested weight ratio lies outside the feasible range.'
    default_code = 'infeasible_ratio'

    def __init__(self, detail=None, feasible_range=None, **extra):
        self.feasible_range = feasible_range
        super().__init__(detail, feasible_range=feasible_range, **extra)


class EmptySequenceError(HypothesisError):
    default_detail = 'No admissible instance size in the requested list.'
    default_code = 'empty_sequence'


class ConvergenceError(HypothesisError):
    default_detail = 'Numerical solver did not reach the requested tolerance.'
    default_code = 'convergence'

    def __init__(self, detail=None, diagnostics=None, **extra):
        self.diagnostics = diagnostics
        super().__init__(detail, diagnostics=diagnostics, **extra)


# Capacity errors (exit 3)

class CapacityError(DGLDPCError):
    default_detail = 'Requested computation exceeds the configured capacity.'
    default_code = 'capacity'
    exit_code = 3

    def __init__(self, detail=None, limit=None, advisory=None, **extra):
        self.limit = limit
        self.advisory = advisory
        super().__init__(detail, limit=limit, advisory=advisory, **extra)
