"""
Ensemble config parsing and rational-number rendering.

A config is a JSON object:

    {
      "name": "rate-1/3 LDPC",
      "cn_types": [{"generator": ["101", "011"], "rho": {"num": 1, "den": 1}}],
      "vn_types": [{"generator": ["11"], "lambda": {"num": 1, "den": 1}}]
    }

Generator rows are bit-strings (character j is column j).
"""

import json
import math
from decimal import Decimal, localcontext
from fractions import Fraction

from rest_framework import serializers

from .codes import LinearCode
from .ensemble import build_ensemble
from .exceptions import ConfigParseError

DECIMAL_DIGITS = 17


def fraction_decimal(value, digits=DECIMAL_DIGITS):
    """Decimal string of a rational of any size (no float overflow)"""
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def log_decimal(log_value, digits=DECIMAL_DIGITS):
    """Decimal string of exp(log_value) for values past the float range"""
    if log_value == -math.inf:
        return '0'
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(repr(log_value)).exp())


class FractionField(serializers.Field):
    """Exact rational as {"num", "den", "decimal"}"""

    default_error_messages = {
        'invalid': 'Expected an object with integer "num" and positive integer "den".',
        'zero_den': 'Denominator must be positive.',
    }

    def to_representation(self, value):
        value = Fraction(value)
        return {
            'num': value.numerator,
            'den': value.denominator,
            'decimal': fraction_decimal(value),
        }

    def to_internal_value(self, data):
        if not isinstance(data, dict) or 'num' not in data or 'den' not in data:
            self.fail('invalid')
        num, den = data['num'], data['den']
        if isinstance(num, bool) or isinstance(den, bool) or not isinstance(num, int) or not isinstance(den, int):
            self.fail('invalid')
        if den <= 0:
            self.fail('zero_den')
        return Fraction(num, den)


class GeneratorField(serializers.ListField):
    child = serializers.RegexField(r'^[01]+$', error_messages={'invalid': 'Generator rows must be bit-strings.'})

    def to_internal_value(self, data):
        rows = super().to_internal_value(data)
        if not rows:
            raise serializers.ValidationError('Generator matrix has no rows.')
        if len({len(row) for row in rows}) != 1:
            raise serializers.ValidationError('Generator rows must all have the same length.')
        return rows


class CNTypeSerializer(serializers.Serializer):
    generator = GeneratorField()
    rho = FractionField()


class VNTypeSerializer(serializers.Serializer):
    generator = GeneratorField()

    def get_fields(self):
        # "lambda" is a Python keyword
        fields = super().get_fields()
        fields['lambda'] = FractionField()
        return fields


class EnsembleConfigSerializer(serializers.Serializer):
    name = serializers.CharField(required=False, allow_blank=True, default='')
    cn_types = CNTypeSerializer(many=True, allow_empty=False)
    vn_types = VNTypeSerializer(many=True, allow_empty=False)


def canonical_config(data):
    """JSON-ready form of validated config data (fractions as [num, den])"""
    def rational(value):
        return [value.numerator, value.denominator]

    return {
        'name': data.get('name', ''),
        'cn_types': [{'generator': list(t['generator']), 'rho': rational(t['rho'])} for t in data['cn_types']],
        'vn_types': [{'generator': list(t['generator']), 'lambda': rational(t['lambda'])} for t in data['vn_types']],
    }


def parse_config(text, source='<config>'):
    """Validate config text; returns the validated data"""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(
            f'{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}',
            line=exc.lineno,
            column=exc.colno,
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigParseError(f'{source}: top level must be a JSON object')

    serializer = EnsembleConfigSerializer(data=raw)
    if not serializer.is_valid():
        raise ConfigParseError(f'{source}: invalid ensemble config', fields=serializer.errors)
    return serializer.validated_data


def ensemble_from_config(data):
    cn_specs = [(LinearCode.from_rows(t['generator']), t['rho']) for t in data['cn_types']]
    vn_specs = [(LinearCode.from_rows(t['generator']), t['lambda']) for t in data['vn_types']]
    return build_ensemble(cn_specs, vn_specs, name=data.get('name', ''))


def load_config(path):
    """Read, validate and build the ensemble of a config file; returns (ensemble, canonical config)"""
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigParseError(f'{path}: {exc.strerror}') from exc
    data = parse_config(text, source=str(path))
    return ensemble_from_config(data), canonical_config(data)
