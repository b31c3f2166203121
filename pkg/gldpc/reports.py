"""Report envelopes and their JSON / CSV renderings."""

import csv
import hashlib
import io
import json
import math
from fractions import Fraction

from rest_framework.renderers import JSONRenderer

from . import __version__
from .serializers import FractionField

TOOL = 'dgldpc'


def config_hash(config):
    """SHA-256 of the canonical JSON of a parsed config"""
    canonical = json.dumps(config, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def to_log_base(value, log_base):
    """Convert a natural-log quantity to the requested base ('e' or '2')"""
    if value is None:
        return None
    return value / math.log(2) if log_base == '2' else value


def jsonable(value):
    """Plain JSON value: rationals as {num, den, decimal}, non-finite floats as null"""
    if isinstance(value, Fraction):
        return FractionField().to_representation(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    return value


def build_envelope(command, parameters, results=None, digest=None, status='success', error=None, timing=None):
    envelope = {
        'tool': TOOL,
        'version': __version__,
        'command': command,
        'config_hash': digest,
        'parameters': jsonable(parameters),
        'status': status,
    }
    if error is not None:
        envelope['error'] = jsonable(error)
    if error is None or results is not None:
        envelope['results'] = jsonable(results)
    envelope['timing'] = timing
    return envelope


def render_json(envelope):
    return JSONRenderer().render(envelope, renderer_context={'indent': 2}).decode('utf-8')


def csv_cell(value):
    if value is None:
        return ''
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else ''
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(jsonable(value), sort_keys=True, separators=(',', ':'))
    return str(value)


def render_csv(columns, rows):
    """CSV table with a header row; rows are dicts keyed by column"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([csv_cell(row.get(column)) for column in columns])
    return buffer.getvalue()
