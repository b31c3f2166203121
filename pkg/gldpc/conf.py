"""Access to the DGLDPC settings dict with built-in defaults."""

from django.conf import settings

DEFAULTS = {
    'ENUMERATION_GUARD': 24,
    'POWER_DEGREE_LIMIT': 100000,
    'BRUTE_FORCE_MAX_EDGES': 8,
    'SAMPLE_MAX_INFO_BITS': 30,
    'SAMPLE_MAX_CANDIDATES': 1 << 22,
    'SAMPLE_WORKERS': 1,
    'EXACT_SPECTRUM_MAX_CELLS': 4000000,
    'LOG_SPECTRUM_MAX_CELLS': 16000000,
    'SPECTRUM_WORKERS': 1,
}

# Hard ceiling of the enumeration guard: rows are 64-bit words.
MAX_ENUMERATION_GUARD = 64


def app_setting(name):
    """Return a DGLDPC setting, falling back to the default outside Django."""
    if settings.configured:
        overrides = getattr(settings, 'DGLDPC', {})
        if name in overrides:
            return overrides[name]
    return DEFAULTS[name]
