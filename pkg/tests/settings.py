"""Hypothesis settings profiles for the property tests.

Every profile is derandomized so a failing seed reproduces on the next run.

- ORACLE_SETTINGS: decision procedures against exhaustive enumeration
- STANDARD_SETTINGS: cheap structural properties (printing, parsing, solving)
- QUICK_SETTINGS: properties that enumerate a model class per example
"""

from hypothesis import HealthCheck, settings

_COMMON = dict(
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)

STANDARD_SETTINGS = settings(max_examples=100, **_COMMON)
ORACLE_SETTINGS = settings(max_examples=200, **_COMMON)
QUICK_SETTINGS = settings(max_examples=20, **_COMMON)
