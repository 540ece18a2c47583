"""Mortgage amortization and housing-credit market simulator."""

import json as _json

from amortis._core import *  # noqa: F401,F403
from amortis._core import report_json as _report_json

__version__ = "0.1.0"


def report(scenario):
    """Full report for a scenario as nested dicts."""
    return _json.loads(_report_json(scenario))
