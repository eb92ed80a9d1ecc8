"""Channel-aware block codes: detection, correction, maximality and generation."""

import json
from fractions import Fraction

from ._core import (
    Channel,
    Code,
    Error,
    NotDetectingError,
    correction_witness,
    detection_witness,
    maximality_witness,
    trial_bound,
)
from ._core import make_code as _make_code
from ._core import maximality_index as _maximality_index

__all__ = [
    "Channel",
    "Code",
    "Error",
    "NotDetectingError",
    "correction_witness",
    "detection_witness",
    "make_code",
    "maximality_index",
    "maximality_witness",
    "trial_bound",
]


def maximality_index(code, channel):
    """Exact maximality index as a Fraction."""
    return Fraction(*_maximality_index(code, channel))


def make_code(channel, n, length, seed=0, f=0.95, epsilon=0.05, initial=None, universe="none"):
    """Returns (code, report) where report is the generation report as a dict."""
    code, report = _make_code(channel, n, length, seed, f, epsilon, initial, universe, "json")
    return code, json.loads(report)
