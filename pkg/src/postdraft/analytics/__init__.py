"""Editing-power analytics over interaction logs and snapshots.

The Levenshtein kernel is compiled (Cython) when the extension built at
install time; otherwise the pure-Python fallback is selected at import.
``LEVENSHTEIN_BACKEND`` reports which one is active.
"""

from .metrics import (
    EditingPowerSeries,
    active_time,
    editing_power_series,
    export_report,
    length_delta,
    writing_actions,
)

try:
    from ._speedups import levenshtein_codepoints as _levenshtein_impl

    LEVENSHTEIN_BACKEND = "cython"
except ImportError:  # extension not built; pure Python is drop-in compatible
    from ._fallback import levenshtein_codepoints as _levenshtein_impl

    LEVENSHTEIN_BACKEND = "python"


def levenshtein(a: str, b: str) -> int:
    """Minimal number of character insertions, deletions, and replacements
    transforming ``a`` into ``b``. Characters are Unicode scalar values."""
    return _levenshtein_impl(a, b)


__all__ = [
    "EditingPowerSeries",
    "LEVENSHTEIN_BACKEND",
    "active_time",
    "editing_power_series",
    "export_report",
    "length_delta",
    "levenshtein",
    "writing_actions",
]
