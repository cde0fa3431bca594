"""Editing-power metrics: writing actions, active time, distance series.

All functions are pure over immutable inputs. The distance series is
anchored to the initial draft: every snapshot is compared against it, not
chained to the previous snapshot.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from ..errors import ValidationError
from ..store import InteractionEvent, Snapshot

DEFAULT_GAP_THRESHOLD_S = 60.0


@dataclass(frozen=True)
class EditingPowerSeries:
    """Per-snapshot points of (active minutes, cumulative writing actions,
    Levenshtein distance from the initial draft)."""

    points: tuple[tuple[float, int, int], ...]


def writing_actions(events: list[InteractionEvent]) -> int:
    """Count of writing actions only; structural section operations and all
    other event classes are excluded."""
    return sum(1 for e in events if e.event_class == "writing_action")


def active_time(
    events: list[InteractionEvent],
    gap_threshold_s: float = DEFAULT_GAP_THRESHOLD_S,
    until: float | None = None,
) -> float:
    """Active minutes: the sum of consecutive inter-event gaps not exceeding
    the idle threshold. Gaps above the threshold contribute nothing."""
    times = sorted(e.timestamp for e in events if until is None or e.timestamp <= until)
    total = 0.0
    for earlier, later in zip(times, times[1:]):
        gap = later - earlier
        if gap <= gap_threshold_s:
            total += gap
    return total / 60.0


def length_delta(initial: str, final: str) -> int:
    """Signed character-count change from the initial to the final draft."""
    return len(final) - len(initial)


def editing_power_series(
    initial: str,
    snapshots: list[Snapshot],
    events: list[InteractionEvent],
    gap_threshold_s: float = DEFAULT_GAP_THRESHOLD_S,
) -> EditingPowerSeries:
    """One point per snapshot, distances measured against the initial draft."""
    from . import levenshtein

    timestamps = [s.timestamp for s in snapshots]
    if timestamps != sorted(timestamps):
        raise ValidationError("snapshots are out of order", field="snapshots")
    points = []
    for snapshot in snapshots:
        minutes = active_time(events, gap_threshold_s, until=snapshot.timestamp)
        actions = sum(
            1
            for e in events
            if e.event_class == "writing_action" and e.timestamp <= snapshot.timestamp
        )
        points.append((minutes, actions, levenshtein(initial, snapshot.text)))
    return EditingPowerSeries(points=tuple(points))


REPORT_COLUMNS = (
    "snapshot_index",
    "elapsed_active_minutes",
    "writing_actions",
    "levenshtein_from_initial",
    "length_delta_final",
)


def export_report(series: EditingPowerSeries, final_length_delta: int) -> str:
    """Deterministic CSV export of the series, one row per snapshot.

    ``length_delta_final`` is repeated on each row so the file stands alone
    for downstream plotting. An empty series exports the header only.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for i, (minutes, actions, distance) in enumerate(series.points):
        writer.writerow([i, f"{minutes:.4f}", actions, distance, final_length_delta])
    return buf.getvalue()
