"""Workspace persistence, append-only interaction log, and snapshots.

Layout: one directory per workspace containing ``workspace.json``
(canonical JSON), ``events.jsonl`` (one event per line, append-only), and
``snapshots/`` (plain-text full-draft captures named by timestamp and
trigger). Everything is diff-able and replayable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .draft import BlogPost
from .errors import NotFoundError, ValidationError
from .serialize import canonical_json, post_from_dict, post_to_dict

EVENT_CLASSES = ("writing_action", "structural", "provider_call", "ui_action", "open", "save")

SNAPSHOT_INTERVAL_S = 60.0


@dataclass(frozen=True)
class InteractionEvent:
    timestamp: float
    workspace_id: str
    event_class: str
    payload: dict

    def __post_init__(self):
        if self.event_class not in EVENT_CLASSES:
            raise ValidationError(
                f"unknown event class: {self.event_class}", field="event_class"
            )


@dataclass(frozen=True)
class Snapshot:
    timestamp: float
    text: str
    trigger: str  # open | periodic | save


def event_to_dict(e: InteractionEvent) -> dict:
    return {
        "timestamp": e.timestamp,
        "workspace_id": e.workspace_id,
        "class": e.event_class,
        "payload": e.payload,
    }


def event_from_dict(data: dict) -> InteractionEvent:
    return InteractionEvent(
        timestamp=data["timestamp"],
        workspace_id=data["workspace_id"],
        event_class=data["class"],
        payload=data["payload"],
    )


class WorkspaceStore:
    """Filesystem-backed store, single writer per workspace."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._last_event_ts: dict[str, float] = {}

    def _dir(self, workspace_id: str) -> Path:
        return self.root / workspace_id

    def workspace_ids(self) -> list[str]:
        return sorted(
            p.name for p in self.root.iterdir() if (p / "workspace.json").exists()
        )

    # -- workspace record ---------------------------------------------------

    def save_workspace(self, workspace_id: str, post: BlogPost) -> Path:
        d = self._dir(workspace_id)
        d.mkdir(parents=True, exist_ok=True)
        path = d / "workspace.json"
        path.write_text(canonical_json(post_to_dict(post)), encoding="utf-8")
        return path

    def load_workspace(self, workspace_id: str) -> BlogPost:
        path = self._dir(workspace_id) / "workspace.json"
        if not path.exists():
            raise NotFoundError(f"unknown workspace: {workspace_id}")
        return post_from_dict(json.loads(path.read_text(encoding="utf-8")))

    # -- event log ----------------------------------------------------------

    def record_event(self, event: InteractionEvent) -> None:
        """Append one event; timestamps must be monotone per workspace."""
        last = self._last_event_ts.get(event.workspace_id)
        if last is None:
            existing = self.events(event.workspace_id)
            last = existing[-1].timestamp if existing else float("-inf")
        if event.timestamp < last:
            raise ValidationError(
                f"event timestamp {event.timestamp} precedes last {last}",
                field="timestamp",
            )
        d = self._dir(event.workspace_id)
        d.mkdir(parents=True, exist_ok=True)
        with open(d / "events.jsonl", "a", encoding="utf-8") as f:
            f.write(json.dumps(event_to_dict(event), sort_keys=True, ensure_ascii=False))
            f.write("\n")
            f.flush()
        self._last_event_ts[event.workspace_id] = event.timestamp

    def events(self, workspace_id: str) -> list[InteractionEvent]:
        path = self._dir(workspace_id) / "events.jsonl"
        if not path.exists():
            return []
        out = []
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if line:
                    out.append(event_from_dict(json.loads(line)))
        return out

    # -- snapshots ----------------------------------------------------------

    def write_snapshot(self, workspace_id: str, snapshot: Snapshot) -> Path:
        d = self._dir(workspace_id) / "snapshots"
        d.mkdir(parents=True, exist_ok=True)
        path = d / f"{snapshot.timestamp:016.3f}_{snapshot.trigger}.txt"
        path.write_text(snapshot.text, encoding="utf-8")
        return path

    def snapshots(self, workspace_id: str) -> list[Snapshot]:
        d = self._dir(workspace_id) / "snapshots"
        if not d.exists():
            return []
        out = []
        for path in sorted(d.iterdir()):
            stem, _, trigger = path.stem.partition("_")
            out.append(
                Snapshot(
                    timestamp=float(stem),
                    text=path.read_text(encoding="utf-8"),
                    trigger=trigger,
                )
            )
        return out


class SnapshotTimer:
    """Implements the snapshot cadence: one capture on open, then a
    periodic capture at most once per interval and only while events are
    actually occurring ("active usage")."""

    def __init__(self, interval: float = SNAPSHOT_INTERVAL_S):
        self.interval = interval
        self.last_snapshot_time: float | None = None
        self.last_event_time: float | None = None

    def on_open(self, now: float) -> None:
        """An open/reopen always snapshots, regardless of the timer."""
        self.last_snapshot_time = now

    def note_event(self, now: float) -> None:
        self.last_event_time = now

    def snapshot_if_due(self, now: float) -> bool:
        """True iff a periodic snapshot should fire: at least one interval
        since the last snapshot and activity inside that window."""
        if self.last_snapshot_time is None:
            self.last_snapshot_time = now
            return False
        if now - self.last_snapshot_time < self.interval:
            return False
        if self.last_event_time is None or self.last_event_time <= self.last_snapshot_time:
            return False
        self.last_snapshot_time = now
        return True


class Session:
    """Binds one workspace's live state to its store: events, snapshots,
    and the cadence timer."""

    def __init__(self, store: WorkspaceStore, workspace_id: str,
                 interval: float = SNAPSHOT_INTERVAL_S):
        self.store = store
        self.workspace_id = workspace_id
        self.timer = SnapshotTimer(interval)

    def open(self, now: float, draft_text: str) -> Snapshot:
        self.timer.on_open(now)
        snapshot = Snapshot(timestamp=now, text=draft_text, trigger="open")
        self.store.write_snapshot(self.workspace_id, snapshot)
        self.store.record_event(
            InteractionEvent(now, self.workspace_id, "open", {})
        )
        return snapshot

    def record(self, event: InteractionEvent) -> None:
        self.store.record_event(event)
        self.timer.note_event(event.timestamp)

    def snapshot_if_due(self, now: float, draft_text: str) -> Snapshot | None:
        if not self.timer.snapshot_if_due(now):
            return None
        snapshot = Snapshot(timestamp=now, text=draft_text, trigger="periodic")
        self.store.write_snapshot(self.workspace_id, snapshot)
        return snapshot

    def save(self, now: float, post: BlogPost, draft_text: str) -> None:
        self.store.save_workspace(self.workspace_id, post)
        snapshot = Snapshot(timestamp=now, text=draft_text, trigger="save")
        self.store.write_snapshot(self.workspace_id, snapshot)
        self.record(InteractionEvent(now, self.workspace_id, "save", {}))


def replay_body_edits(
    initial_bodies: dict[str, str], events: list[InteractionEvent]
) -> dict[str, str]:
    """Apply the log's body-targeting writing actions over initial bodies.

    Replaying the full event log over the initial draft must reproduce the
    final body text exactly; this is the store's replayability contract.
    """
    bodies = dict(initial_bodies)
    for event in events:
        if event.event_class != "writing_action":
            continue
        p = event.payload
        if p.get("target") != "body":
            continue
        sid = p["section_id"]
        body = bodies.get(sid, "")
        if p["op"] == "insert":
            bodies[sid] = body[: p["pos"]] + p["text"] + body[p["pos"] :]
        elif p["op"] == "delete":
            bodies[sid] = body[: p["start"]] + body[p["end"] :]
    return bodies
