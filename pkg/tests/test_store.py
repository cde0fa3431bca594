import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from postdraft.draft import apply_edit, warm_start
from postdraft.errors import NotFoundError, ValidationError
from postdraft.store import (
    InteractionEvent,
    Session,
    Snapshot,
    SnapshotTimer,
    WorkspaceStore,
    replay_body_edits,
)


def make_clock(start=0.0):
    state = {"t": start}

    def clock():
        state["t"] += 1.0
        return state["t"]

    return clock


@pytest.fixture
def store(tmp_path):
    return WorkspaceStore(tmp_path / "workspaces")


@pytest.fixture
def post(fixture_doc, det_gateway):
    return warm_start(fixture_doc, det_gateway, clock=make_clock(), post_id="t")


class TestWorkspacePersistence:
    def test_roundtrip_byte_identity(self, store, post):
        path = store.save_workspace("w1", post)
        first = path.read_bytes()
        loaded = store.load_workspace("w1")
        store.save_workspace("w1", loaded)
        assert path.read_bytes() == first

    def test_load_unknown_id(self, store):
        with pytest.raises(NotFoundError):
            store.load_workspace("missing")

    def test_save_idempotent(self, store, post):
        a = store.save_workspace("w1", post).read_bytes()
        b = store.save_workspace("w1", post).read_bytes()
        assert a == b

    def test_version_mismatch_fails_explicitly(self, store, post):
        import json

        path = store.save_workspace("w1", post)
        data = json.loads(path.read_text())
        data["format_version"] = 99
        path.write_text(json.dumps(data))
        with pytest.raises(ValidationError):
            store.load_workspace("w1")


class TestEventLog:
    def test_append_and_read_back(self, store):
        events = [
            InteractionEvent(float(i), "w1", "writing_action", {"i": i})
            for i in range(3)
        ]
        for e in events:
            store.record_event(e)
        assert store.events("w1") == events

    def test_monotonicity_enforced(self, store):
        store.record_event(InteractionEvent(10.0, "w1", "ui_action", {}))
        with pytest.raises(ValidationError):
            store.record_event(InteractionEvent(5.0, "w1", "ui_action", {}))

    def test_monotonicity_survives_reopen(self, store, tmp_path):
        store.record_event(InteractionEvent(10.0, "w1", "ui_action", {}))
        fresh = WorkspaceStore(store.root)
        with pytest.raises(ValidationError):
            fresh.record_event(InteractionEvent(5.0, "w1", "ui_action", {}))

    def test_unknown_class_rejected(self):
        with pytest.raises(ValidationError):
            InteractionEvent(0.0, "w1", "mystery", {})


class TestSnapshotCadence:
    def test_five_minutes_of_activity_five_snapshots(self):
        timer = SnapshotTimer()
        timer.on_open(0.0)
        fired = 0
        for t in range(1, 301):
            timer.note_event(float(t))
            if timer.snapshot_if_due(float(t)):
                fired += 1
        assert fired == 5

    def test_idle_time_no_snapshots(self):
        timer = SnapshotTimer()
        timer.on_open(0.0)
        fired = sum(timer.snapshot_if_due(float(t)) for t in range(1, 601))
        assert fired == 0

    def test_reopen_always_snapshots(self, store):
        session = Session(store, "w1")
        session.open(0.0, "draft v1")
        session.open(5.0, "draft v2")
        snaps = store.snapshots("w1")
        assert [s.trigger for s in snaps] == ["open", "open"]

    @settings(max_examples=50)
    @given(st.lists(st.floats(min_value=0.1, max_value=200.0), max_size=40))
    def test_spacing_invariant_over_random_traces(self, gaps):
        timer = SnapshotTimer()
        timer.on_open(0.0)
        t = 0.0
        fired_at = []
        for gap in gaps:
            t += gap
            timer.note_event(t)
            if timer.snapshot_if_due(t):
                fired_at.append(t)
        assert all(b - a >= timer.interval for a, b in zip(fired_at, fired_at[1:]))


class TestSessionReplay:
    def test_replay_reproduces_final_bodies(self, store, post):
        session = Session(store, "w1")
        session.open(0.0, "")
        initial = {s.section_id: s.body for s in post.sections}
        clock = make_clock()
        sids = [s.section_id for s in post.sections]
        edits = [
            (sids[0], {"op": "insert", "pos": 0, "text": "Hello! "}),
            (sids[1], {"op": "delete", "start": 0, "end": 5}),
            (sids[0], {"op": "insert", "pos": 7, "text": "again "}),
            (sids[3], {"op": "delete", "start": 2, "end": 10}),
            (sids[2], {"op": "insert", "pos": 3, "text": "xyz"}),
        ]
        for sid, edit in edits:
            payload = apply_edit(post, sid, edit)
            session.record(InteractionEvent(clock(), "w1", "writing_action", payload))
        # structural events must not affect replay
        session.record(InteractionEvent(clock(), "w1", "structural", {"action": "move"}))
        final = {s.section_id: s.body for s in post.sections}
        assert replay_body_edits(initial, store.events("w1")) == final


def test_snapshot_files_roundtrip(store):
    session = Session(store, "w1")
    session.open(1.0, "first text")
    store.write_snapshot("w1", Snapshot(61.0, "second text", "periodic"))
    snaps = store.snapshots("w1")
    assert [(s.timestamp, s.text, s.trigger) for s in snaps] == [
        (1.0, "first text", "open"),
        (61.0, "second text", "periodic"),
    ]
