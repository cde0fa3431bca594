import time

import pytest
from fastapi.testclient import TestClient

from postdraft.api import create_app
from postdraft.config import ServiceConfig


@pytest.fixture
def client(tmp_path):
    cfg = ServiceConfig(mock=True, storage_dir=str(tmp_path / "workspaces"))
    with TestClient(create_app(cfg)) as client:
        yield client


def create_ready_workspace(client, payload, timeout=10.0):
    resp = client.post("/workspaces", json={"document": payload})
    assert resp.status_code == 202
    wid = resp.json()["workspace_id"]
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        state = client.get(f"/workspaces/{wid}").json()
        if state["status"] in ("ready", "failed"):
            assert state["status"] == "ready", state
            return wid, state
        time.sleep(0.02)
    raise AssertionError("warm start did not finish in time")


class TestLifecycle:
    def test_healthz(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        assert resp.json()["status"] == "ok"

    def test_create_poll_four_sections(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        headers = [s["header"] for s in state["sections"]]
        assert headers == ["Introduction", "Methods", "Results", "Conclusion"]
        assert all(s["body"] for s in state["sections"])
        assert state["version"] == 1

    def test_malformed_document_422(self, client):
        resp = client.post("/workspaces", json={"document": {"title": ""}})
        assert resp.status_code == 422
        assert resp.json()["code"] == "validation_error"

    def test_unknown_workspace_404(self, client):
        resp = client.get("/workspaces/nope")
        assert resp.status_code == 404
        assert resp.json()["code"] == "not_found"


class TestSelectionAndOutline:
    def test_toggle_then_read_your_writes(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        outline = client.get(f"/workspaces/{wid}/outline").json()
        bid = outline["outline"]["groups"][0]["bullets"][0]["bullet_id"]
        selected_before = bid in outline["selections"][sid]["selected_bullets"]
        resp = client.patch(
            f"/workspaces/{wid}/sections/{sid}/selection",
            json={"toggles": [{"kind": "bullet", "id": bid}]},
        )
        assert resp.status_code == 200
        after = client.get(f"/workspaces/{wid}/outline").json()
        assert (bid in after["selections"][sid]["selected_bullets"]) != selected_before

    def test_unknown_bullet_404(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        resp = client.patch(
            f"/workspaces/{wid}/sections/{sid}/selection",
            json={"toggles": [{"kind": "bullet", "id": "zzz"}]},
        )
        assert resp.status_code == 404


class TestGenerateAndModify:
    def test_generate_appends_history_and_pager(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        resp = client.post(f"/workspaces/{wid}/sections/{sid}/generate", json={})
        assert resp.status_code == 200
        assert resp.json()["pager"] == "2/2"  # warm start generation + this one
        history = client.get(
            f"/workspaces/{wid}/sections/{sid}/history",
            params={"kind": "generation", "index": 1},
        ).json()
        assert history["pager"] == "2/2"
        assert history["record"]["output"] == resp.json()["record"]["output"]

    def test_generate_unknown_section_404(self, client, fixture_payload):
        wid, _ = create_ready_workspace(client, fixture_payload)
        resp = client.post(f"/workspaces/{wid}/sections/nope/generate", json={})
        assert resp.status_code == 404
        assert resp.json()["code"] == "not_found"

    def test_modify(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        resp = client.post(
            f"/workspaces/{wid}/sections/{sid}/modify",
            json={"kind": "condense", "text": "some words to shrink"},
        )
        assert resp.status_code == 200
        assert resp.json()["record"]["kind"] == "condense"
        assert "half the length" in resp.json()["record"]["prompt"]

    def test_modify_empty_text_422(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        resp = client.post(
            f"/workspaces/{wid}/sections/{sid}/modify",
            json={"kind": "expand", "text": ""},
        )
        assert resp.status_code == 422


class TestStructureAndEdits:
    def test_add_move_delete(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        intro = state["sections"][0]["section_id"]
        resp = client.post(
            f"/workspaces/{wid}/sections",
            json={"after": intro, "header": "Background", "mode": "blank"},
        )
        assert resp.status_code == 201
        new_sid = resp.json()["section_id"]
        assert resp.json()["position"] == 1
        resp = client.patch(
            f"/workspaces/{wid}/sections/{new_sid}", json={"action": "move_down"}
        )
        assert resp.json()["moved"] is True
        resp = client.patch(
            f"/workspaces/{wid}/sections/{new_sid}", json={"action": "delete"}
        )
        assert resp.status_code == 200
        state = client.get(f"/workspaces/{wid}").json()
        assert [s["header"] for s in state["sections"]] == [
            "Introduction", "Methods", "Results", "Conclusion",
        ]

    def test_body_edit_emits_writing_action(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        resp = client.patch(
            f"/workspaces/{wid}/sections/{sid}",
            json={"action": "edit", "edit": {"op": "insert", "pos": 0, "text": "Hi! "}},
        )
        assert resp.status_code == 200
        assert resp.json()["body"].startswith("Hi! ")

    def test_version_conflict_409(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        resp = client.post(
            f"/workspaces/{wid}/sections/{sid}/generate", json={"version": 999}
        )
        assert resp.status_code == 409
        assert resp.json()["code"] == "version_conflict"

    def test_mutations_bump_version(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        v = state["version"]
        resp = client.post(
            f"/workspaces/{wid}/sections/{sid}/generate", json={"version": v}
        )
        assert resp.json()["version"] == v + 1


class TestSaveAndReport:
    def test_save_and_analytics_report(self, client, fixture_payload):
        wid, state = create_ready_workspace(client, fixture_payload)
        sid = state["sections"][0]["section_id"]
        client.patch(
            f"/workspaces/{wid}/sections/{sid}",
            json={"action": "edit", "edit": {"op": "insert", "pos": 0, "text": "Edit. "}},
        )
        assert client.post(f"/workspaces/{wid}/save", json={}).status_code == 200
        resp = client.get(f"/workspaces/{wid}/analytics/report")
        assert resp.status_code == 200
        lines = resp.text.splitlines()
        assert lines[0].startswith("snapshot_index,")
        assert len(lines) >= 3  # header + open snapshot + save snapshot
