"""HTTP API binding the document model, draft engine, store, and analytics.

Single-user-per-workspace design: per-workspace mutations are serialized
behind a lock and guarded by an optimistic state version. Warm start runs
asynchronously; clients poll the workspace status.
"""

from __future__ import annotations

import itertools
import threading
import time
import uuid

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import analytics, draft
from .config import ServiceConfig, build_gateway
from .docmodel import ingest_markdown, ingest_structured
from .errors import (
    NotFoundError,
    PostDraftError,
    ProviderError,
    UnknownIdError,
    ValidationError,
    VersionConflictError,
)
from .outline import outline_to_dict, toggle_bullet, toggle_paragraph
from .prompts import LengthKind, ModificationKind
from .serialize import selection_to_dict
from .store import InteractionEvent, Session, WorkspaceStore


class StepClock:
    """Deterministic clock for mock mode: strictly increasing seconds."""

    def __init__(self, start: float = 0.0, step: float = 1.0):
        self._counter = itertools.count()
        self._start = start
        self._step = step
        self._lock = threading.Lock()

    def __call__(self) -> float:
        with self._lock:
            return self._start + next(self._counter) * self._step


class WorkspaceHandle:
    def __init__(self, workspace_id: str, session: Session):
        self.workspace_id = workspace_id
        self.session = session
        self.post: draft.BlogPost | None = None
        self.status = "pending"
        self.error: str | None = None
        self.version = 0
        self.lock = threading.RLock()


def _record_to_dict(record) -> dict:
    data = {
        "inputs": record.inputs,
        "prompt": record.prompt,
        "output": record.output,
        "timestamp": record.timestamp,
        "template_version": record.template_version,
    }
    if hasattr(record, "kind"):
        data["kind"] = record.kind
    return data


def _section_summary(post: draft.BlogPost) -> list[dict]:
    return [
        {
            "section_id": s.section_id,
            "header": s.header,
            "body": s.body,
            "position": i,
            "degraded": s.degraded,
            "generation_count": len(s.workspace.generations),
            "modification_count": len(s.workspace.modifications),
            "selection": selection_to_dict(s.workspace.selection),
            "custom_bullets": s.workspace.custom_bullets,
            "custom_instructions": s.workspace.custom_instructions,
            "starting_text": s.workspace.starting_text,
            "context_toggle": s.workspace.context_toggle,
            "grounding_toggle": s.workspace.grounding_toggle,
            "length": s.workspace.length.value,
        }
        for i, s in enumerate(post.sections)
    ]


def create_app(cfg: ServiceConfig | None = None) -> FastAPI:
    cfg = cfg or ServiceConfig(mock=True)
    app = FastAPI(title="postdraft")
    store = WorkspaceStore(cfg.storage_dir)
    gateway = build_gateway(cfg)
    clock = StepClock() if cfg.mock else time.time
    handles: dict[str, WorkspaceHandle] = {}

    def handle_of(workspace_id: str) -> WorkspaceHandle:
        handle = handles.get(workspace_id)
        if handle is None:
            raise NotFoundError(f"unknown workspace: {workspace_id}")
        return handle

    def ready_post(handle: WorkspaceHandle) -> draft.BlogPost:
        if handle.status != "ready" or handle.post is None:
            raise ValidationError(
                f"workspace is not ready (status: {handle.status})", field="status"
            )
        return handle.post

    def check_version(handle: WorkspaceHandle, body: dict) -> None:
        expected = body.get("version")
        if expected is not None and expected != handle.version:
            raise VersionConflictError(
                "stale state version", expected=expected, actual=handle.version
            )

    def emit(handle: WorkspaceHandle, event_class: str, payload: dict) -> None:
        handle.session.record(
            InteractionEvent(clock(), handle.workspace_id, event_class, payload)
        )

    @app.exception_handler(PostDraftError)
    async def on_error(request: Request, exc: PostDraftError):
        if isinstance(exc, (NotFoundError, UnknownIdError)):
            status, code = 404, "not_found"
        elif isinstance(exc, VersionConflictError):
            status, code = 409, "version_conflict"
        elif isinstance(exc, ProviderError):
            status, code = 502, "provider_error"
        else:
            status, code = 422, "validation_error"
        details = {}
        if isinstance(exc, ValidationError) and exc.field:
            details["field"] = exc.field
        if isinstance(exc, ProviderError):
            details["purpose_tag"] = exc.purpose_tag
        if isinstance(exc, VersionConflictError):
            details["expected"] = exc.expected
            details["actual"] = exc.actual
        return JSONResponse(
            status_code=status,
            content={"code": code, "message": str(exc), "details": details},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "mock": cfg.mock}

    @app.post("/workspaces", status_code=202)
    def create_workspace(body: dict):
        if "document" in body:
            doc = ingest_structured(body["document"])
        elif "markdown" in body:
            doc = ingest_markdown(body["markdown"], title=body.get("title", "Untitled"))
        else:
            raise ValidationError(
                "request must carry 'document' or 'markdown'", field="body"
            )
        workspace_id = f"ws-{uuid.uuid4().hex[:12]}"
        handle = WorkspaceHandle(workspace_id, Session(store, workspace_id))
        handles[workspace_id] = handle

        def run_warm_start():
            try:
                post = draft.warm_start(doc, gateway, clock=clock, post_id=workspace_id)
                with handle.lock:
                    handle.post = post
                    handle.status = "ready"
                    handle.version = 1
                    store.save_workspace(workspace_id, post)
                    handle.session.open(clock(), draft.render_preview(post))
            except PostDraftError as exc:
                handle.status = "failed"
                handle.error = str(exc)

        threading.Thread(target=run_warm_start, daemon=True).start()
        return {"workspace_id": workspace_id, "status": handle.status}

    @app.get("/workspaces/{workspace_id}")
    def get_workspace(workspace_id: str):
        handle = handle_of(workspace_id)
        with handle.lock:
            out = {
                "workspace_id": workspace_id,
                "status": handle.status,
                "version": handle.version,
                "error": handle.error,
            }
            if handle.post is not None:
                out["title"] = handle.post.title
                out["sections"] = _section_summary(handle.post)
                out["word_count"] = draft.word_count_total(handle.post)
                out["preview"] = draft.render_preview(handle.post)
            return out

    @app.get("/workspaces/{workspace_id}/outline")
    def get_outline(workspace_id: str):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            return {
                "outline": outline_to_dict(post.outline),
                "paragraphs": {
                    p.para_id: p.text for p in post.doc.paragraphs()
                },
                "selections": {
                    s.section_id: selection_to_dict(s.workspace.selection)
                    for s in post.sections
                },
                "version": handle.version,
            }

    @app.patch("/workspaces/{workspace_id}/sections/{section_id}/selection")
    def patch_selection(workspace_id: str, section_id: str, body: dict):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            check_version(handle, body)
            section = post.section(section_id)
            state = section.workspace.selection
            for toggle in body.get("toggles", []):
                kind, item_id = toggle.get("kind"), toggle.get("id")
                if kind == "bullet":
                    state = toggle_bullet(post.outline, state, item_id)
                elif kind == "paragraph":
                    state = toggle_paragraph(post.doc, state, item_id)
                else:
                    raise ValidationError(f"unknown toggle kind: {kind}", field="kind")
                emit(handle, "ui_action",
                     {"action": "toggle", "kind": kind, "id": item_id,
                      "section_id": section_id})
            section.workspace.selection = state
            handle.version += 1
            return {
                "version": handle.version,
                "selection": selection_to_dict(state),
            }

    @app.patch("/workspaces/{workspace_id}/sections/{section_id}/workspace")
    def patch_workspace_fields(workspace_id: str, section_id: str, body: dict):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            check_version(handle, body)
            ws = post.section(section_id).workspace
            fields = body.get("fields", {})
            for key in ("custom_bullets", "custom_instructions", "starting_text"):
                if key in fields:
                    setattr(ws, key, str(fields[key]))
                    # editing an instruction field is a writing action
                    emit(handle, "writing_action",
                         {"target": key, "section_id": section_id})
            for key in ("context_toggle", "grounding_toggle"):
                if key in fields:
                    setattr(ws, key, bool(fields[key]))
                    emit(handle, "ui_action",
                         {"action": "toggle_" + key, "section_id": section_id})
            if "length" in fields:
                ws.length = LengthKind(fields["length"])
                emit(handle, "ui_action",
                     {"action": "set_length", "section_id": section_id})
            handle.version += 1
            return {"version": handle.version}

    @app.post("/workspaces/{workspace_id}/sections/{section_id}/generate")
    def post_generate(workspace_id: str, section_id: str, body: dict | None = None):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            check_version(handle, body or {})
            record = draft.generate_section(post, section_id, gateway, clock=clock)
            emit(handle, "provider_call",
                 {"purpose": "generation", "section_id": section_id})
            handle.version += 1
            total = len(post.section(section_id).workspace.generations)
            return {
                "version": handle.version,
                "record": _record_to_dict(record),
                "pager": f"{total}/{total}",
            }

    @app.post("/workspaces/{workspace_id}/sections/{section_id}/modify")
    def post_modify(workspace_id: str, section_id: str, body: dict):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            check_version(handle, body)
            try:
                kind = ModificationKind(body.get("kind"))
            except ValueError:
                raise ValidationError(
                    f"unknown modification kind: {body.get('kind')}", field="kind"
                )
            length = LengthKind(body["length"]) if body.get("length") else None
            record = draft.modify_text(
                post,
                section_id,
                kind,
                body.get("text", ""),
                length=length,
                custom_instructions=body.get("custom_instructions", ""),
                gateway=gateway,
                clock=clock,
            )
            emit(handle, "provider_call",
                 {"purpose": "modification", "section_id": section_id})
            handle.version += 1
            total = len(post.section(section_id).workspace.modifications)
            return {
                "version": handle.version,
                "record": _record_to_dict(record),
                "pager": f"{total}/{total}",
            }

    @app.post("/workspaces/{workspace_id}/sections", status_code=201)
    def post_add_section(workspace_id: str, body: dict):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            check_version(handle, body)
            section = draft.add_section(
                post,
                after_id=body.get("after", ""),
                header=body.get("header", ""),
                mode=body.get("mode", "blank"),
                gateway=gateway,
                clock=clock,
            )
            emit(handle, "structural",
                 {"action": "add_section", "section_id": section.section_id})
            handle.version += 1
            return {
                "version": handle.version,
                "section_id": section.section_id,
                "position": post.position(section.section_id),
            }

    @app.patch("/workspaces/{workspace_id}/sections/{section_id}")
    def patch_section(workspace_id: str, section_id: str, body: dict):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            check_version(handle, body)
            action = body.get("action")
            result: dict = {}
            if action in ("move_up", "move_down"):
                moved = draft.move_section(
                    post, section_id, "up" if action == "move_up" else "down"
                )
                if moved:
                    emit(handle, "structural",
                         {"action": action, "section_id": section_id})
                result["moved"] = moved
            elif action == "delete":
                draft.delete_section(post, section_id)
                emit(handle, "structural",
                     {"action": "delete_section", "section_id": section_id})
            elif action == "edit":
                payload = draft.apply_edit(post, section_id, body.get("edit", {}))
                emit(handle, "writing_action", payload)
                handle.session.snapshot_if_due(clock(), draft.render_preview(post))
                result["body"] = post.section(section_id).body
            else:
                raise ValidationError(f"unknown action: {action}", field="action")
            handle.version += 1
            result["version"] = handle.version
            return result

    @app.get("/workspaces/{workspace_id}/sections/{section_id}/history")
    def get_history(workspace_id: str, section_id: str, kind: str = "generation",
                    index: int | None = None):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            ws = post.section(section_id).workspace
            if kind == "generation":
                records = ws.generations
            elif kind == "modification":
                records = ws.modifications
            else:
                raise ValidationError(f"unknown history kind: {kind}", field="kind")
            total = len(records)
            if index is None:
                index = total - 1
            if total == 0 or not 0 <= index < total:
                raise NotFoundError(f"no {kind} record at index {index}")
            return {
                "kind": kind,
                "index": index,
                "total": total,
                "pager": f"{index + 1}/{total}",
                "record": _record_to_dict(records[index]),
            }

    @app.post("/workspaces/{workspace_id}/save")
    def post_save(workspace_id: str, body: dict | None = None):
        handle = handle_of(workspace_id)
        with handle.lock:
            post = ready_post(handle)
            check_version(handle, body or {})
            handle.session.save(clock(), post, draft.render_preview(post))
            return {"version": handle.version, "saved": True}

    @app.get("/workspaces/{workspace_id}/analytics/report")
    def get_report(workspace_id: str):
        handle = handle_of(workspace_id)
        with handle.lock:
            handle_of(workspace_id)
            snapshots = store.snapshots(workspace_id)
            events = store.events(workspace_id)
            if not snapshots:
                raise NotFoundError("no snapshots recorded yet")
            initial = snapshots[0].text
            series = analytics.editing_power_series(initial, snapshots, events)
            delta = analytics.length_delta(initial, snapshots[-1].text)
            return PlainTextResponse(
                analytics.export_report(series, delta), media_type="text/csv"
            )

    app.state.cfg = cfg
    app.state.store = store
    app.state.handles = handles
    return app
