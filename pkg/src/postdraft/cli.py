"""Command-line interface: serve, ingest, warm-start, analyze."""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import analytics, draft
from .api import StepClock, create_app
from .config import build_gateway, load_config
from .docmodel import document_to_dict, ingest_markdown, ingest_structured
from .errors import PostDraftError
from .store import WorkspaceStore


def _load_document(path: Path, fmt: str):
    text = path.read_text(encoding="utf-8")
    if fmt == "json":
        return ingest_structured(json.loads(text))
    return ingest_markdown(text, title=path.stem)


@click.group()
def main():
    """Interactive reverse-outline summarization workbench."""


@main.command()
@click.option("--port", type=int, default=None, help="Port to listen on.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--mock", is_flag=True, default=False,
              help="Serve with the deterministic mock provider (no network).")
def serve(port, config_path, mock):
    """Run the HTTP API server."""
    import uvicorn

    cfg = load_config(config_path, mock=mock or None)
    if port is not None:
        cfg.port = port
    uvicorn.run(create_app(cfg), host="127.0.0.1", port=cfg.port)


@main.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["json", "markdown"]),
              default="json", show_default=True)
def ingest(file, fmt):
    """Parse a document and print its paragraph-addressed model as JSON."""
    try:
        doc = _load_document(file, fmt)
    except (PostDraftError, ValueError) as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(document_to_dict(doc), indent=2, ensure_ascii=False))


@main.command("warm-start")
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["json", "markdown"]),
              default="json", show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True,
              help="Directory receiving the draft markdown and workspace record.")
@click.option("--mock", is_flag=True, default=False,
              help="Use the deterministic mock provider.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def warm_start_cmd(file, fmt, out_dir, mock, config_path):
    """Build the outline, select bullets, and generate the initial draft."""
    cfg = load_config(config_path, mock=mock or None)
    try:
        doc = _load_document(file, fmt)
        gateway = build_gateway(cfg)
        clock = StepClock() if cfg.mock else time.time
        post = draft.warm_start(doc, gateway, clock=clock, post_id="warm-start")
    except (PostDraftError, ValueError) as exc:
        raise click.ClickException(str(exc))
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "draft.md").write_text(draft.export_markdown(post), encoding="utf-8")
    store = WorkspaceStore(out_dir)
    store.save_workspace("workspace", post)
    click.echo(f"wrote {out_dir / 'draft.md'} ({len(post.sections)} sections)")


@main.command()
@click.argument("workspace_dir", type=click.Path(exists=True, path_type=Path))
@click.option("--out", "out_path", type=click.Path(path_type=Path),
              default=Path("report.csv"), show_default=True)
def analyze(workspace_dir, out_path):
    """Compute editing-power metrics from a workspace's logs and snapshots."""
    workspace_dir = workspace_dir.resolve()
    store = WorkspaceStore(workspace_dir.parent)
    workspace_id = workspace_dir.name
    snapshots = store.snapshots(workspace_id)
    events = store.events(workspace_id)
    if not snapshots:
        raise click.ClickException(f"no snapshots found under {workspace_dir}")
    initial = snapshots[0].text
    series = analytics.editing_power_series(initial, snapshots, events)
    delta = analytics.length_delta(initial, snapshots[-1].text)
    report = analytics.export_report(series, delta)
    out_path.write_text(report, encoding="utf-8")
    click.echo(
        f"wrote {out_path}: {len(series.points)} snapshots, "
        f"{analytics.writing_actions(events)} writing actions, "
        f"length delta {delta:+d}"
    )


if __name__ == "__main__":
    sys.exit(main())
