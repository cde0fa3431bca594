"""Canonical JSON serialization for workspace records.

``canonical_json`` fixes key order, spacing, and a trailing newline so that
save -> load -> save is byte-identical, which the persistence tests pin.
"""

from __future__ import annotations

import json

from .docmodel import document_from_dict, document_to_dict
from .draft import (
    BlogPost,
    BlogSection,
    GenerationRecord,
    ModificationRecord,
    SectionWorkspace,
)
from .errors import ValidationError
from .outline import SelectionState, outline_from_dict, outline_to_dict
from .prompts import LengthKind

FORMAT_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def selection_to_dict(state: SelectionState) -> dict:
    return {
        "selected_bullets": sorted(state.selected_bullets),
        "selected_paragraphs": sorted(state.selected_paragraphs),
    }


def selection_from_dict(data: dict) -> SelectionState:
    return SelectionState(
        selected_bullets=frozenset(data["selected_bullets"]),
        selected_paragraphs=frozenset(data["selected_paragraphs"]),
    )


def _generation_to_dict(r: GenerationRecord) -> dict:
    return {
        "inputs": r.inputs,
        "prompt": r.prompt,
        "output": r.output,
        "timestamp": r.timestamp,
        "template_version": r.template_version,
    }


def _modification_to_dict(r: ModificationRecord) -> dict:
    return {
        "kind": r.kind,
        "input_text": r.input_text,
        "instructions": r.instructions,
        "length": r.length,
        "grounding_toggle": r.grounding_toggle,
        "inputs": r.inputs,
        "prompt": r.prompt,
        "output": r.output,
        "timestamp": r.timestamp,
        "template_version": r.template_version,
    }


def workspace_to_dict(ws: SectionWorkspace) -> dict:
    return {
        "selection": selection_to_dict(ws.selection),
        "custom_bullets": ws.custom_bullets,
        "custom_instructions": ws.custom_instructions,
        "starting_text": ws.starting_text,
        "context_toggle": ws.context_toggle,
        "grounding_toggle": ws.grounding_toggle,
        "length": ws.length.value,
        "generations": [_generation_to_dict(r) for r in ws.generations],
        "modifications": [_modification_to_dict(r) for r in ws.modifications],
    }


def workspace_from_dict(data: dict) -> SectionWorkspace:
    return SectionWorkspace(
        selection=selection_from_dict(data["selection"]),
        custom_bullets=data["custom_bullets"],
        custom_instructions=data["custom_instructions"],
        starting_text=data["starting_text"],
        context_toggle=data["context_toggle"],
        grounding_toggle=data["grounding_toggle"],
        length=LengthKind(data["length"]),
        generations=[GenerationRecord(**r) for r in data["generations"]],
        modifications=[ModificationRecord(**r) for r in data["modifications"]],
    )


def post_to_dict(post: BlogPost) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "post_id": post.post_id,
        "title": post.title,
        "document": document_to_dict(post.doc),
        "outline": outline_to_dict(post.outline),
        "section_counter": post._section_counter,
        "sections": [
            {
                "section_id": s.section_id,
                "header": s.header,
                "body": s.body,
                "position": i,
                "degraded": s.degraded,
                "workspace": workspace_to_dict(s.workspace),
            }
            for i, s in enumerate(post.sections)
        ],
    }


def post_from_dict(data: dict) -> BlogPost:
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise ValidationError(
            f"unsupported workspace format version: {version}", field="format_version"
        )
    sections = [
        BlogSection(
            section_id=s["section_id"],
            header=s["header"],
            body=s["body"],
            degraded=s["degraded"],
            workspace=workspace_from_dict(s["workspace"]),
        )
        for s in sorted(data["sections"], key=lambda s: s["position"])
    ]
    return BlogPost(
        post_id=data["post_id"],
        title=data["title"],
        doc=document_from_dict(data["document"]),
        outline=outline_from_dict(data["outline"]),
        sections=sections,
        _section_counter=data["section_counter"],
    )
