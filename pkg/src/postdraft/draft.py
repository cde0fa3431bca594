"""Blog-post state machine: warm start, drafting, revising, and histories.

Each section owns an isolated workspace (selections, custom inputs,
toggles, histories). Generation and modification append immutable records
to the section's history and never touch the body text; only span edits
via apply_edit change a body, and each such call is exactly one writing
action.
"""

from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, field

from .docmodel import SourceDocument, count_words
from .errors import ProviderError, UnknownIdError, ValidationError
from .gateway import CompletionGateway, CompletionRequest
from .outline import (
    Outline,
    SelectionState,
    build_outline,
    grounding_set,
    select_initial,
)
from .prompts import (
    INITIAL_SECTION_KINDS,
    SECTION_GUIDELINES,
    TEMPLATE_VERSION,
    GenerationContext,
    LengthKind,
    ModificationKind,
    ModificationOptions,
    generation_prompt,
    modification_prompt,
)


@dataclass(frozen=True)
class GenerationRecord:
    """Immutable input snapshot + rendered prompt + provider output."""

    inputs: dict
    prompt: str
    output: str
    timestamp: float
    template_version: str = TEMPLATE_VERSION


@dataclass(frozen=True)
class ModificationRecord:
    kind: str
    input_text: str
    instructions: str
    length: str
    grounding_toggle: bool
    inputs: dict
    prompt: str
    output: str
    timestamp: float
    template_version: str = TEMPLATE_VERSION


@dataclass
class SectionWorkspace:
    """Per-section drafting state; strictly isolated from other sections."""

    selection: SelectionState = field(default_factory=SelectionState)
    custom_bullets: str = ""
    custom_instructions: str = ""
    starting_text: str = ""
    context_toggle: bool = True
    grounding_toggle: bool = True
    length: LengthKind = LengthKind.AUTO
    generations: list[GenerationRecord] = field(default_factory=list)
    modifications: list[ModificationRecord] = field(default_factory=list)


@dataclass
class BlogSection:
    section_id: str
    header: str
    body: str = ""
    workspace: SectionWorkspace = field(default_factory=SectionWorkspace)
    degraded: bool = False


@dataclass
class BlogPost:
    post_id: str
    title: str
    doc: SourceDocument
    outline: Outline
    sections: list[BlogSection] = field(default_factory=list)
    _section_counter: int = 0

    def new_section_id(self) -> str:
        self._section_counter += 1
        return f"s{self._section_counter}"

    def section(self, section_id: str) -> BlogSection:
        for section in self.sections:
            if section.section_id == section_id:
                return section
        raise UnknownIdError(f"unknown section id: {section_id}")

    def position(self, section_id: str) -> int:
        for i, section in enumerate(self.sections):
            if section.section_id == section_id:
                return i
        raise UnknownIdError(f"unknown section id: {section_id}")


def prior_sections_text(post: BlogPost, section_id: str) -> str:
    """Headers and bodies of every section above the given one."""
    parts = []
    for section in post.sections:
        if section.section_id == section_id:
            break
        parts.append(f"## {section.header}\n\n{section.body}".rstrip())
    return "\n\n".join(parts)


def _generation_context(post: BlogPost, section: BlogSection) -> GenerationContext:
    ws = section.workspace
    return GenerationContext(
        section_header=section.header,
        grounding=grounding_set(post.outline, post.doc, ws.selection),
        guidelines=ws.custom_instructions,
        length=ws.length,
        custom_bullets=ws.custom_bullets,
        starting_text=ws.starting_text,
        prior_sections_text=prior_sections_text(post, section.section_id),
        include_prior=ws.context_toggle,
    )


def _snapshot_inputs(post: BlogPost, section: BlogSection) -> dict:
    ws = section.workspace
    return {
        "section_header": section.header,
        "selected_bullets": sorted(ws.selection.selected_bullets),
        "selected_paragraphs": sorted(ws.selection.selected_paragraphs),
        "custom_bullets": ws.custom_bullets,
        "custom_instructions": ws.custom_instructions,
        "starting_text": ws.starting_text,
        "context_toggle": ws.context_toggle,
        "grounding_toggle": ws.grounding_toggle,
        "length": ws.length.value,
        "prior_sections_text": prior_sections_text(post, section.section_id),
    }


def replay_generation_prompt(post: BlogPost, record: GenerationRecord) -> str:
    """Re-render the prompt a generation record was produced from."""
    inputs = record.inputs
    state = SelectionState(
        selected_bullets=frozenset(inputs["selected_bullets"]),
        selected_paragraphs=frozenset(inputs["selected_paragraphs"]),
    )
    ctx = GenerationContext(
        section_header=inputs["section_header"],
        grounding=grounding_set(post.outline, post.doc, state),
        guidelines=inputs["custom_instructions"],
        length=LengthKind(inputs["length"]),
        custom_bullets=inputs["custom_bullets"],
        starting_text=inputs["starting_text"],
        prior_sections_text=inputs["prior_sections_text"],
        include_prior=inputs["context_toggle"],
    )
    return generation_prompt(ctx)


def warm_start(
    doc: SourceDocument,
    gateway: CompletionGateway,
    clock=time.time,
    post_id: str | None = None,
) -> BlogPost:
    """Produce the initial draft: outline, per-section selections, and four
    sequentially generated sections (introduction, methods, results,
    conclusion), each prompt carrying the sections generated before it.

    A provider failure mid-pipeline leaves that section empty and flagged;
    later sections still generate.
    """
    outline = build_outline(doc, gateway)
    post = BlogPost(
        post_id=post_id or f"post-{uuid.uuid4().hex[:8]}",
        title=doc.title,
        doc=doc,
        outline=outline,
    )
    for kind in INITIAL_SECTION_KINDS:
        header = kind.value.capitalize()
        section = BlogSection(post.new_section_id(), header=header)
        section.workspace.custom_instructions = SECTION_GUIDELINES[kind]
        post.sections.append(section)
        try:
            ids, degraded = select_initial(outline, header, gateway)
        except ProviderError:
            section.degraded = True
            continue
        section.workspace.selection = SelectionState(selected_bullets=frozenset(ids))
        section.degraded = degraded
        try:
            record = _run_generation(post, section, gateway, clock)
        except ProviderError:
            section.degraded = True
            continue
        # warm start is the one path that writes the body directly: the
        # initial draft must exist before the user can copy anything in
        section.body = record.output
    return post


def _run_generation(
    post: BlogPost, section: BlogSection, gateway: CompletionGateway, clock
) -> GenerationRecord:
    prompt = generation_prompt(_generation_context(post, section))
    result = gateway.complete(CompletionRequest(prompt, "generation"))
    record = GenerationRecord(
        inputs=_snapshot_inputs(post, section),
        prompt=prompt,
        output=result.text,
        timestamp=clock(),
    )
    section.workspace.generations.append(record)
    return record


def generate_section(
    post: BlogPost, section_id: str, gateway: CompletionGateway, clock=time.time
) -> GenerationRecord:
    """Generate text for one section from its live workspace.

    Appends a GenerationRecord; the body is never overwritten (the user
    copies output in via apply_edit).
    """
    section = post.section(section_id)
    return _run_generation(post, section, gateway, clock)


def add_section(
    post: BlogPost,
    after_id: str,
    header: str,
    mode: str = "blank",
    gateway: CompletionGateway | None = None,
    clock=time.time,
) -> BlogSection:
    """Insert a new section below ``after_id``.

    Blank mode inserts an empty section. Generated mode selects bullets for
    the header, generates text into the history, and stores the selection;
    the body starts empty, consistent with generate_section.
    """
    if not header.strip():
        raise ValidationError("section header must be non-empty", field="header")
    if mode not in ("blank", "generated"):
        raise ValidationError(f"unknown add mode: {mode}", field="mode")
    position = post.position(after_id)
    section = BlogSection(post.new_section_id(), header=header)
    post.sections.insert(position + 1, section)
    if mode == "generated":
        if gateway is None:
            raise ValidationError("generated mode requires a provider", field="mode")
        ids, degraded = select_initial(post.outline, header, gateway)
        section.workspace.selection = SelectionState(selected_bullets=frozenset(ids))
        section.degraded = degraded
        _run_generation(post, section, gateway, clock)
    return section


def move_section(post: BlogPost, section_id: str, direction: str) -> bool:
    """Move a section one slot up or down; out-of-range moves are no-ops."""
    if direction not in ("up", "down"):
        raise ValidationError(f"unknown direction: {direction}", field="direction")
    i = post.position(section_id)
    j = i - 1 if direction == "up" else i + 1
    if j < 0 or j >= len(post.sections):
        return False
    post.sections[i], post.sections[j] = post.sections[j], post.sections[i]
    return True


def delete_section(post: BlogPost, section_id: str) -> None:
    post.sections.pop(post.position(section_id))


def modify_text(
    post: BlogPost,
    section_id: str,
    kind: ModificationKind,
    text: str,
    length: LengthKind | None = None,
    custom_instructions: str = "",
    gateway: CompletionGateway | None = None,
    clock=time.time,
) -> ModificationRecord:
    """Run one modification macro (or custom) over pasted text.

    Appends a ModificationRecord to the section's history; the body is
    untouched.
    """
    section = post.section(section_id)
    if not text:
        raise ValidationError("text to modify must be non-empty", field="text")
    if kind == ModificationKind.CUSTOM and not custom_instructions.strip():
        raise ValidationError(
            "custom modification requires custom instructions",
            field="custom_instructions",
        )
    ws = section.workspace
    options = ModificationOptions(
        length=length,
        grounding=grounding_set(post.outline, post.doc, ws.selection),
        grounding_toggle=ws.grounding_toggle,
        custom_instructions=custom_instructions,
    )
    prompt = modification_prompt(kind, text, options)
    result = gateway.complete(CompletionRequest(prompt, "modification"))
    record = ModificationRecord(
        kind=kind.value,
        input_text=text,
        instructions=custom_instructions,
        length=(length or LengthKind.AUTO).value,
        grounding_toggle=ws.grounding_toggle,
        inputs={
            "selected_bullets": sorted(ws.selection.selected_bullets),
            "selected_paragraphs": sorted(ws.selection.selected_paragraphs),
        },
        prompt=prompt,
        output=result.text,
        timestamp=clock(),
    )
    ws.modifications.append(record)
    return record


def apply_edit(post: BlogPost, section_id: str, edit: dict) -> dict:
    """Apply one span edit to a section body.

    ``edit`` is ``{"op": "insert", "pos": int, "text": str}`` or
    ``{"op": "delete", "start": int, "end": int}``. Returns the
    writing-action event payload; exactly one per call, so a paste is a
    single action regardless of length.
    """
    section = post.section(section_id)
    body = section.body
    op = edit.get("op")
    if op == "insert":
        pos, text = edit.get("pos"), edit.get("text", "")
        if not isinstance(pos, int) or pos < 0 or pos > len(body):
            raise ValidationError(f"insert position {pos} out of bounds", field="pos")
        section.body = body[:pos] + text + body[pos:]
        return {
            "target": "body",
            "section_id": section_id,
            "op": "insert",
            "pos": pos,
            "text": text,
        }
    if op == "delete":
        start, end = edit.get("start"), edit.get("end")
        if (
            not isinstance(start, int)
            or not isinstance(end, int)
            or not 0 <= start <= end <= len(body)
        ):
            raise ValidationError(
                f"delete span [{start}, {end}) out of bounds", field="span"
            )
        section.body = body[:start] + body[end:]
        return {
            "target": "body",
            "section_id": section_id,
            "op": "delete",
            "start": start,
            "end": end,
        }
    raise ValidationError(f"unknown edit op: {op}", field="op")


def word_count_total(post: BlogPost) -> int:
    return sum(count_words(section.body) for section in post.sections)


def render_preview(post: BlogPost) -> str:
    """Headers and bodies in position order."""
    parts = [f"## {s.header}\n\n{s.body}".rstrip() for s in post.sections]
    return "\n\n".join(parts)


def export_markdown(post: BlogPost) -> str:
    """The draft as markdown with section headers as second-level headings."""
    return f"# {post.title}\n\n" + render_preview(post) + "\n"
