"""Reverse source outline: per-paragraph bullets and selection state.

The outline carries exactly one bullet group per source paragraph, sized by
the paragraph's word-count quota. Selection over bullets and paragraphs is
kept as two independent sets: toggling one never touches the other, but
grounding always resolves a selected bullet back to its paragraph text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .docmodel import SourceDocument, bullet_quota
from .errors import UnknownIdError
from .gateway import CompletionGateway, CompletionRequest
from .prompts import (
    CROSS_TAB_NOTE_BULLET_SELECTED,
    CROSS_TAB_NOTE_PARAGRAPH_SELECTED,
    GroundingPair,
    outline_prompt,
    selection_prompt,
)

INITIAL_SELECTION_SIZE = 10

_BULLET_MARKER = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s*")


@dataclass(frozen=True)
class BulletPoint:
    bullet_id: str
    para_id: str
    text: str
    ordinal: int


@dataclass(frozen=True)
class Outline:
    doc_id: str
    groups: tuple[tuple[str, tuple[BulletPoint, ...]], ...]
    degraded_para_ids: frozenset[str] = frozenset()

    def bullets(self):
        for _, group in self.groups:
            yield from group

    def bullet(self, bullet_id: str) -> BulletPoint:
        try:
            return self._index()[bullet_id]
        except KeyError:
            raise UnknownIdError(f"unknown bullet id: {bullet_id}")

    def has_bullet(self, bullet_id: str) -> bool:
        return bullet_id in self._index()

    def total_bullets(self) -> int:
        return sum(len(group) for _, group in self.groups)

    def _index(self) -> dict[str, BulletPoint]:
        cached = getattr(self, "_bullet_index", None)
        if cached is None:
            cached = {b.bullet_id: b for b in self.bullets()}
            object.__setattr__(self, "_bullet_index", cached)
        return cached


@dataclass(frozen=True)
class SelectionState:
    selected_bullets: frozenset[str] = frozenset()
    selected_paragraphs: frozenset[str] = frozenset()


def _parse_bullet_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = _BULLET_MARKER.sub("", raw).strip()
        if line:
            lines.append(line)
    return lines


def _fit_to_quota(lines: list[str], quota: int) -> list[str]:
    """Trim overlong output; pad short output by splitting lines in two."""
    lines = list(lines)
    while len(lines) < quota:
        # split the longest line at its most central sentence boundary
        candidates = [
            (len(line), i) for i, line in enumerate(lines) if ". " in line
        ]
        if candidates:
            _, i = max(candidates)
            head, tail = lines[i].split(". ", 1)
            lines[i : i + 1] = [head + ".", tail]
        elif lines:
            lines.append(lines[-1])
        else:
            lines.append("(no summary produced)")
    return lines[:quota]


def build_outline(doc: SourceDocument, gateway: CompletionGateway) -> Outline:
    """Generate the reverse source outline: one bullet group per paragraph.

    Provider output with the wrong number of lines is re-requested once,
    then trimmed/padded and the paragraph flagged degraded.
    """
    groups = []
    degraded: set[str] = set()
    for paragraph in doc.paragraphs():
        quota = bullet_quota(paragraph.word_count)
        prompt = outline_prompt(paragraph.text, quota)
        lines = _parse_bullet_lines(
            gateway.complete(CompletionRequest(prompt, "outline")).text
        )
        if len(lines) != quota:
            lines = _parse_bullet_lines(
                gateway.complete(CompletionRequest(prompt, "outline")).text
            )
        if len(lines) != quota:
            lines = _fit_to_quota(lines, quota)
            degraded.add(paragraph.para_id)
        bullets = tuple(
            BulletPoint(
                bullet_id=f"{paragraph.para_id}.b{ordinal}",
                para_id=paragraph.para_id,
                text=text,
                ordinal=ordinal,
            )
            for ordinal, text in enumerate(lines)
        )
        groups.append((paragraph.para_id, bullets))
    return Outline(
        doc_id=doc.doc_id, groups=tuple(groups), degraded_para_ids=frozenset(degraded)
    )


def _parse_selected_ids(text: str, outline: Outline) -> tuple[list[str], bool]:
    """Valid, deduplicated ids in response order; flag any repairs needed."""
    raw = re.findall(r"[\w.\-]+", text)
    seen: set[str] = set()
    valid: list[str] = []
    repaired = False
    for token in raw:
        token = token.strip("[]")
        if not outline.has_bullet(token) or token in seen:
            repaired = True
            continue
        seen.add(token)
        valid.append(token)
    return valid, repaired


def select_initial(
    outline: Outline,
    section_header: str,
    gateway: CompletionGateway,
    k: int = INITIAL_SELECTION_SIZE,
) -> tuple[list[str], bool]:
    """Ask the provider for the k bullets most relevant to a section.

    Returns min(k, total bullets) distinct valid ids and a degraded flag.
    Invalid or duplicate ids are dropped; the shortfall is re-requested
    exactly once against the remaining bullets.
    """
    all_bullets = [(b.bullet_id, b.text) for b in outline.bullets()]
    target = min(k, len(all_bullets))
    if target == 0:
        return [], False
    response = gateway.complete(
        CompletionRequest(selection_prompt(all_bullets, section_header, target), "selection")
    ).text
    selected, degraded = _parse_selected_ids(response, outline)
    selected = selected[:target]
    if len(selected) < target:
        degraded = True
        chosen = set(selected)
        remaining = [(bid, text) for bid, text in all_bullets if bid not in chosen]
        shortfall = target - len(selected)
        if remaining:
            response = gateway.complete(
                CompletionRequest(
                    selection_prompt(remaining, section_header, shortfall), "selection"
                )
            ).text
            extra, _ = _parse_selected_ids(response, outline)
            for bid in extra:
                if bid not in chosen and len(selected) < target:
                    chosen.add(bid)
                    selected.append(bid)
    return selected, degraded


def toggle_bullet(outline: Outline, state: SelectionState, bullet_id: str) -> SelectionState:
    """Flip one bullet's membership; the paragraph set is untouched."""
    if not outline.has_bullet(bullet_id):
        raise UnknownIdError(f"unknown bullet id: {bullet_id}")
    bullets = set(state.selected_bullets)
    bullets.symmetric_difference_update({bullet_id})
    return SelectionState(
        selected_bullets=frozenset(bullets),
        selected_paragraphs=state.selected_paragraphs,
    )


def toggle_paragraph(doc: SourceDocument, state: SelectionState, para_id: str) -> SelectionState:
    """Flip one paragraph's membership; the bullet set is untouched."""
    if not doc.has_paragraph(para_id):
        raise UnknownIdError(f"unknown paragraph id: {para_id}")
    paragraphs = set(state.selected_paragraphs)
    paragraphs.symmetric_difference_update({para_id})
    return SelectionState(
        selected_bullets=state.selected_bullets,
        selected_paragraphs=frozenset(paragraphs),
    )


@dataclass(frozen=True)
class ViewEntry:
    """One slot in the show-selected-only view.

    ``text`` is None when the item itself is hidden but a cross-tab note
    must still occupy its slot.
    """

    item_id: str
    text: str | None = None
    note: str | None = None


def selected_view(
    outline: Outline,
    doc: SourceDocument,
    state: SelectionState,
    tab: str,
) -> list[ViewEntry]:
    """Filtered view for the active tab plus cross-tab notes.

    On the paragraphs tab, an unselected paragraph with a selected bullet
    gets a note entry at its slot; the reverse applies on the bullets tab.
    """
    if tab not in ("bullets", "paragraphs"):
        raise UnknownIdError(f"unknown tab: {tab}")
    entries: list[ViewEntry] = []
    if tab == "paragraphs":
        bullets_by_para: dict[str, bool] = {}
        for b in outline.bullets():
            if b.bullet_id in state.selected_bullets:
                bullets_by_para[b.para_id] = True
        for p in doc.paragraphs():
            if p.para_id in state.selected_paragraphs:
                entries.append(ViewEntry(item_id=p.para_id, text=p.text))
            elif bullets_by_para.get(p.para_id):
                entries.append(
                    ViewEntry(item_id=p.para_id, note=CROSS_TAB_NOTE_BULLET_SELECTED)
                )
    else:
        for b in outline.bullets():
            if b.bullet_id in state.selected_bullets:
                entries.append(ViewEntry(item_id=b.bullet_id, text=b.text))
            elif b.para_id in state.selected_paragraphs:
                entries.append(
                    ViewEntry(item_id=b.bullet_id, note=CROSS_TAB_NOTE_PARAGRAPH_SELECTED)
                )
    return entries


def grounding_set(
    outline: Outline, doc: SourceDocument, state: SelectionState
) -> tuple[GroundingPair, ...]:
    """Paragraph-grounded material for the current selection.

    Every selected bullet contributes its paragraph even when the paragraph
    itself is unselected; paragraphs are deduplicated in document order.
    """
    selected_by_para: dict[str, list[BulletPoint]] = {}
    for b in outline.bullets():
        if b.bullet_id in state.selected_bullets:
            selected_by_para.setdefault(b.para_id, []).append(b)
    pairs = []
    for p in doc.paragraphs():
        bullets = selected_by_para.get(p.para_id, [])
        if bullets or p.para_id in state.selected_paragraphs:
            pairs.append(
                GroundingPair(
                    bullet_texts=tuple(b.text for b in sorted(bullets, key=lambda b: b.ordinal)),
                    paragraph_text=p.text,
                )
            )
    return tuple(pairs)


def outline_to_dict(outline: Outline) -> dict:
    return {
        "doc_id": outline.doc_id,
        "degraded_para_ids": sorted(outline.degraded_para_ids),
        "groups": [
            {
                "para_id": para_id,
                "bullets": [
                    {
                        "bullet_id": b.bullet_id,
                        "para_id": b.para_id,
                        "text": b.text,
                        "ordinal": b.ordinal,
                    }
                    for b in group
                ],
            }
            for para_id, group in outline.groups
        ],
    }


def outline_from_dict(data: dict) -> Outline:
    return Outline(
        doc_id=data["doc_id"],
        degraded_para_ids=frozenset(data.get("degraded_para_ids", [])),
        groups=tuple(
            (
                g["para_id"],
                tuple(
                    BulletPoint(
                        bullet_id=b["bullet_id"],
                        para_id=b["para_id"],
                        text=b["text"],
                        ordinal=b["ordinal"],
                    )
                    for b in g["bullets"]
                ),
            )
            for g in data["groups"]
        ),
    )
