"""Paragraph-addressed source document model and ingestion.

Two ingestion paths exist: a structured JSON record
``{title, sections: [{header, paragraphs: [text, ...]}]}`` and plain
markdown, where top-level ``#`` headings delimit sections and blank lines
delimit paragraphs. Every paragraph receives a document-unique id that is
stable across save/load; all outline and grounding machinery addresses
paragraphs through these ids.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterator

from .errors import ValidationError

PREAMBLE_HEADER = "Preamble"


@dataclass(frozen=True)
class SourceParagraph:
    """One paragraph of the source document.

    ``word_count`` is the number of whitespace-delimited tokens; it drives
    the per-paragraph bullet quota.
    """

    para_id: str
    text: str
    word_count: int


@dataclass(frozen=True)
class SourceSection:
    header: str
    paragraphs: tuple[SourceParagraph, ...]


@dataclass(frozen=True)
class SourceDocument:
    doc_id: str
    title: str
    sections: tuple[SourceSection, ...]

    def paragraphs(self) -> Iterator[SourceParagraph]:
        """All paragraphs in document order."""
        for section in self.sections:
            yield from section.paragraphs

    def paragraph(self, para_id: str) -> SourceParagraph:
        try:
            return self._index()[para_id]
        except KeyError:
            raise ValidationError(f"unknown paragraph id: {para_id}", field="para_id")

    def has_paragraph(self, para_id: str) -> bool:
        return para_id in self._index()

    def _index(self) -> dict[str, SourceParagraph]:
        cached = getattr(self, "_para_index", None)
        if cached is None:
            cached = {p.para_id: p for p in self.paragraphs()}
            object.__setattr__(self, "_para_index", cached)
        return cached


def count_words(text: str) -> int:
    """Whitespace-delimited token count; no punctuation stripping."""
    return len(text.split())


def bullet_quota(word_count: int) -> int:
    """Bullets owed to a paragraph of the given length: 1, 2, or 3.

    Paragraphs over 100 words get 3, 51-100 words get 2, under 51 get 1.
    """
    if word_count < 0:
        raise ValidationError("word_count must be non-negative", field="word_count")
    if word_count > 100:
        return 3
    if word_count >= 51:
        return 2
    return 1


def _derive_doc_id(title: str, sections: list[tuple[str, list[str]]]) -> str:
    h = hashlib.sha256()
    h.update(title.encode("utf-8"))
    for header, paragraphs in sections:
        h.update(b"\x00" + header.encode("utf-8"))
        for text in paragraphs:
            h.update(b"\x01" + text.encode("utf-8"))
    return "doc-" + h.hexdigest()[:12]


def _assemble(title: str, raw_sections: list[tuple[str, list[str]]]) -> SourceDocument:
    sections = []
    counter = 0
    for header, texts in raw_sections:
        paragraphs = []
        for text in texts:
            counter += 1
            paragraphs.append(
                SourceParagraph(
                    para_id=f"p{counter:04d}",
                    text=text,
                    word_count=count_words(text),
                )
            )
        sections.append(SourceSection(header=header, paragraphs=tuple(paragraphs)))
    return SourceDocument(
        doc_id=_derive_doc_id(title, raw_sections),
        title=title,
        sections=tuple(sections),
    )


def ingest_structured(payload: dict) -> SourceDocument:
    """Build a SourceDocument from the structured JSON record format.

    Raises ValidationError naming the offending field on malformed input.
    """
    if not isinstance(payload, dict):
        raise ValidationError("payload must be an object", field="payload")
    title = payload.get("title")
    if not isinstance(title, str) or not title.strip():
        raise ValidationError("title must be a non-empty string", field="title")
    sections = payload.get("sections")
    if not isinstance(sections, list) or not sections:
        raise ValidationError("sections must be a non-empty list", field="sections")

    raw_sections: list[tuple[str, list[str]]] = []
    for i, sec in enumerate(sections):
        if not isinstance(sec, dict):
            raise ValidationError(f"sections[{i}] must be an object", field=f"sections[{i}]")
        header = sec.get("header")
        if not isinstance(header, str) or not header.strip():
            raise ValidationError(
                f"sections[{i}].header must be non-empty", field=f"sections[{i}].header"
            )
        paragraphs = sec.get("paragraphs", [])
        if not isinstance(paragraphs, list):
            raise ValidationError(
                f"sections[{i}].paragraphs must be a list",
                field=f"sections[{i}].paragraphs",
            )
        texts = []
        for j, text in enumerate(paragraphs):
            if not isinstance(text, str) or not text.strip():
                raise ValidationError(
                    f"sections[{i}].paragraphs[{j}] must be non-empty text",
                    field=f"sections[{i}].paragraphs[{j}]",
                )
            texts.append(text)
        raw_sections.append((header, texts))
    return _assemble(title, raw_sections)


def ingest_markdown(text: str, title: str = "Untitled") -> SourceDocument:
    """Build a SourceDocument from markdown text.

    Top-level ``#`` headings become sections; blank-line-separated blocks
    become paragraphs; any heading-free preamble becomes a section titled
    "Preamble". Paragraph text is preserved byte-exactly.
    """
    if not text.strip():
        raise ValidationError("markdown text is empty", field="text")

    raw_sections: list[tuple[str, list[str]]] = []
    block: list[str] = []

    def flush_block():
        if block:
            if not raw_sections:
                raw_sections.append((PREAMBLE_HEADER, []))
            raw_sections[-1][1].append("\n".join(block))
            block.clear()

    for line in text.splitlines():
        if line.startswith("# "):
            flush_block()
            raw_sections.append((line[2:].strip() or "Untitled Section", []))
        elif not line.strip():
            flush_block()
        else:
            block.append(line)
    flush_block()

    total = sum(len(paras) for _, paras in raw_sections)
    if total == 0:
        raise ValidationError("no paragraphs found in markdown", field="text")
    return _assemble(title, raw_sections)


def document_to_markdown(doc: SourceDocument) -> str:
    """Inverse of ingest_markdown for round-trip checks and display."""
    parts = []
    for section in doc.sections:
        parts.append(f"# {section.header}")
        for p in section.paragraphs:
            parts.append(p.text)
    return "\n\n".join(parts) + "\n"


def document_to_dict(doc: SourceDocument) -> dict:
    return {
        "doc_id": doc.doc_id,
        "title": doc.title,
        "sections": [
            {
                "header": s.header,
                "paragraphs": [
                    {"para_id": p.para_id, "text": p.text, "word_count": p.word_count}
                    for p in s.paragraphs
                ],
            }
            for s in doc.sections
        ],
    }


def document_from_dict(data: dict) -> SourceDocument:
    """Rehydrate a previously serialized document, keeping stored para_ids."""
    sections = tuple(
        SourceSection(
            header=s["header"],
            paragraphs=tuple(
                SourceParagraph(
                    para_id=p["para_id"],
                    text=p["text"],
                    word_count=p["word_count"],
                )
                for p in s["paragraphs"]
            ),
        )
        for s in data["sections"]
    )
    return SourceDocument(doc_id=data["doc_id"], title=data["title"], sections=sections)
