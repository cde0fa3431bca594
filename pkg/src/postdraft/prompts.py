"""Prompt templates for outlining, selection, drafting, and revision.

All renderers are pure functions of their inputs: identical inputs produce
byte-identical prompts, which is what lets generation/modification records
replay exactly. The canonical wordings here are versioned; workspace
records store the template version used to produce each output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ValidationError

TEMPLATE_VERSION = "1"

# Verbatim cross-tab note shown by the show-selected-only filter when a
# paragraph is hidden but one of its bullets remains selected.
CROSS_TAB_NOTE_BULLET_SELECTED = "A corresponding bulletpoint(s) is still selected"
CROSS_TAB_NOTE_PARAGRAPH_SELECTED = "A corresponding paragraph is still selected"


class SectionKind(str, Enum):
    INTRODUCTION = "introduction"
    METHODS = "methods"
    RESULTS = "results"
    CONCLUSION = "conclusion"
    CUSTOM = "custom"


INITIAL_SECTION_KINDS = (
    SectionKind.INTRODUCTION,
    SectionKind.METHODS,
    SectionKind.RESULTS,
    SectionKind.CONCLUSION,
)

# Default per-section instruction strings pre-filling the custom-instructions
# field for the four initial sections.
SECTION_GUIDELINES = {
    SectionKind.INTRODUCTION: (
        "-Present hook (e.g., interesting fact, quote, promise of change in "
        "knowledge, illustrating example of the topic). If context allows, "
        "visual or sensory elements are helpful anchors."
        "-Provide high-level description of problem being solved."
        "-Explain why work is interesting and a solution to the problem matters."
        "-Do not repeat information from prior blogpost sections."
    ),
    SectionKind.METHODS: (
        "-Focus on methods and do NOT discuss results."
        "-Do not repeat information from prior blogpost sections."
    ),
    SectionKind.RESULTS: (
        "-State key takeaway."
        "-Discuss up to 3 most interesting aspects of work."
        "-Do not repeat information from prior blogpost sections."
    ),
    SectionKind.CONCLUSION: (
        "-Restate key takeaway in new way."
        "-Present future work ideas. [optional]"
        "-Loop back to hook. [optional]"
    ),
    SectionKind.CUSTOM: "",
}


class LengthKind(str, Enum):
    AUTO = "auto"
    ONE_SENTENCE = "one_sentence"
    ONE_PARAGRAPH = "one_paragraph"
    FEW_PARAGRAPHS = "few_paragraphs"


GENERATION_LENGTH_TEXT = {
    LengthKind.AUTO: "around 125 to 250 words and around one to three paragraphs",
    LengthKind.ONE_SENTENCE: "one sentence",
    LengthKind.ONE_PARAGRAPH: "one paragraph",
    LengthKind.FEW_PARAGRAPHS: "a few paragraphs",
}


class ModificationKind(str, Enum):
    EXPAND = "expand"
    CONDENSE = "condense"
    SIMPLER_TERMS = "simpler_terms"
    LESS_DRAMATIC = "less_dramatic"
    MORE_DRAMATIC = "more_dramatic"
    CUSTOM = "custom"


_SAME_LENGTH = (
    "about the same length that it currently is "
    "(no more than 25 words longer or shorter)"
)

# Automatic length directive attached to each modification kind.
MODIFICATION_LENGTH_TEXT = {
    ModificationKind.EXPAND: "twice the length that it currently is",
    ModificationKind.CONDENSE: "half the length that it currently is",
    ModificationKind.SIMPLER_TERMS: _SAME_LENGTH,
    ModificationKind.LESS_DRAMATIC: _SAME_LENGTH,
    ModificationKind.MORE_DRAMATIC: _SAME_LENGTH,
    ModificationKind.CUSTOM: _SAME_LENGTH,
}

MODIFICATION_CLAUSE = {
    ModificationKind.EXPAND: "Expand the text.",
    ModificationKind.CONDENSE: "Condense the text.",
    ModificationKind.SIMPLER_TERMS: (
        "Rewrite the text in simpler terms so that it is more understandable "
        "to a layperson."
    ),
    ModificationKind.LESS_DRAMATIC: (
        "Rewrite the text in a less dramatic tone to align better with the "
        "unadorned language of scientific writing."
    ),
    ModificationKind.MORE_DRAMATIC: (
        "Rewrite the text in a more dramatic tone to better capture readers' "
        "attention."
    ),
    ModificationKind.CUSTOM: (
        "Modify the text according to the custom instructions below."
    ),
}

_COUNT_WORDS = {1: "one", 2: "two", 3: "three"}


@dataclass(frozen=True)
class GroundingPair:
    """Bullet texts (possibly empty) plus the full source paragraph text."""

    bullet_texts: tuple[str, ...]
    paragraph_text: str


def outline_prompt(paragraph: str, quota: int) -> str:
    """Prompt asking for exactly ``quota`` bullets summarizing ``paragraph``."""
    if quota not in (1, 2, 3):
        raise ValidationError("quota must be 1, 2, or 3", field="quota")
    count = _COUNT_WORDS[quota]
    plural = "s" if quota > 1 else ""
    return (
        f"Summarize the following paragraph in exactly {count} concise bullet "
        f"point{plural}.\n"
        "Write one bullet point per line, with no numbering and no bullet "
        "symbols.\n"
        "\n"
        "Paragraph:\n"
        f"{paragraph}\n"
    )


def selection_prompt(bullets: list[tuple[str, str]], section_header: str, k: int) -> str:
    """Prompt listing every bullet with its id and asking for the top-k ids."""
    if k < 1:
        raise ValidationError("k must be >= 1", field="k")
    lines = "\n".join(f"[{bullet_id}] {text}" for bullet_id, text in bullets)
    return (
        "Below is an outline of a source document. Each bullet point is "
        "preceded by its id in square brackets.\n"
        "\n"
        f"{lines}\n"
        "\n"
        f"Select the {k} bullet points most relevant to the "
        f'"{section_header}" section of a blog post about the document.\n'
        "Respond with the selected ids only, one id per line.\n"
    )


@dataclass(frozen=True)
class GenerationContext:
    """Typed inputs for a section-generation prompt."""

    section_header: str
    grounding: tuple[GroundingPair, ...] = ()
    guidelines: str = ""
    length: LengthKind = LengthKind.AUTO
    custom_bullets: str = ""
    starting_text: str = ""
    prior_sections_text: str = ""
    include_prior: bool = True


def _grounding_block(grounding: tuple[GroundingPair, ...]) -> str:
    items = []
    for pair in grounding:
        lines = [f"- {b}" for b in pair.bullet_texts]
        lines.append(f"Source paragraph: {pair.paragraph_text}")
        items.append("\n".join(lines))
    return "\n\n".join(items)


def generation_prompt(ctx: GenerationContext) -> str:
    """Render the section-generation prompt with blocks in fixed order:
    prior sections, grounding pairs, custom bullets, guidelines, length
    directive, starting-text continuation clause.
    """
    blocks = [
        f'Write the "{ctx.section_header}" section of a blog post about a '
        "source document."
    ]
    if ctx.include_prior and ctx.prior_sections_text:
        blocks.append(
            "The blog post so far, which this section should follow "
            "coherently without repeating:\n"
            f"{ctx.prior_sections_text}"
        )
    if ctx.grounding:
        blocks.append(
            "Base the section on the following selected material from the "
            "source document:\n"
            f"{_grounding_block(ctx.grounding)}"
        )
    if ctx.custom_bullets:
        blocks.append(
            "Also cover the following custom bullet points:\n"
            f"{ctx.custom_bullets}"
        )
    if ctx.guidelines:
        blocks.append(f"Section guidelines:\n{ctx.guidelines}")
    blocks.append(f"Make the section {GENERATION_LENGTH_TEXT[ctx.length]}.")
    if ctx.starting_text:
        blocks.append(
            "Begin the section with the following starting text and continue "
            "from it:\n"
            f"{ctx.starting_text}"
        )
    return "\n\n".join(blocks) + "\n"


@dataclass(frozen=True)
class ModificationOptions:
    length: LengthKind | None = None  # None -> kind's automatic length
    grounding: tuple[GroundingPair, ...] = ()
    grounding_toggle: bool = True
    custom_instructions: str = ""


def modification_prompt(
    kind: ModificationKind,
    text: str,
    options: ModificationOptions = ModificationOptions(),
) -> str:
    """Render a modification prompt for one of the preset macros or custom."""
    if not text:
        raise ValidationError("text to modify must be non-empty", field="text")
    if options.length is None:
        length_text = MODIFICATION_LENGTH_TEXT[kind]
    else:
        length_text = GENERATION_LENGTH_TEXT[options.length]
    blocks = [
        "Modify the following text from a blog post about a source document.",
        f"Text to modify:\n{text}",
        MODIFICATION_CLAUSE[kind],
        f"Make the modified text {length_text}.",
    ]
    if options.grounding_toggle and options.grounding:
        blocks.append(
            "Be aware of the following selected material from the source "
            "document:\n"
            f"{_grounding_block(options.grounding)}"
        )
    if options.custom_instructions:
        blocks.append(f"Custom instructions:\n{options.custom_instructions}")
    return "\n\n".join(blocks) + "\n"
