import pytest

from postdraft.docmodel import ingest_structured
from postdraft.gateway import CompletionGateway, DeterministicProvider
from postdraft.outline import build_outline


def words(n: int, tag: str = "w") -> str:
    """A paragraph of exactly n distinct whitespace-delimited tokens."""
    return " ".join(f"{tag}{i}" for i in range(n))


FIXTURE_WORD_COUNTS = (30, 50, 51, 75, 100, 101, 150)


@pytest.fixture
def fixture_payload():
    """Seven paragraphs straddling every bullet-quota boundary."""
    counts = FIXTURE_WORD_COUNTS
    return {
        "title": "Fixture Paper",
        "sections": [
            {
                "header": "Early Sections",
                "paragraphs": [words(n, f"a{n}x") for n in counts[:4]],
            },
            {
                "header": "Later Sections",
                "paragraphs": [words(n, f"b{n}x") for n in counts[4:]],
            },
        ],
    }


@pytest.fixture
def fixture_doc(fixture_payload):
    return ingest_structured(fixture_payload)


@pytest.fixture
def small_doc():
    """Three paragraphs with quotas 1 + 2 + 3 = 6 bullets total."""
    return ingest_structured(
        {
            "title": "Small Paper",
            "sections": [
                {
                    "header": "Only Section",
                    "paragraphs": [words(30, "s30x"), words(75, "s75x"), words(150, "s150x")],
                }
            ],
        }
    )


@pytest.fixture
def det_gateway():
    return CompletionGateway(DeterministicProvider(), sleep=lambda s: None)


@pytest.fixture
def fixture_outline(fixture_doc, det_gateway):
    return build_outline(fixture_doc, det_gateway)


@pytest.fixture
def small_outline(small_doc, det_gateway):
    return build_outline(small_doc, det_gateway)
