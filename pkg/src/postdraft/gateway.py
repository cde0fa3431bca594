"""Chat-completion gateway with retry/backoff plus deterministic mocks.

This is the only module that performs network activity. Everything else
talks to a ``CompletionGateway``, which wraps a provider backend: the HTTP
provider for real endpoints, a scriptable mock for tests, or the
synthesizing deterministic provider that powers ``--mock`` mode end to end.
"""

from __future__ import annotations

import hashlib
import logging
import re
import time
from dataclasses import dataclass, field

import requests

from .errors import (
    ConfigError,
    ProtocolError,
    ProviderError,
    TransientProviderError,
    ValidationError,
)

logger = logging.getLogger(__name__)

PURPOSE_TAGS = ("outline", "selection", "generation", "modification")

DEFAULT_RETRIES = 3
DEFAULT_TIMEOUT = 60.0


@dataclass(frozen=True)
class CompletionRequest:
    prompt: str
    purpose_tag: str
    max_output_hint: int | None = None

    def __post_init__(self):
        if not self.prompt:
            raise ValidationError("prompt must be non-empty", field="prompt")
        if self.purpose_tag not in PURPOSE_TAGS:
            raise ValidationError(
                f"unknown purpose_tag: {self.purpose_tag}", field="purpose_tag"
            )


@dataclass(frozen=True)
class CompletionResult:
    text: str
    provider_id: str
    latency: float
    degraded: bool = False


class CompletionGateway:
    """Uniform completion access with bounded retries and backoff.

    ``sleep`` and ``clock`` are injectable so tests run without real delays.
    """

    def __init__(
        self,
        provider,
        retries: int = DEFAULT_RETRIES,
        backoff_base: float = 0.5,
        sleep=time.sleep,
        clock=time.monotonic,
    ):
        self._provider = provider
        self._retries = max(1, retries)
        self._backoff_base = backoff_base
        self._sleep = sleep
        self._clock = clock

    def complete(self, req: CompletionRequest) -> CompletionResult:
        start = self._clock()
        last_error: Exception | None = None
        for attempt in range(self._retries):
            try:
                text = self._provider.complete(req)
            except TransientProviderError as exc:
                last_error = exc
                logger.warning(
                    "completion attempt %d/%d failed (%s): %s",
                    attempt + 1,
                    self._retries,
                    req.purpose_tag,
                    exc,
                )
                if attempt + 1 < self._retries:
                    self._sleep(self._backoff_base * (2**attempt))
                continue
            if not isinstance(text, str):
                raise ProtocolError("provider returned a non-text response")
            return CompletionResult(
                text=text,
                provider_id=getattr(self._provider, "provider_id", "unknown"),
                latency=self._clock() - start,
            )
        raise ProviderError(
            f"completion failed after {self._retries} attempts: {last_error}",
            purpose_tag=req.purpose_tag,
            retryable=True,
        )


class MockProvider:
    """Deterministic scripted provider.

    ``script`` maps prompt substring patterns to responses checked in
    insertion order. A response may be a string, an exception instance to
    raise, a callable of the prompt, or a list of those consumed one per
    call (for failure-injection sequences). Unmatched prompts return a
    fixed fallback so pipelines never hang.
    """

    provider_id = "mock"

    def __init__(self, script: dict | None = None, fallback: str = "(unscripted response)"):
        self._script = dict(script or {})
        self._fallback = fallback
        self.calls: list[CompletionRequest] = []

    def complete(self, req: CompletionRequest) -> str:
        self.calls.append(req)
        for pattern, response in self._script.items():
            if pattern in req.prompt:
                return self._resolve(response, req.prompt)
        return self._resolve(self._fallback, req.prompt)

    def _resolve(self, response, prompt: str) -> str:
        if isinstance(response, list):
            if len(response) > 1:
                item = response.pop(0)
            else:
                item = response[0]
            return self._resolve(item, prompt)
        if isinstance(response, Exception):
            raise response
        if callable(response):
            return response(prompt)
        return response


def mock_script(table: dict) -> MockProvider:
    """Build a deterministic scripted provider from a pattern table."""
    return MockProvider(script=table)


class DeterministicProvider:
    """Synthesizes plausible, fully deterministic responses from prompts.

    Parses the package's own templates: returns exactly the requested number
    of bullets for outline prompts, the first k listed ids for selection
    prompts, and digest-tagged text for generation/modification prompts so
    that different inputs yield different outputs.
    """

    provider_id = "deterministic-mock"

    def __init__(self):
        self.calls: list[CompletionRequest] = []

    def complete(self, req: CompletionRequest) -> str:
        self.calls.append(req)
        handler = {
            "outline": self._outline,
            "selection": self._selection,
            "generation": self._generation,
            "modification": self._modification,
        }[req.purpose_tag]
        return handler(req.prompt)

    @staticmethod
    def _digest(prompt: str) -> str:
        return hashlib.sha256(prompt.encode("utf-8")).hexdigest()[:8]

    def _outline(self, prompt: str) -> str:
        m = re.search(r"exactly (one|two|three) concise bullet", prompt)
        quota = {"one": 1, "two": 2, "three": 3}[m.group(1)] if m else 1
        body = prompt.split("Paragraph:\n", 1)[-1].strip()
        words = body.split()
        lead = " ".join(words[:5])
        return "\n".join(
            f"Point {i + 1} of {quota}: {lead} [{self._digest(body)}]"
            for i in range(quota)
        )

    def _selection(self, prompt: str) -> str:
        ids = re.findall(r"^\[([^\]]+)\]", prompt, flags=re.MULTILINE)
        m = re.search(r"Select the (\d+) bullet points", prompt)
        k = int(m.group(1)) if m else 10
        return "\n".join(ids[:k])

    def _generation(self, prompt: str) -> str:
        m = re.search(r'Write the "([^"]*)" section', prompt)
        header = m.group(1) if m else "Section"
        return (
            f"Mock draft of the {header} section, grounded in the selected "
            f"material. [gen-{self._digest(prompt)}]"
        )

    def _modification(self, prompt: str) -> str:
        text = prompt.split("Text to modify:\n", 1)[-1].split("\n\n", 1)[0]
        return f"Modified: {text} [mod-{self._digest(prompt)}]"


class HttpProvider:
    """Talks the de-facto chat-completion HTTP/JSON protocol.

    Role-tagged messages go in; the first choice's message text comes out.
    The model used per request comes from a purpose_tag -> model map.
    """

    provider_id = "http"

    def __init__(
        self,
        endpoint: str,
        api_key: str,
        model_map: dict[str, str],
        timeout: float = DEFAULT_TIMEOUT,
        session: requests.Session | None = None,
    ):
        if not endpoint:
            raise ConfigError("completion endpoint URL is not configured")
        if not api_key:
            raise ConfigError("completion API credential is not configured")
        self._endpoint = endpoint
        self._api_key = api_key
        self._model_map = model_map
        self._timeout = timeout
        self._session = session or requests.Session()

    def complete(self, req: CompletionRequest) -> str:
        model = self._model_map.get(req.purpose_tag) or self._model_map.get("default")
        if not model:
            raise ConfigError(f"no model configured for purpose {req.purpose_tag}")
        body = {
            "model": model,
            "messages": [{"role": "user", "content": req.prompt}],
        }
        if req.max_output_hint:
            body["max_tokens"] = req.max_output_hint
        try:
            resp = self._session.post(
                self._endpoint,
                json=body,
                headers={"Authorization": f"Bearer {self._api_key}"},
                timeout=self._timeout,
            )
        except requests.Timeout as exc:
            raise TransientProviderError(f"request timed out: {exc}") from exc
        except requests.ConnectionError as exc:
            raise TransientProviderError(f"connection failed: {exc}") from exc
        if resp.status_code in (401, 403):
            raise ConfigError(f"authentication failed ({resp.status_code})")
        if resp.status_code == 429 or resp.status_code >= 500:
            raise TransientProviderError(f"endpoint returned {resp.status_code}")
        if resp.status_code != 200:
            raise ProtocolError(f"unexpected status {resp.status_code}")
        try:
            data = resp.json()
            return data["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProtocolError(f"malformed completion response: {exc}") from exc
