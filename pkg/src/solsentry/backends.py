"""Completion backends for the generation loop.

Two real implementations, per design: a live chat-completion client and
fixture backends (response map keyed by prompt hash, or an ordered script
for multi-attempt tests). Fixtures are first-class so everything downstream
runs without network.
"""

from __future__ import annotations

import hashlib
import json
import time
from pathlib import Path

from .errors import BackendUnavailableError


def prompt_hash(messages: list[dict]) -> str:
    """Stable key for a message sequence (16 hex chars)."""
    canonical = json.dumps(messages, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


class MapBackend:
    """Canned responses keyed by prompt hash."""

    def __init__(self, responses: dict[str, str]):
        self.responses = dict(responses)
        self.calls = 0

    def complete(self, messages: list[dict], seed: int | None = None) -> str:
        self.calls += 1
        key = prompt_hash(messages)
        if key not in self.responses:
            raise BackendUnavailableError(f"no fixture response for prompt {key}")
        return self.responses[key]


class DirectoryBackend(MapBackend):
    """Responses as files: <prompt-hash>.txt under a directory."""

    def __init__(self, directory: str | Path):
        directory = Path(directory)
        responses = {
            path.stem: path.read_text(encoding="utf-8")
            for path in sorted(directory.glob("*.txt"))
        }
        super().__init__(responses)
        self.directory = directory


class ScriptBackend:
    """Plays back an ordered list of responses, one per call."""

    def __init__(self, responses: list[str]):
        self.responses = list(responses)
        self.calls = 0

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptBackend":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if isinstance(data, dict):
            data = data.get("responses", [])
        if not isinstance(data, list):
            raise BackendUnavailableError(f"bad script file {path}")
        return cls([str(item) for item in data])

    def complete(self, messages: list[dict], seed: int | None = None) -> str:
        if self.calls >= len(self.responses):
            raise BackendUnavailableError(
                f"script exhausted after {len(self.responses)} responses")
        response = self.responses[self.calls]
        self.calls += 1
        return response


class LiveBackend:
    """Chat-completion endpoint over HTTPS. Retries transient failures with
    a short backoff, then raises BackendUnavailable."""

    def __init__(self, endpoint: str, model: str, api_key: str | None = None,
                 timeout: float = 60.0, retries: int = 2):
        self.endpoint = endpoint
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.retries = retries
        self.calls = 0

    def complete(self, messages: list[dict], seed: int | None = None) -> str:
        import requests

        self.calls += 1
        payload: dict = {"model": self.model, "messages": messages}
        if seed is not None:
            payload["seed"] = seed
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                response = requests.post(self.endpoint, json=payload,
                                         headers=headers, timeout=self.timeout)
                if response.status_code >= 500:
                    raise BackendUnavailableError(
                        f"server error {response.status_code}")
                if response.status_code != 200:
                    raise BackendUnavailableError(
                        f"request failed with {response.status_code}: "
                        f"{response.text[:200]}")
                body = response.json()
                return body["choices"][0]["message"]["content"]
            except BackendUnavailableError as error:
                last_error = error
                if response.status_code < 500:
                    break
            except Exception as error:
                last_error = error
            if attempt < self.retries:
                time.sleep(0.5 * (attempt + 1))
        raise BackendUnavailableError(str(last_error))
