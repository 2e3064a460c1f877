"""Completion backends: fixtures, scripts, and prompt hashing."""

import json

import pytest

from solsentry.backends import (DirectoryBackend, LiveBackend, MapBackend,
                                ScriptBackend, prompt_hash)
from solsentry.errors import BackendUnavailableError

MESSAGES = [{"role": "user", "content": "hello"}]


def test_prompt_hash_is_stable_and_content_sensitive():
    assert prompt_hash(MESSAGES) == prompt_hash([dict(MESSAGES[0])])
    assert prompt_hash(MESSAGES) != prompt_hash(
        [{"role": "user", "content": "other"}])
    assert len(prompt_hash(MESSAGES)) == 16
    int(prompt_hash(MESSAGES), 16)


def test_map_backend_hits_by_prompt_hash():
    backend = MapBackend({prompt_hash(MESSAGES): "node.a == 1"})
    assert backend.complete(MESSAGES) == "node.a == 1"
    assert backend.calls == 1


def test_map_backend_miss_is_unavailable():
    backend = MapBackend({})
    with pytest.raises(BackendUnavailableError):
        backend.complete(MESSAGES)


def test_directory_backend_reads_txt_fixtures(tmp_path):
    key = prompt_hash(MESSAGES)
    (tmp_path / f"{key}.txt").write_text("node.b == 2", encoding="utf-8")
    (tmp_path / "notes.md").write_text("ignored", encoding="utf-8")
    backend = DirectoryBackend(tmp_path)
    assert backend.complete(MESSAGES) == "node.b == 2"


def test_script_backend_plays_in_order_then_runs_dry():
    backend = ScriptBackend(["one", "two"])
    assert backend.complete(MESSAGES) == "one"
    assert backend.complete(MESSAGES) == "two"
    with pytest.raises(BackendUnavailableError):
        backend.complete(MESSAGES)


def test_script_backend_from_file_accepts_both_shapes(tmp_path):
    plain = tmp_path / "plain.json"
    plain.write_text(json.dumps(["a", "b"]), encoding="utf-8")
    assert ScriptBackend.from_file(plain).responses == ["a", "b"]
    wrapped = tmp_path / "wrapped.json"
    wrapped.write_text(json.dumps({"responses": ["c"]}), encoding="utf-8")
    assert ScriptBackend.from_file(wrapped).responses == ["c"]
    bad = tmp_path / "bad.json"
    bad.write_text('"just a string"', encoding="utf-8")
    with pytest.raises(BackendUnavailableError):
        ScriptBackend.from_file(bad)


def test_live_backend_failure_is_unavailable_not_a_crash():
    backend = LiveBackend("https://localhost:1/v1/chat", model="m", retries=0)
    with pytest.raises(BackendUnavailableError):
        backend.complete(MESSAGES)
