"""Shared fixtures.

The suite is required to pass with networking unplugged, so every test runs
under a socket guard: any attempt to open a connection raises instead of
hanging. Remote-looking behavior in tests always goes through fixture
clients and canned responses.
"""

from __future__ import annotations

import socket
from pathlib import Path

import pytest

from solsentry import bundled

FIXTURES = Path(__file__).parent / "fixtures"


class NetworkBlocked(RuntimeError):
    pass


def _refuse(*_args, **_kwargs):
    raise NetworkBlocked("test attempted to open a network connection")


@pytest.fixture(autouse=True)
def no_network(monkeypatch):
    monkeypatch.setattr(socket, "socket", _refuse)
    monkeypatch.setattr(socket, "create_connection", _refuse)
    yield


@pytest.fixture(scope="session")
def corpus150():
    return bundled.bundled_corpus()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def isolated_cwd(tmp_path, monkeypatch):
    """CLI tests run here: cwd-relative defaults (rules/, solsentry.toml)
    land in the temp dir, and no ambient config or keys leak in."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    for name in ("SENTRY_CACHE_DIR", "SENTRY_ETHERSCAN_KEY",
                 "SENTRY_GITHUB_TOKEN", "SENTRY_LLM_ENDPOINT",
                 "SENTRY_LLM_KEY"):
        monkeypatch.delenv(name, raising=False)
    return tmp_path
