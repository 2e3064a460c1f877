"""Layered configuration: defaults ← config file ← environment ← flags.

The merged result is printable so any run can be reproduced from its
`config show` output. File format is a flat TOML table; unknown keys are
reported, not fatal.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:           # 3.10 ships without it
    import tomli as tomllib

_DEFAULTS = {
    "rules_dir": "rules",
    "cache_dir": None,
    "corpus_dir": None,
    "backend": None,
    "format": "text",
    "jobs": os.cpu_count() or 1,
    "offline": False,
    "network": "mainnet",
    "template": "P_rcbi",
    "threshold": 0.80,
    "max_attempts": 5,
    "pragma_gate": True,
    "mint_check": True,
    "disable": [],
    "llm_endpoint": None,
    "llm_key": None,
    "llm_model": "gpt-3.5-turbo-1106",
    "etherscan_key": None,
    "github_token": None,
}

_ENV_KEYS = {
    "SENTRY_CACHE_DIR": "cache_dir",
    "SENTRY_ETHERSCAN_KEY": "etherscan_key",
    "SENTRY_GITHUB_TOKEN": "github_token",
    "SENTRY_LLM_ENDPOINT": "llm_endpoint",
    "SENTRY_LLM_KEY": "llm_key",
}

_BOOL_KEYS = {"offline", "pragma_gate", "mint_check"}
_INT_KEYS = {"jobs", "max_attempts"}
_FLOAT_KEYS = {"threshold"}


@dataclass
class EffectiveConfig:
    values: dict
    sources: dict
    warnings: list = field(default_factory=list)

    def __getattr__(self, key):
        values = object.__getattribute__(self, "values")
        if key in values:
            return values[key]
        raise AttributeError(key)

    def to_dict(self) -> dict:
        return dict(self.values)

    def show(self) -> str:
        lines = []
        for key in sorted(self.values):
            value = self.values[key]
            lines.append(f"{key} = {value!r}  # {self.sources[key]}")
        return "\n".join(lines)


def _candidate_files(explicit: str | None) -> list[Path]:
    if explicit:
        return [Path(explicit)]
    home = Path(os.environ.get("XDG_CONFIG_HOME",
                               Path.home() / ".config"))
    return [Path("solsentry.toml"), home / "solsentry" / "config.toml"]


def _read_file(explicit: str | None, warnings: list) -> dict:
    for path in _candidate_files(explicit):
        if not path.is_file():
            if explicit:
                warnings.append(f"config file not found: {path}")
            continue
        try:
            with open(path, "rb") as handle:
                loaded = tomllib.load(handle)
        except (OSError, tomllib.TOMLDecodeError) as error:
            warnings.append(f"could not read {path}: {error}")
            return {}
        known = {}
        for key, value in loaded.items():
            if key in _DEFAULTS:
                known[key] = value
            else:
                warnings.append(f"{path}: unknown key {key!r}")
        return known
    return {}


def _coerce(key: str, value, warnings: list):
    try:
        if key in _BOOL_KEYS and isinstance(value, str):
            return value.strip().lower() in ("1", "true", "yes", "on")
        if key in _INT_KEYS:
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
    except (TypeError, ValueError):
        warnings.append(f"bad value for {key}: {value!r}")
        return _DEFAULTS[key]
    return value


def load_config(config_path: str | None = None,
                environ: dict | None = None,
                overrides: dict | None = None) -> EffectiveConfig:
    """Merge the four layers; later layers win. Sources are remembered."""
    environ = os.environ if environ is None else environ
    warnings: list = []
    values = dict(_DEFAULTS)
    sources = {key: "default" for key in values}

    for key, value in _read_file(config_path, warnings).items():
        values[key] = _coerce(key, value, warnings)
        sources[key] = "file"

    for env_name, key in _ENV_KEYS.items():
        if environ.get(env_name):
            values[key] = environ[env_name]
            sources[key] = f"env {env_name}"

    for key, value in (overrides or {}).items():
        if value is None or key not in _DEFAULTS:
            continue
        values[key] = _coerce(key, value, warnings)
        sources[key] = "flag"

    return EffectiveConfig(values=values, sources=sources, warnings=warnings)
