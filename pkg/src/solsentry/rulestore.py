"""On-disk persistence for generated rules.

One JSON file per rule under the store directory, named {rule_id}.json, plus
an optional disabled.json holding a list of rule ids. Writes go through a
temp file and os.replace so a crash never leaves a half-written rule.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .engine import Detector, Registry
from .errors import MalformedAstError
from .ruledsl import GeneratedRule, install_rule, parse_condition

_REQUIRED_KEYS = ("rule_id", "swe_id", "condition")


class RuleStore:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def _ensure_dir(self):
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path_for(self, rule_id: str) -> Path:
        return self.directory / f"{rule_id}.json"

    def save(self, rule: GeneratedRule) -> Path:
        self._ensure_dir()
        payload = {
            "rule_id": rule.rule_id,
            "swe_id": rule.swe_id,
            "condition": rule.condition_text,
            "origin": rule.origin_label,
            "acceptance_accuracy": rule.acceptance_accuracy,
            "created_from": rule.created_from,
        }
        path = self._path_for(rule.rule_id)
        _atomic_write_json(path, payload)
        return path

    def load(self, rule_id: str) -> GeneratedRule:
        return self._load_path(self._path_for(rule_id))

    def _load_path(self, path: Path) -> GeneratedRule:
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as error:
            raise MalformedAstError(str(path), f"unreadable rule file: {error}")
        if not isinstance(payload, dict):
            raise MalformedAstError(str(path), "rule file is not an object")
        for key in _REQUIRED_KEYS:
            if key not in payload:
                raise MalformedAstError(str(path), f"missing key {key!r}")
        condition_text = payload["condition"]
        return GeneratedRule(
            rule_id=payload["rule_id"],
            swe_id=payload["swe_id"],
            condition=parse_condition(condition_text),
            condition_text=condition_text,
            origin_label=payload.get("origin", "generated"),
            acceptance_accuracy=float(payload.get("acceptance_accuracy", 0.0)),
            created_from=payload.get("created_from", ""))

    def load_all(self) -> list[GeneratedRule]:
        if not self.directory.is_dir():
            return []
        rules = []
        for path in sorted(self.directory.glob("*.json")):
            if path.name == "disabled.json":
                continue
            rules.append(self._load_path(path))
        return rules

    def delete(self, rule_id: str) -> bool:
        path = self._path_for(rule_id)
        if path.exists():
            path.unlink()
            return True
        return False

    # disabled.json tracks ids switched off without deleting the rule file

    def disabled_ids(self) -> set[str]:
        path = self.directory / "disabled.json"
        if not path.exists():
            return set()
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return set()
        if isinstance(data, list):
            return {str(item) for item in data}
        return set()

    def set_disabled(self, rule_id: str, disabled: bool = True):
        ids = self.disabled_ids()
        if disabled:
            ids.add(rule_id)
        else:
            ids.discard(rule_id)
        self._ensure_dir()
        _atomic_write_json(self.directory / "disabled.json", sorted(ids))

    def install_into(self, registry: Registry) -> list[Detector]:
        """Register every stored rule, honoring disabled.json."""
        disabled = self.disabled_ids()
        installed = []
        for rule in self.load_all():
            detector = install_rule(rule)
            registry.register(detector)
            if rule.rule_id in disabled:
                registry.set_enabled(rule.rule_id, False)
            installed.append(detector)
        return installed


def _atomic_write_json(path: Path, payload):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n",
                   encoding="utf-8")
    os.replace(tmp, path)
