"""Detector registry and the scan driver.

Detectors are isolated: each sees the unit on its own, a crash in one becomes
a diagnostic finding instead of killing the scan, and disabling one cannot
change what another reports. Scan output is sorted, so registry order and any
scan-level concurrency never show through.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import DuplicateDetectorIdError
from .findings import Finding, make_finding
from .nodes import SourceUnit, Span


@dataclass
class ScanOptions:
    pragma_gate: bool = True      # --no-pragma-gate clears
    mint_check: bool = True       # --no-mint-check clears


@dataclass
class DetectorDescriptor:
    detector_id: str
    swe_id: str
    origin: str                   # builtin | generated
    enabled: bool = True
    condition_text: str | None = None
    acceptance_accuracy: float | None = None

    def to_dict(self) -> dict:
        out = {"detector_id": self.detector_id, "swe_id": self.swe_id,
               "origin": self.origin, "enabled": self.enabled}
        if self.condition_text is not None:
            out["condition"] = self.condition_text
            out["acceptance_accuracy"] = self.acceptance_accuracy
        return out


class Detector:
    """A descriptor plus a run function."""

    def __init__(self, descriptor: DetectorDescriptor,
                 run: Callable[[SourceUnit, ScanOptions], list[Finding]]):
        self.descriptor = descriptor
        self._run = run

    def run(self, unit: SourceUnit, options: ScanOptions) -> list[Finding]:
        return self._run(unit, options)


@dataclass
class Registry:
    detectors: dict[str, Detector] = field(default_factory=dict)

    def register(self, detector: Detector) -> None:
        detector_id = detector.descriptor.detector_id
        if detector_id in self.detectors:
            raise DuplicateDetectorIdError(detector_id)
        self.detectors[detector_id] = detector

    def get(self, detector_id: str) -> Detector | None:
        return self.detectors.get(detector_id)

    def set_enabled(self, detector_id: str, enabled: bool) -> bool:
        detector = self.detectors.get(detector_id)
        if detector is None:
            return False
        detector.descriptor.enabled = enabled
        return True

    def descriptors(self) -> list[DetectorDescriptor]:
        return [self.detectors[k].descriptor for k in sorted(self.detectors)]

    def enabled_detectors(self) -> list[Detector]:
        return [self.detectors[k] for k in sorted(self.detectors)
                if self.detectors[k].descriptor.enabled]


def builtin_registry() -> Registry:
    """Fresh registry holding the five built-in detectors."""
    from .detectors import BUILTIN_DETECTORS
    registry = Registry()
    for factory in BUILTIN_DETECTORS:
        registry.register(factory())
    return registry


def scan(unit: SourceUnit, registry: Registry,
         options: ScanOptions | None = None) -> list[Finding]:
    """Run every enabled detector over one unit; sorted, deterministic."""
    options = options or ScanOptions()
    findings: list[Finding] = []
    for detector in registry.enabled_detectors():
        descriptor = detector.descriptor
        try:
            findings.extend(detector.run(unit, options))
        except Exception as crash:    # one bad detector must not kill the scan
            findings.append(make_finding(
                unit, Span(0, 0),
                swe_id=descriptor.swe_id,
                detector_id=descriptor.detector_id,
                origin=descriptor.origin,
                message=f"detector crashed: {type(crash).__name__}: {crash}",
                severity="info"))
    findings.sort(key=Finding.sort_key)
    return findings
