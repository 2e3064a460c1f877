"""Findings: what detectors report."""

from __future__ import annotations

from dataclasses import dataclass

from .nodes import AstNode, SourceUnit, Span, line_column

SEVERITIES = ("high", "medium", "info")


@dataclass(frozen=True)
class Finding:
    swe_id: str
    detector_id: str
    origin: str            # builtin | generated
    file_id: str
    span: Span
    message: str
    severity: str          # high | medium | info
    line: int = 0
    column: int = 0

    def sort_key(self) -> tuple:
        return (self.file_id, self.span.offset, self.detector_id)

    def to_dict(self) -> dict:
        return {
            "swe_id": self.swe_id,
            "detector_id": self.detector_id,
            "origin": self.origin,
            "file_id": self.file_id,
            "span": {"offset": self.span.offset, "length": self.span.length,
                     "line": self.line, "column": self.column},
            "message": self.message,
            "severity": self.severity,
        }

    def render(self) -> str:
        return (f"{self.file_id}:{self.line}:{self.column}: "
                f"[{self.severity}] {self.swe_id} ({self.detector_id}): {self.message}")


def make_finding(unit: SourceUnit, node_or_span: AstNode | Span, *,
                 swe_id: str, detector_id: str, origin: str,
                 message: str, severity: str) -> Finding:
    span = node_or_span.span if isinstance(node_or_span, AstNode) else node_or_span
    line, column = line_column(unit.raw_text, span.offset)
    return Finding(swe_id=swe_id, detector_id=detector_id, origin=origin,
                   file_id=unit.file_id, span=span, message=message,
                   severity=severity, line=line, column=column)
