"""Writable array `length` manipulation (SWE-161).

`a.length--` on an empty array wraps to 2**256-1 under pre-0.6 compilers,
where `length` was assignable. 0.6 made it read-only, so the check is
suppressed when the pragma rules out every older compiler.
"""

from __future__ import annotations

from ..engine import Detector, DetectorDescriptor, ScanOptions
from ..findings import Finding, make_finding
from ..nodes import SourceUnit, iter_nodes

DETECTOR_ID = "array-length-write"
SWE_ID = "SWE-161"

_WRITE_OPS = {"=", "-=", "+="}


def _is_length_member(node) -> bool:
    return (node is not None and node.node_type == "MemberAccess"
            and node.attr("memberName") == "length")


def run(unit: SourceUnit, options: ScanOptions) -> list[Finding]:
    if options.pragma_gate:
        constraint = unit.solidity_constraint()
        if constraint is not None and constraint.requires_at_least(0, 6, 0):
            return []
    findings = []
    for node in iter_nodes(unit.root):
        if (node.node_type == "UnaryOperation"
                and node.attr("operator") in ("++", "--")
                and _is_length_member(node.child("subExpression"))):
            op = node.attr("operator")
            findings.append(make_finding(
                unit, node, swe_id=SWE_ID, detector_id=DETECTOR_ID,
                origin="builtin", severity="high",
                message=f"array length modified with '{op}'; underflows past "
                        "zero on an empty array (pre-0.6 compilers)"))
        elif (node.node_type == "Assignment"
                and node.attr("operator") in _WRITE_OPS
                and _is_length_member(node.child("leftHandSide"))):
            findings.append(make_finding(
                unit, node, swe_id=SWE_ID, detector_id=DETECTOR_ID,
                origin="builtin", severity="high",
                message="array length assigned directly; risks underflow and "
                        "storage corruption (pre-0.6 compilers)"))
    return findings


def make() -> Detector:
    return Detector(DetectorDescriptor(DETECTOR_ID, SWE_ID, "builtin"), run)
