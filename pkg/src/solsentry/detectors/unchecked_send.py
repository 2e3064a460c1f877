"""transfer/send misuse (SWE-140, improper exception handling).

send returns a bool instead of reverting; a discarded result means a failed
payment passes silently. transfer does revert, but both stipulate 2300 gas,
so the guidance is a value-bearing `call` with the result checked. A send
result counts as checked when it feeds require or a branch condition
somewhere downstream in the function's flow.
"""

from __future__ import annotations

from ..cfg import build_cfg, uses_identifier_in_condition
from ..engine import Detector, DetectorDescriptor, ScanOptions
from ..findings import Finding, make_finding
from ..nodes import AstNode, SourceUnit, walk
from .common import (block_containing, enclosing_function, enclosing_statement,
                     member_call, receiver_is_contract)

DETECTOR_ID = "unchecked-send"
SWE_ID = "SWE-140"


def _assigned_name(call: AstNode, parent: AstNode) -> str | None:
    """Name the send result lands in, when the parent stores it."""
    if (parent.node_type == "Assignment" and parent.attr("operator") == "="
            and parent.child("rightHandSide") is call):
        left = parent.child("leftHandSide")
        if left.node_type == "Identifier":
            return left.attr("name")
    if (parent.node_type == "VariableDeclarationStatement"
            and parent.child("initialValue") is call):
        declarations = [d for d in parent.child("declarations") if d is not None]
        if len(declarations) == 1:
            return declarations[0].attr("name")
    return None


def run(unit: SourceUnit, options: ScanOptions) -> list[Finding]:
    findings: list[Finding] = []

    def visit(node: AstNode, ancestors: list[AstNode]) -> None:
        call = member_call(node)
        if call is None:
            return
        member, receiver = call
        if member not in ("transfer", "send"):
            return
        if receiver_is_contract(unit, receiver):
            return
        if member == "transfer":
            findings.append(make_finding(
                unit, node, swe_id=SWE_ID, detector_id=DETECTOR_ID,
                origin="builtin", severity="info",
                message="transfer reverts on failure but forwards only 2300 "
                        "gas; prefer a value call with the result checked"))
            return
        parent = ancestors[-1] if ancestors else None
        if parent is None:
            return
        if parent.node_type == "ExpressionStatement":
            findings.append(_unchecked(unit, node))
            return
        name = _assigned_name(node, parent)
        if name is None:
            return    # consumed by require/if/expression context
        function = enclosing_function(ancestors)
        statement = enclosing_statement(ancestors)
        if function is None or statement is None:
            findings.append(_unchecked(unit, node))
            return
        graph = build_cfg(function)
        block = block_containing(graph, statement.id)
        if block is None:
            findings.append(_unchecked(unit, node))
            return
        if not uses_identifier_in_condition(graph, name, block):
            findings.append(_unchecked(unit, node))

    walk(unit.root, visit)
    return findings


def _unchecked(unit: SourceUnit, node: AstNode) -> Finding:
    return make_finding(
        unit, node, swe_id=SWE_ID, detector_id=DETECTOR_ID,
        origin="builtin", severity="high",
        message="send result is discarded; a failed transfer passes "
                "silently (send forwards 2300 gas and returns false on "
                "failure)")


def make() -> Detector:
    return Detector(DetectorDescriptor(DETECTOR_ID, SWE_ID, "builtin"), run)
