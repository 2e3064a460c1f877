"""Ether that can come in but never leave (SWE-138, locked money).

A contract with a payable entry point and no egress construct (transfer,
send, a value-bearing call, selfdestruct) strands every wei sent to it.
Also nudges `_mint` callers toward `_safeMint`, which verifies the receiver
can actually handle the token.
"""

from __future__ import annotations

from ..engine import Detector, DetectorDescriptor, ScanOptions
from ..findings import Finding, make_finding
from ..nodes import AstNode, SourceUnit, iter_nodes
from .common import member_call

DETECTOR_ID = "locked-ether"
SWE_ID = "SWE-138"


def _can_receive(contract: AstNode) -> bool:
    for node in iter_nodes(contract):
        if node.node_type != "FunctionDefinition":
            continue
        if node.attr("kind") == "receive":
            return True
        if node.attr("stateMutability") == "payable":
            return True
    return False


def _has_egress(contract: AstNode) -> bool:
    for node in iter_nodes(contract):
        if node.node_type == "FunctionCallOptions":
            if "value" in (node.attr("names") or []):
                return True
            continue
        if node.node_type != "FunctionCall":
            continue
        callee = node.child("expression")
        if (callee is not None and callee.node_type == "Identifier"
                and callee.attr("name") == "selfdestruct"):
            return True
        call = member_call(node)
        if call is not None and call[0] in ("transfer", "send", "value"):
            return True
    return False


def _mint_calls(unit: SourceUnit):
    for node in iter_nodes(unit.root):
        if node.node_type != "FunctionCall":
            continue
        callee = node.child("expression")
        if callee is None:
            continue
        if callee.node_type == "Identifier" and callee.attr("name") == "_mint":
            yield node
        elif (callee.node_type == "MemberAccess"
                and callee.attr("memberName") == "_mint"):
            yield node


def run(unit: SourceUnit, options: ScanOptions) -> list[Finding]:
    findings = []
    for contract in unit.contracts:
        if contract.attr("contractKind") != "contract":
            continue
        if _can_receive(contract) and not _has_egress(contract):
            findings.append(make_finding(
                unit, contract, swe_id=SWE_ID, detector_id=DETECTOR_ID,
                origin="builtin", severity="high",
                message=f"contract {contract.attr('name')} accepts ether but "
                        "has no transfer, send, value call or selfdestruct; "
                        "received funds are locked forever"))
    if options.mint_check:
        for call in _mint_calls(unit):
            findings.append(make_finding(
                unit, call, swe_id=SWE_ID, detector_id=DETECTOR_ID,
                origin="builtin", severity="info",
                message="direct _mint call; prefer _safeMint, which checks "
                        "the receiver can handle the token"))
    return findings


def make() -> Detector:
    return Detector(DetectorDescriptor(DETECTOR_ID, SWE_ID, "builtin"), run)
