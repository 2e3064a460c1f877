"""Hardcoded gas amounts on message calls (SWE-134).

Gas costs get repriced by hard forks; a call stipulating a literal amount
(explicitly, or implicitly through transfer/send's fixed 2300) can start
failing after an upgrade. Covers the modern `{gas: ...}` option, the legacy
`.gas(...)` chain, and the transfer/send stipulation.
"""

from __future__ import annotations

from ..engine import Detector, DetectorDescriptor, ScanOptions
from ..findings import Finding, make_finding
from ..nodes import SourceUnit, iter_nodes
from .common import member_call, receiver_is_contract

DETECTOR_ID = "hardcoded-gas"
SWE_ID = "SWE-134"


def run(unit: SourceUnit, options: ScanOptions) -> list[Finding]:
    findings = []
    for node in iter_nodes(unit.root):
        if node.node_type == "FunctionCallOptions":
            for name, value in zip(node.attr("names") or [],
                                   node.child("options") or []):
                if name == "gas" and value.node_type == "Literal":
                    findings.append(make_finding(
                        unit, value, swe_id=SWE_ID, detector_id=DETECTOR_ID,
                        origin="builtin", severity="medium",
                        message=f"call forwards a hardcoded gas amount "
                                f"({value.attr('value')}); gas costs change "
                                "across hard forks"))
            continue
        call = member_call(node)
        if call is None:
            continue
        member, receiver = call
        arguments = node.child("arguments")
        if (member == "gas" and len(arguments) == 1
                and arguments[0].node_type == "Literal"):
            findings.append(make_finding(
                unit, arguments[0], swe_id=SWE_ID, detector_id=DETECTOR_ID,
                origin="builtin", severity="medium",
                message=f"legacy .gas({arguments[0].attr('value')}) chain "
                        "hardcodes the gas amount; gas costs change across "
                        "hard forks"))
        elif (member in ("transfer", "send")
                and not receiver_is_contract(unit, receiver)):
            findings.append(make_finding(
                unit, node, swe_id=SWE_ID, detector_id=DETECTOR_ID,
                origin="builtin", severity="medium",
                message=f"{member} stipulates a fixed 2300 gas; the amount is "
                        "hardcoded by the language and fragile across hard forks"))
    return findings


def make() -> Detector:
    return Detector(DetectorDescriptor(DETECTOR_ID, SWE_ID, "builtin"), run)
