"""ERC-20 approve allowance race (SWE-114, transaction order dependence).

Overwriting a live allowance lets the spender front-run the change and spend
both the old and new amounts. The accepted mitigation forces the allowance
(or the new value) through zero first, so the check looks for an unguarded
write of an amount parameter into a mapping state variable inside approve().
"""

from __future__ import annotations

from ..cfg import build_cfg, dominators
from ..engine import Detector, DetectorDescriptor, ScanOptions
from ..findings import Finding, make_finding
from ..nodes import AstNode, SourceUnit, iter_nodes, walk
from .common import block_containing, enclosing_statement

DETECTOR_ID = "approve-race"
SWE_ID = "SWE-114"

_UINT_PREFIXES = ("uint", "int")


def _mapping_state_vars(contract: AstNode) -> set[str]:
    names = set()
    for member in contract.child("nodes") or []:
        if member.node_type != "VariableDeclaration":
            continue
        type_name = member.child("typeName")
        if type_name is not None and type_name.node_type == "Mapping":
            names.add(member.attr("name"))
    return names


def _amount_parameters(function: AstNode) -> set[str]:
    names = set()
    for parameter in function.child("parameters").child("parameters"):
        type_name = parameter.child("typeName")
        if (type_name is not None
                and type_name.node_type == "ElementaryTypeName"
                and type_name.attr("name").startswith(_UINT_PREFIXES)
                and parameter.attr("name")):
            names.add(parameter.attr("name"))
    return names


def _mapping_write_base(left: AstNode) -> AstNode | None:
    # allowed[msg.sender][spender] → the root Identifier under the indexing
    node = left
    while node is not None and node.node_type == "IndexAccess":
        node = node.child("baseExpression")
    if node is not None and node.node_type == "Identifier":
        return node
    return None


def _is_zero_literal(node: AstNode) -> bool:
    if node.node_type != "Literal" or node.attr("kind") != "number":
        return False
    try:
        return int(node.attr("value").replace("_", ""), 0) == 0
    except ValueError:
        return False


def _has_zero_equality(condition: AstNode) -> bool:
    for node in iter_nodes(condition):
        if node.node_type == "BinaryOperation" and node.attr("operator") == "==":
            sides = (node.child("leftExpression"), node.child("rightExpression"))
            if any(_is_zero_literal(side) for side in sides):
                return True
    return False


def _is_guard_statement(statement: AstNode) -> bool:
    if statement.node_type != "ExpressionStatement":
        return False
    expression = statement.child("expression")
    if expression is None or expression.node_type != "FunctionCall":
        return False
    callee = expression.child("expression")
    if callee is None or callee.node_type != "Identifier":
        return False
    if callee.attr("name") not in ("require", "assert"):
        return False
    return any(_has_zero_equality(a) for a in expression.child("arguments"))


def _approve_functions(contract: AstNode):
    for member in contract.child("nodes") or []:
        if (member.node_type == "FunctionDefinition"
                and member.attr("name") == "approve"
                and member.attr("visibility") in ("public", "external")
                and member.child("body") is not None):
            yield member


def run(unit: SourceUnit, options: ScanOptions) -> list[Finding]:
    findings = []
    for contract in iter_nodes(unit.root):
        if contract.node_type != "ContractDefinition":
            continue
        mappings = _mapping_state_vars(contract)
        if not mappings:
            continue
        for function in _approve_functions(contract):
            findings.extend(_check_approve(unit, function, mappings))
    return findings


def _check_approve(unit: SourceUnit, function: AstNode,
                   mappings: set[str]) -> list[Finding]:
    amounts = _amount_parameters(function)
    if not amounts:
        return []

    writes: list[tuple[AstNode, AstNode]] = []    # (assignment, statement)

    def visit(node: AstNode, ancestors: list[AstNode]) -> None:
        if node.node_type != "Assignment" or node.attr("operator") != "=":
            return
        base = _mapping_write_base(node.child("leftHandSide"))
        if base is None or base.attr("name") not in mappings:
            return
        right = node.child("rightHandSide")
        if any(n.node_type == "Identifier" and n.attr("name") in amounts
               for n in iter_nodes(right)):
            statement = enclosing_statement(ancestors)
            if statement is not None:
                writes.append((node, statement))

    walk(function.child("body"), visit)
    if not writes:
        return []

    graph = build_cfg(function)
    dom = dominators(graph)
    guard_blocks = {
        block.index
        for block in graph.blocks
        for statement in block.statement_nodes
        if _is_guard_statement(statement)
    }

    findings = []
    for assignment, statement in writes:
        write_block = block_containing(graph, statement.id)
        if write_block is not None and guard_blocks & (dom[write_block] - {write_block}):
            continue
        findings.append(make_finding(
            unit, assignment, swe_id=SWE_ID, detector_id=DETECTOR_ID,
            origin="builtin", severity="medium",
            message="approve overwrites a live allowance without forcing it "
                    "through zero; a spender can front-run the change and "
                    "spend both amounts"))
    return findings


def make() -> Detector:
    return Detector(DetectorDescriptor(DETECTOR_ID, SWE_ID, "builtin"), run)
