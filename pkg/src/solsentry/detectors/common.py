"""Helpers shared by the built-in detectors."""

from __future__ import annotations

from ..nodes import AstNode, SourceUnit, iter_nodes


def member_call(node: AstNode) -> tuple[str, AstNode] | None:
    """(memberName, receiver) when node is a call through member access."""
    if node.node_type != "FunctionCall":
        return None
    callee = node.child("expression")
    if callee is None or callee.node_type != "MemberAccess":
        return None
    return callee.attr("memberName"), callee.child("expression")


def _contractish_names(unit: SourceUnit) -> set[str]:
    names = set()
    for node in iter_nodes(unit.root):
        if node.node_type == "ContractDefinition":
            names.add(node.attr("name"))
        elif node.node_type == "VariableDeclaration":
            type_name = node.child("typeName")
            if type_name is not None and type_name.node_type == "UserDefinedTypeName":
                if node.attr("name"):
                    names.add(node.attr("name"))
    return names


def receiver_is_contract(unit: SourceUnit, receiver: AstNode) -> bool:
    """Does `x` in `x.transfer(...)` look like a contract, not an address?

    A name declared with a user-defined type, a contract name itself, or a
    user-type conversion like `Token(a)` counts; addresses and conversions
    through elementary types (`payable(a)`, `address(a)`) do not.
    """
    if receiver.node_type == "Identifier":
        return receiver.attr("name") in _contractish_names(unit)
    if receiver.node_type == "FunctionCall":
        inner = receiver.child("expression")
        return inner is not None and inner.node_type == "Identifier"
    return False


def enclosing_statement(ancestors: list[AstNode]) -> AstNode | None:
    """Innermost statement-level ancestor (what a cfg block would hold)."""
    statement_types = {
        "ExpressionStatement", "VariableDeclarationStatement", "EmitStatement",
        "Return", "IfStatement", "WhileStatement", "ForStatement",
    }
    for node in reversed(ancestors):
        if node.node_type in statement_types:
            return node
    return None


def enclosing_function(ancestors: list[AstNode]) -> AstNode | None:
    for node in reversed(ancestors):
        if node.node_type in ("FunctionDefinition", "ModifierDefinition"):
            return node
    return None


def block_containing(cfg, statement_id: int) -> int | None:
    for block in cfg.blocks:
        if statement_id in block.statements:
            return block.index
    return None
