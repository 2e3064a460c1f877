"""AST substrate: nodes, source units, tree traversal, structural equality.

Nodes follow the compact-AST convention of the Solidity compiler: every node
carries a `nodeType` discriminant, scalar attributes (operator, memberName,
name, ...) and named child slots (expression, leftHandSide, arguments, ...).
A single generic node class is used instead of one class per node type so that
rule conditions can resolve arbitrary attribute/child paths by name, and so
external ASTs with unknown node types stay representable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator


@dataclass(frozen=True)
class Span:
    """Byte extent of a construct in its source text."""

    offset: int
    length: int

    @property
    def end(self) -> int:
        return self.offset + self.length

    def contains(self, other: "Span") -> bool:
        return self.offset <= other.offset and other.end <= self.end

    def overlaps(self, other: "Span") -> bool:
        return self.offset < other.end and other.offset < self.end


# Node types the built-in parser can produce, and the printer can render.
KNOWN_NODE_TYPES = frozenset({
    "SourceUnit", "PragmaDirective", "ImportDirective",
    "ContractDefinition", "InheritanceSpecifier",
    "FunctionDefinition", "ModifierDefinition", "ModifierInvocation",
    "EventDefinition", "ParameterList", "VariableDeclaration",
    "ElementaryTypeName", "UserDefinedTypeName", "ArrayTypeName", "Mapping",
    "Block", "IfStatement", "WhileStatement", "ForStatement", "Return",
    "ExpressionStatement", "EmitStatement", "VariableDeclarationStatement",
    "PlaceholderStatement",
    "Assignment", "BinaryOperation", "UnaryOperation", "Conditional",
    "FunctionCall", "FunctionCallOptions", "MemberAccess", "IndexAccess",
    "Identifier", "Literal", "ElementaryTypeNameExpression", "TupleExpression",
    "NewExpression",
})

# Child slots per node type, in declaration order. Anything else found in an
# AST JSON object is an attribute. Unknown node types fall back to a generic
# "dict with a nodeType key is a child" rule (see astjson).
CHILD_SLOTS: dict[str, tuple[str, ...]] = {
    "SourceUnit": ("nodes",),
    "PragmaDirective": (),
    "ImportDirective": (),
    "ContractDefinition": ("baseContracts", "nodes"),
    "InheritanceSpecifier": ("baseName", "arguments"),
    "FunctionDefinition": ("parameters", "returnParameters", "modifiers", "body"),
    "ModifierDefinition": ("parameters", "body"),
    "ModifierInvocation": ("modifierName", "arguments"),
    "EventDefinition": ("parameters",),
    "ParameterList": ("parameters",),
    "VariableDeclaration": ("typeName", "value"),
    "ElementaryTypeName": (),
    "UserDefinedTypeName": (),
    "ArrayTypeName": ("baseType", "length"),
    "Mapping": ("keyType", "valueType"),
    "Block": ("statements",),
    "IfStatement": ("condition", "trueBody", "falseBody"),
    "WhileStatement": ("condition", "body"),
    "ForStatement": ("initializationExpression", "condition", "loopExpression", "body"),
    "Return": ("expression",),
    "ExpressionStatement": ("expression",),
    "EmitStatement": ("eventCall",),
    "VariableDeclarationStatement": ("declarations", "initialValue"),
    "PlaceholderStatement": (),
    "Assignment": ("leftHandSide", "rightHandSide"),
    "BinaryOperation": ("leftExpression", "rightExpression"),
    "UnaryOperation": ("subExpression",),
    "Conditional": ("condition", "trueExpression", "falseExpression"),
    "FunctionCall": ("expression", "arguments"),
    "FunctionCallOptions": ("expression", "options"),
    "MemberAccess": ("expression",),
    "IndexAccess": ("baseExpression", "indexExpression"),
    "Identifier": (),
    "Literal": (),
    "ElementaryTypeNameExpression": ("typeName",),
    "TupleExpression": ("components",),
    "NewExpression": ("typeName",),
}


@dataclass
class AstNode:
    """One AST node.

    `children` maps slot name to an AstNode, a list of AstNode-or-None, or
    None for an absent optional slot. `attributes` holds JSON-able scalars
    (and lists of scalars, e.g. FunctionCallOptions `names`).
    """

    node_type: str
    span: Span
    attributes: dict = field(default_factory=dict)
    children: dict = field(default_factory=dict)
    id: int = -1

    @property
    def is_opaque(self) -> bool:
        return self.node_type not in KNOWN_NODE_TYPES

    def child(self, name: str):
        return self.children.get(name)

    def attr(self, name: str, default=None):
        return self.attributes.get(name, default)

    def child_nodes(self) -> Iterator["AstNode"]:
        """Direct child nodes, in slot order, skipping absent slots."""
        for value in self.children.values():
            if isinstance(value, AstNode):
                yield value
            elif isinstance(value, list):
                for item in value:
                    if isinstance(item, AstNode):
                        yield item

    def __repr__(self) -> str:
        return f"<{self.node_type} id={self.id} @{self.span.offset}+{self.span.length}>"


@dataclass
class SourceUnit:
    """A parsed file: the tree root plus the raw text it was parsed from."""

    file_id: str
    raw_text: str
    root: AstNode

    @property
    def pragma_directives(self) -> list[tuple[str, str]]:
        out = []
        for node in self.root.child("nodes") or []:
            if node.node_type == "PragmaDirective":
                literals = node.attr("literals") or []
                name = literals[0] if literals else ""
                out.append((name, "".join(literals[1:])))
        return out

    @property
    def contracts(self) -> list[AstNode]:
        return [n for n in (self.root.child("nodes") or [])
                if n.node_type == "ContractDefinition"]

    def solidity_constraint(self):
        """Parsed `pragma solidity` constraint, or None if absent."""
        from .versions import VersionConstraint
        for name, text in self.pragma_directives:
            if name == "solidity":
                return VersionConstraint.parse(text)
        return None

    def text_at(self, span: Span) -> str:
        return self.raw_text[span.offset:span.end]


def iter_nodes(root: AstNode) -> Iterator[AstNode]:
    """All nodes under (and including) `root`, pre-order."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(list(node.child_nodes())))


def walk(unit: SourceUnit | AstNode,
         visitor: Callable[[AstNode, list[AstNode]], None]) -> SourceUnit | AstNode:
    """Visit every node pre-order with its ancestor stack (root first).

    The stack list is reused between calls; copy it if you keep it.
    """
    root = unit.root if isinstance(unit, SourceUnit) else unit
    ancestors: list[AstNode] = []

    def go(node: AstNode) -> None:
        visitor(node, ancestors)
        ancestors.append(node)
        for child in node.child_nodes():
            go(child)
        ancestors.pop()

    go(root)
    return unit


def assign_ids(root: AstNode) -> None:
    """Assign dense pre-order ids 0..n-1."""
    next_id = 0
    for node in iter_nodes(root):
        node.id = next_id
        next_id += 1


def node_count(root: AstNode) -> int:
    return sum(1 for _ in iter_nodes(root))


def find_nodes(root: AstNode, node_type: str) -> list[AstNode]:
    return [n for n in iter_nodes(root) if n.node_type == node_type]


def structurally_equal(a: AstNode, b: AstNode, *, compare_ids: bool = False) -> bool:
    """Tree equality over node types, attributes and child structure.

    Spans are excluded so pretty-printed round trips compare equal.
    """
    if a.node_type != b.node_type or a.attributes != b.attributes:
        return False
    if compare_ids and a.id != b.id:
        return False
    if list(a.children.keys()) != list(b.children.keys()):
        return False
    for name in a.children:
        va, vb = a.children[name], b.children[name]
        if isinstance(va, AstNode) and isinstance(vb, AstNode):
            if not structurally_equal(va, vb, compare_ids=compare_ids):
                return False
        elif isinstance(va, list) and isinstance(vb, list):
            if len(va) != len(vb):
                return False
            for ia, ib in zip(va, vb):
                if isinstance(ia, AstNode) and isinstance(ib, AstNode):
                    if not structurally_equal(ia, ib, compare_ids=compare_ids):
                        return False
                elif ia is not ib and ia != ib:
                    return False
        elif va is not vb and va != vb:
            return False
    return True


def line_column(text: str, offset: int) -> tuple[int, int]:
    """1-based (line, column) of a byte offset in `text`."""
    line = text.count("\n", 0, offset) + 1
    last_nl = text.rfind("\n", 0, offset)
    return line, offset - last_nl
