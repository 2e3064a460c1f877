"""Pretty-printer that inverts the parser.

Output is canonically formatted (4-space indent, one statement per line) and
reparses to a structurally equal tree: parentheses are emitted from operator
precedence, not from the original text. Trees holding opaque nodes (imported
from foreign AST JSON with unknown node types) are refused up front.
"""

from __future__ import annotations

from .errors import PrintUnsupportedError
from .nodes import AstNode, SourceUnit, iter_nodes

_PREC_ASSIGN = 1
_PREC_CONDITIONAL = 2
_BINARY_PRECEDENCE = {
    "||": 3, "&&": 4,
    "==": 5, "!=": 5,
    "<": 6, ">": 6, "<=": 6, ">=": 6,
    "|": 7, "^": 8, "&": 9,
    "<<": 10, ">>": 10,
    "+": 11, "-": 11,
    "*": 12, "/": 12, "%": 12,
    "**": 13,
}
_PREC_UNARY = 14
_PREC_POSTFIX = 15
_PREC_PRIMARY = 16

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


def _escape(value: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in value)


def _join_pragma(literals: list[str]) -> str:
    out = literals[0]
    for prev, cur in zip(literals, literals[1:]):
        if prev[-1:].isalnum() and cur[:1].isalnum():
            out += " "
        out += cur
    return out


class Printer:
    indent_unit = "    "

    def print_unit(self, unit: SourceUnit) -> str:
        root = unit.root if isinstance(unit, SourceUnit) else unit
        opaque = sorted({n.node_type for n in iter_nodes(root) if n.is_opaque})
        if opaque:
            raise PrintUnsupportedError(opaque)
        parts = []
        for node in root.child("nodes") or []:
            parts.append(self._top_level(node))
        return "\n".join(parts) + ("\n" if parts else "")

    # -- declarations ------------------------------------------------------

    def _top_level(self, node: AstNode) -> str:
        if node.node_type == "PragmaDirective":
            return f"pragma {_join_pragma(node.attr('literals'))};\n"
        if node.node_type == "ImportDirective":
            return self._import(node)
        if node.node_type == "ContractDefinition":
            return self._contract(node)
        raise PrintUnsupportedError([node.node_type])

    def _import(self, node: AstNode) -> str:
        path = _escape(node.attr("file"))
        aliases = node.attr("symbolAliases") or []
        if aliases:
            names = ", ".join(
                a["foreign"] if a["foreign"] == a["local"]
                else f"{a['foreign']} as {a['local']}"
                for a in aliases)
            return f'import {{{names}}} from "{path}";\n'
        if node.attr("unitAlias"):
            return f'import "{path}" as {node.attr("unitAlias")};\n'
        return f'import "{path}";\n'

    def _contract(self, node: AstNode) -> str:
        head = ""
        if node.attr("abstract"):
            head += "abstract "
        head += f"{node.attr('contractKind')} {node.attr('name')}"
        bases = node.child("baseContracts") or []
        if bases:
            head += " is " + ", ".join(self._inheritance(b) for b in bases)
        members = "".join(self._member(m) for m in node.child("nodes") or [])
        return f"{head} {{\n{members}}}\n"

    def _inheritance(self, node: AstNode) -> str:
        text = node.child("baseName").attr("name")
        arguments = node.child("arguments")
        if arguments is not None:
            text += "(" + ", ".join(self._expr(a) for a in arguments) + ")"
        return text

    def _member(self, node: AstNode) -> str:
        indent = self.indent_unit
        if node.node_type == "VariableDeclaration":
            return indent + self._state_variable(node) + "\n"
        if node.node_type == "FunctionDefinition":
            return self._function(node, indent)
        if node.node_type == "ModifierDefinition":
            return self._modifier(node, indent)
        if node.node_type == "EventDefinition":
            params = self._parameters(node.child("parameters"), event=True)
            anon = " anonymous" if node.attr("anonymous") else ""
            return f"{indent}event {node.attr('name')}({params}){anon};\n"
        raise PrintUnsupportedError([node.node_type])

    def _state_variable(self, node: AstNode) -> str:
        parts = [self._type(node.child("typeName"))]
        if node.attr("visibility") not in ("internal", ""):
            parts.append(node.attr("visibility"))
        if node.attr("mutability") in ("constant", "immutable"):
            parts.append(node.attr("mutability"))
        if node.attr("override"):
            parts.append("override")
        parts.append(node.attr("name"))
        text = " ".join(parts)
        value = node.child("value")
        if value is not None:
            text += " = " + self._expr(value)
        return text + ";"

    def _function(self, node: AstNode, indent: str) -> str:
        kind = node.attr("kind")
        if kind == "function":
            head = f"function {node.attr('name')}"
        else:
            head = kind    # constructor / receive / fallback
        head += "(" + self._parameters(node.child("parameters")) + ")"
        if node.attr("visibility"):
            head += " " + node.attr("visibility")
        if node.attr("stateMutability") != "nonpayable":
            head += " " + node.attr("stateMutability")
        if node.attr("virtual"):
            head += " virtual"
        if node.attr("override"):
            head += " override"
        for invocation in node.child("modifiers") or []:
            head += " " + self._modifier_invocation(invocation)
        returns = node.child("returnParameters")
        if returns is not None and returns.child("parameters"):
            head += " returns (" + self._parameters(returns) + ")"
        body = node.child("body")
        if body is None:
            return f"{indent}{head};\n"
        return f"{indent}{head} {self._block(body, indent)}\n"

    def _modifier(self, node: AstNode, indent: str) -> str:
        params = self._parameters(node.child("parameters"))
        body = self._block(node.child("body"), indent)
        return f"{indent}modifier {node.attr('name')}({params}) {body}\n"

    def _modifier_invocation(self, node: AstNode) -> str:
        text = node.child("modifierName").attr("name")
        arguments = node.child("arguments")
        if arguments is not None:
            text += "(" + ", ".join(self._expr(a) for a in arguments) + ")"
        return text

    def _parameters(self, parameter_list: AstNode, event: bool = False) -> str:
        out = []
        for p in parameter_list.child("parameters") or []:
            text = self._type(p.child("typeName"))
            if event and p.attr("indexed"):
                text += " indexed"
            if p.attr("storageLocation") != "default":
                text += " " + p.attr("storageLocation")
            if p.attr("name"):
                text += " " + p.attr("name")
            out.append(text)
        return ", ".join(out)

    def _type(self, node: AstNode) -> str:
        if node.node_type == "ElementaryTypeName":
            name = node.attr("name")
            if node.attr("stateMutability") == "payable":
                return name + " payable"
            return name
        if node.node_type == "UserDefinedTypeName":
            return node.attr("name")
        if node.node_type == "ArrayTypeName":
            length = node.child("length")
            inner = "" if length is None else self._expr(length)
            return f"{self._type(node.child('baseType'))}[{inner}]"
        if node.node_type == "Mapping":
            key = self._type(node.child("keyType"))
            value = self._type(node.child("valueType"))
            return f"mapping({key} => {value})"
        raise PrintUnsupportedError([node.node_type])

    # -- statements --------------------------------------------------------

    def _block(self, node: AstNode, indent: str) -> str:
        inner = indent + self.indent_unit
        lines = "".join(self._statement(s, inner) for s in node.child("statements"))
        return "{\n" + lines + indent + "}"

    def _statement(self, node: AstNode, indent: str) -> str:
        t = node.node_type
        if t == "Block":
            return indent + self._block(node, indent) + "\n"
        if t == "ExpressionStatement":
            return indent + self._expr(node.child("expression")) + ";\n"
        if t == "EmitStatement":
            return indent + "emit " + self._expr(node.child("eventCall")) + ";\n"
        if t == "PlaceholderStatement":
            return indent + "_;\n"
        if t == "Return":
            expression = node.child("expression")
            if expression is None:
                return indent + "return;\n"
            return indent + "return " + self._expr(expression) + ";\n"
        if t == "VariableDeclarationStatement":
            return indent + self._declaration_statement(node) + "\n"
        if t == "IfStatement":
            return self._if(node, indent)
        if t == "WhileStatement":
            cond = self._expr(node.child("condition"))
            return (indent + f"while ({cond}) "
                    + self._embedded_body(node.child("body"), indent))
        if t == "ForStatement":
            return self._for(node, indent)
        raise PrintUnsupportedError([t])

    def _embedded_body(self, body: AstNode, indent: str) -> str:
        if body.node_type == "Block":
            return self._block(body, indent) + "\n"
        # single-statement body on its own line
        return "\n" + self._statement(body, indent + self.indent_unit)

    def _if(self, node: AstNode, indent: str) -> str:
        cond = self._expr(node.child("condition"))
        text = indent + f"if ({cond}) "
        true_body = node.child("trueBody")
        false_body = node.child("falseBody")
        if true_body.node_type == "Block":
            text += self._block(true_body, indent)
        else:
            text += "\n" + self._statement(true_body, indent + self.indent_unit)
            text = text.rstrip("\n")
        if false_body is None:
            return text + "\n"
        text += " else "
        if false_body.node_type == "IfStatement":
            return text + self._if(false_body, indent).lstrip()
        if false_body.node_type == "Block":
            return text + self._block(false_body, indent) + "\n"
        return text + "\n" + self._statement(false_body, indent + self.indent_unit)

    def _for(self, node: AstNode, indent: str) -> str:
        init = node.child("initializationExpression")
        if init is None:
            init_text = ";"
        elif init.node_type == "VariableDeclarationStatement":
            init_text = self._declaration_statement(init)
        else:
            init_text = self._expr(init.child("expression")) + ";"
        condition = node.child("condition")
        cond_text = "" if condition is None else " " + self._expr(condition)
        loop = node.child("loopExpression")
        loop_text = "" if loop is None else " " + self._expr(loop.child("expression"))
        head = f"for ({init_text}{cond_text};{loop_text}) "
        return indent + head + self._embedded_body(node.child("body"), indent)

    def _declaration_statement(self, node: AstNode) -> str:
        declarations = node.child("declarations")
        if len(declarations) == 1 and declarations[0] is not None:
            text = self._local_declaration(declarations[0])
        else:
            inner = ", ".join(
                "" if d is None else self._local_declaration(d)
                for d in declarations)
            text = f"({inner})"
        initial = node.child("initialValue")
        if initial is not None:
            text += " = " + self._expr(initial)
        return text + ";"

    def _local_declaration(self, node: AstNode) -> str:
        text = self._type(node.child("typeName"))
        if node.attr("storageLocation") != "default":
            text += " " + node.attr("storageLocation")
        if node.attr("name"):
            text += " " + node.attr("name")
        return text

    # -- expressions -------------------------------------------------------

    def _wrap(self, node: AstNode, minimum: int) -> str:
        text, precedence = self._expr_prec(node)
        if precedence < minimum:
            return f"({text})"
        return text

    def _expr(self, node: AstNode) -> str:
        return self._expr_prec(node)[0]

    def _expr_prec(self, node: AstNode) -> tuple[str, int]:
        t = node.node_type
        if t == "Identifier":
            return node.attr("name"), _PREC_PRIMARY
        if t == "Literal":
            return self._literal(node), _PREC_PRIMARY
        if t == "ElementaryTypeNameExpression":
            inner = node.child("typeName")
            if inner.attr("stateMutability") == "payable":
                return "payable", _PREC_PRIMARY
            return inner.attr("name"), _PREC_PRIMARY
        if t == "TupleExpression":
            components = node.child("components")
            inner = ", ".join("" if c is None else self._expr(c)
                              for c in components)
            if node.attr("isInlineArray"):
                return f"[{inner}]", _PREC_PRIMARY
            return f"({inner})", _PREC_PRIMARY
        if t == "Assignment":
            left = self._wrap(node.child("leftHandSide"), _PREC_CONDITIONAL)
            right = self._wrap(node.child("rightHandSide"), _PREC_ASSIGN)
            return f"{left} {node.attr('operator')} {right}", _PREC_ASSIGN
        if t == "Conditional":
            cond = self._wrap(node.child("condition"), _PREC_CONDITIONAL + 1)
            true_expression = self._wrap(node.child("trueExpression"), _PREC_ASSIGN)
            false_expression = self._wrap(node.child("falseExpression"),
                                          _PREC_CONDITIONAL)
            return f"{cond} ? {true_expression} : {false_expression}", _PREC_CONDITIONAL
        if t == "BinaryOperation":
            op = node.attr("operator")
            precedence = _BINARY_PRECEDENCE[op]
            if op == "**":    # right-associative
                left = self._wrap(node.child("leftExpression"), precedence + 1)
                right = self._wrap(node.child("rightExpression"), precedence)
            else:
                left = self._wrap(node.child("leftExpression"), precedence)
                right = self._wrap(node.child("rightExpression"), precedence + 1)
            return f"{left} {op} {right}", precedence
        if t == "UnaryOperation":
            return self._unary(node)
        if t == "FunctionCall":
            callee = self._wrap(node.child("expression"), _PREC_POSTFIX)
            names = node.attr("names") or []
            arguments = node.child("arguments")
            if names:
                pairs = ", ".join(f"{n}: {self._expr(a)}"
                                  for n, a in zip(names, arguments))
                return f"{callee}({{{pairs}}})", _PREC_POSTFIX
            args = ", ".join(self._expr(a) for a in arguments)
            return f"{callee}({args})", _PREC_POSTFIX
        if t == "FunctionCallOptions":
            callee = self._wrap(node.child("expression"), _PREC_POSTFIX)
            pairs = ", ".join(
                f"{n}: {self._expr(v)}"
                for n, v in zip(node.attr("names"), node.child("options")))
            return f"{callee}{{{pairs}}}", _PREC_POSTFIX
        if t == "MemberAccess":
            target = self._wrap(node.child("expression"), _PREC_POSTFIX)
            return f"{target}.{node.attr('memberName')}", _PREC_POSTFIX
        if t == "IndexAccess":
            base = self._wrap(node.child("baseExpression"), _PREC_POSTFIX)
            index = node.child("indexExpression")
            inner = "" if index is None else self._expr(index)
            return f"{base}[{inner}]", _PREC_POSTFIX
        if t == "NewExpression":
            return f"new {self._type(node.child('typeName'))}", _PREC_POSTFIX
        raise PrintUnsupportedError([t])

    def _unary(self, node: AstNode) -> tuple[str, int]:
        op = node.attr("operator")
        if node.attr("prefix"):
            operand = self._wrap(node.child("subExpression"), _PREC_UNARY)
            if op == "delete":
                return f"delete {operand}", _PREC_UNARY
            if op[-1] in "+-" and operand[:1] in "+-":
                return f"{op} {operand}", _PREC_UNARY
            return f"{op}{operand}", _PREC_UNARY
        operand = self._wrap(node.child("subExpression"), _PREC_POSTFIX)
        if operand[-1:] in "+-" and op[0] in "+-":
            return f"{operand} {op}", _PREC_POSTFIX
        return f"{operand}{op}", _PREC_POSTFIX

    def _literal(self, node: AstNode) -> str:
        kind = node.attr("kind")
        if kind == "string":
            return f'"{_escape(node.attr("value"))}"'
        text = node.attr("value")
        if kind == "number" and node.attr("subdenomination"):
            text += " " + node.attr("subdenomination")
        return text


def print_source(unit: SourceUnit) -> str:
    """Render a parsed unit back to canonical Solidity text."""
    return Printer().print_unit(unit)


def print_expression(node: AstNode) -> str:
    """Render a single expression."""
    return Printer()._expr(node)
