"""Recursive-descent parser for a practical Solidity subset.

Produces trees in the compiler's compact-AST shape (see nodes.py). The parser
is deliberately not a validator: it accepts some programs a real compiler
would reject (unknown modifiers, mismatched types) because the downstream
consumers are pattern detectors, not code generators.

Out-of-scope constructs (assembly, struct/enum definitions, using-for,
try/catch, function types, break/continue) raise UnsupportedConstructError
rather than mis-parsing.
"""

from __future__ import annotations

import re

from .errors import SoliditySyntaxError, UnsupportedConstructError
from .lexer import Token, tokenize
from .nodes import AstNode, CHILD_SLOTS, SourceUnit, Span, assign_ids, line_column

_ELEMENTARY_RE = re.compile(
    r"^(u?int(\d+)?|bytes([12]?\d|3[0-2])?|byte|address|bool|string)$")

_VISIBILITY = {"public", "private", "internal", "external"}
_MUTABILITY = {"pure", "view", "payable", "constant"}
_LOCATIONS = {"memory", "storage", "calldata"}
_SUBDENOMINATIONS = {
    "wei", "gwei", "szabo", "finney", "ether",
    "seconds", "minutes", "hours", "days", "weeks", "years",
}
_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "|=", "^=", "&=", "<<=", ">>="}

# Loosest to tightest; all left-associative. Exponentiation is handled
# separately because it associates right.
_BINARY_LEVELS = [
    ("||",), ("&&",),
    ("==", "!="), ("<", ">", "<=", ">="),
    ("|",), ("^",), ("&",),
    ("<<", ">>"),
    ("+", "-"), ("*", "/", "%"),
]

_UNSUPPORTED_STATEMENTS = {
    "assembly": "assembly block",
    "try": "try/catch statement",
    "do": "do-while loop",
    "break": "break statement",
    "continue": "continue statement",
    "throw": "throw statement",
    "unchecked": "unchecked block",
}
_UNSUPPORTED_MEMBERS = {
    "struct": "struct definition",
    "enum": "enum definition",
    "using": "using-for directive",
    "type": "user-defined value type",
    "error": "custom error definition",
}


def is_elementary_type(text: str) -> bool:
    return bool(_ELEMENTARY_RE.match(text))


def _unescape(raw: str) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    escapes = {"n": "\n", "t": "\t", "r": "\r", "0": "\0",
               "\\": "\\", '"': '"', "'": "'"}
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            out.append(escapes.get(body[i + 1], body[i + 1]))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


class Parser:
    def __init__(self, source: str, file_id: str = "<memory>"):
        self.source = source
        self.file_id = file_id
        self.tokens = tokenize(source)
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def _peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def _next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def _prev_end(self) -> int:
        return self.tokens[self.pos - 1].end if self.pos else 0

    def _at(self, text: str) -> bool:
        return self._peek().text == text and self._peek().kind != "eof"

    def _accept(self, text: str) -> bool:
        if self._at(text):
            self.pos += 1
            return True
        return False

    def _fail(self, expected: str, at: Token | None = None):
        tok = at or self._peek()
        line, col = line_column(self.source, tok.offset)
        found = "end of file" if tok.kind == "eof" else repr(tok.text)
        raise SoliditySyntaxError(line, col, expected, found)

    def _unsupported(self, construct: str, at: Token | None = None):
        tok = at or self._peek()
        line, col = line_column(self.source, tok.offset)
        raise UnsupportedConstructError(line, col, construct)

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            self._fail(repr(text))
        return self._next()

    def _expect_ident(self, what: str = "an identifier") -> Token:
        tok = self._peek()
        if tok.kind != "ident":
            self._fail(what)
        return self._next()

    def _try(self, fn):
        """Run fn; on a plain syntax error rewind and return None.

        UnsupportedConstructError is a verdict, not a wrong turn; it always
        propagates.
        """
        saved = self.pos
        try:
            return fn()
        except SoliditySyntaxError:
            self.pos = saved
            return None

    def _node(self, node_type: str, start: int,
              attributes: dict | None = None,
              children: dict | None = None) -> AstNode:
        span = Span(start, self._prev_end() - start)
        children = children or {}
        slots = CHILD_SLOTS.get(node_type)
        if slots is not None:
            children = {name: children.get(name) for name in slots}
        return AstNode(node_type, span, attributes or {}, children)

    # -- entry points ------------------------------------------------------

    def parse_source_unit(self) -> SourceUnit:
        start = self._peek().offset if self._peek().kind != "eof" else 0
        nodes = []
        while self._peek().kind != "eof":
            nodes.append(self._parse_top_level())
        root = AstNode("SourceUnit", Span(0, len(self.source)),
                       {}, {"nodes": nodes})
        assign_ids(root)
        return SourceUnit(self.file_id, self.source, root)

    def parse_expression_only(self) -> AstNode:
        expr = self._parse_expression()
        if self._peek().kind != "eof":
            self._fail("end of expression")
        assign_ids(expr)
        return expr

    # -- top level ---------------------------------------------------------

    def _parse_top_level(self) -> AstNode:
        tok = self._peek()
        if tok.text == "pragma":
            return self._parse_pragma()
        if tok.text == "import":
            return self._parse_import()
        if tok.text in ("contract", "interface", "library") or tok.text == "abstract":
            return self._parse_contract()
        if tok.text in _UNSUPPORTED_MEMBERS:
            self._unsupported(_UNSUPPORTED_MEMBERS[tok.text])
        self._fail("a pragma, import or contract definition")

    def _parse_pragma(self) -> AstNode:
        start = self._peek().offset
        self._expect("pragma")
        literals = []
        while not self._at(";"):
            tok = self._next()
            if tok.kind == "eof":
                self._fail("';'")
            literals.append(tok.text)
        self._expect(";")
        if not literals:
            self._fail("a pragma name", self.tokens[self.pos - 1])
        return self._node("PragmaDirective", start, {"literals": literals})

    def _parse_import(self) -> AstNode:
        start = self._peek().offset
        self._expect("import")
        unit_alias = ""
        symbol_aliases: list[dict] = []
        if self._peek().kind == "string":
            path = _unescape(self._next().text)
            if self._accept("as"):
                unit_alias = self._expect_ident("an import alias").text
        elif self._accept("*"):
            self._expect("as")
            unit_alias = self._expect_ident("an import alias").text
            self._expect("from")
            tok = self._peek()
            if tok.kind != "string":
                self._fail("an import path string")
            path = _unescape(self._next().text)
        elif self._at("{"):
            self._next()
            while True:
                foreign = self._expect_ident("an imported symbol").text
                local = foreign
                if self._accept("as"):
                    local = self._expect_ident("an import alias").text
                symbol_aliases.append({"foreign": foreign, "local": local})
                if not self._accept(","):
                    break
            self._expect("}")
            self._expect("from")
            tok = self._peek()
            if tok.kind != "string":
                self._fail("an import path string")
            path = _unescape(self._next().text)
        else:
            self._fail("an import path string")
        self._expect(";")
        return self._node("ImportDirective", start, {
            "file": path, "unitAlias": unit_alias, "symbolAliases": symbol_aliases,
        })

    def _parse_contract(self) -> AstNode:
        start = self._peek().offset
        abstract = self._accept("abstract")
        kind_tok = self._next()
        if kind_tok.text not in ("contract", "interface", "library"):
            self._fail("'contract', 'interface' or 'library'", kind_tok)
        name = self._expect_ident("a contract name").text
        bases = []
        if self._accept("is"):
            while True:
                bases.append(self._parse_inheritance_specifier())
                if not self._accept(","):
                    break
        self._expect("{")
        members = []
        while not self._at("}"):
            if self._peek().kind == "eof":
                self._fail("'}'")
            members.append(self._parse_contract_member())
        self._expect("}")
        return self._node("ContractDefinition", start, {
            "name": name, "contractKind": kind_tok.text, "abstract": abstract,
        }, {"baseContracts": bases, "nodes": members})

    def _parse_inheritance_specifier(self) -> AstNode:
        start = self._peek().offset
        base = self._parse_user_defined_type_name()
        arguments = None
        if self._accept("("):
            arguments = []
            if not self._at(")"):
                while True:
                    arguments.append(self._parse_expression())
                    if not self._accept(","):
                        break
            self._expect(")")
        return self._node("InheritanceSpecifier", start, {},
                          {"baseName": base, "arguments": arguments})

    # -- contract members --------------------------------------------------

    def _parse_contract_member(self) -> AstNode:
        tok = self._peek()
        if tok.text in _UNSUPPORTED_MEMBERS:
            self._unsupported(_UNSUPPORTED_MEMBERS[tok.text])
        if tok.text == "function":
            return self._parse_function(kind="function")
        if tok.text == "constructor":
            return self._parse_function(kind="constructor")
        if tok.text == "receive":
            return self._parse_function(kind="receive")
        if tok.text == "fallback":
            return self._parse_function(kind="fallback")
        if tok.text == "modifier":
            return self._parse_modifier_definition()
        if tok.text == "event":
            return self._parse_event_definition()
        return self._parse_state_variable()

    def _parse_state_variable(self) -> AstNode:
        start = self._peek().offset
        type_name = self._parse_type_name()
        visibility = "internal"
        mutability = "mutable"
        override = False
        while True:
            tok = self._peek()
            if tok.text in _VISIBILITY and tok.text != "external":
                visibility = self._next().text
            elif tok.text == "constant":
                self._next()
                mutability = "constant"
            elif tok.text == "immutable":
                self._next()
                mutability = "immutable"
            elif tok.text == "override":
                self._next()
                override = True
                self._skip_override_list()
            else:
                break
        name = self._expect_ident("a state variable name").text
        value = None
        if self._accept("="):
            value = self._parse_expression()
        self._expect(";")
        return self._node("VariableDeclaration", start, {
            "name": name, "stateVariable": True, "visibility": visibility,
            "mutability": mutability, "constant": mutability == "constant",
            "storageLocation": "default", "override": override,
        }, {"typeName": type_name, "value": value})

    def _skip_override_list(self) -> None:
        if self._accept("("):
            while not self._accept(")"):
                if self._peek().kind == "eof":
                    self._fail("')'")
                self._next()

    def _parse_function(self, kind: str) -> AstNode:
        start = self._peek().offset
        self._next()                      # function/constructor/receive/fallback
        name = ""
        if kind == "function":
            if self._peek().kind == "ident":
                name = self._next().text
            else:
                kind = "fallback"         # pre-0.6 unnamed fallback function
        parameters = self._parse_parameter_list()
        visibility = ""
        mutability = "nonpayable"
        virtual = False
        override = False
        modifiers = []
        return_parameters = None
        while True:
            tok = self._peek()
            if tok.text in _VISIBILITY:
                visibility = self._next().text
            elif tok.text in _MUTABILITY:
                word = self._next().text
                mutability = "view" if word == "constant" else word
            elif tok.text == "virtual":
                self._next()
                virtual = True
            elif tok.text == "override":
                self._next()
                override = True
                self._skip_override_list()
            elif tok.text == "returns":
                self._next()
                return_parameters = self._parse_parameter_list()
            elif tok.kind == "ident":
                modifiers.append(self._parse_modifier_invocation())
            else:
                break
        if return_parameters is None:
            here = self._prev_end()
            return_parameters = AstNode("ParameterList", Span(here, 0),
                                        {}, {"parameters": []})
        body = None
        if self._at("{"):
            body = self._parse_block()
        else:
            self._expect(";")
        return self._node("FunctionDefinition", start, {
            "name": name, "kind": kind, "visibility": visibility,
            "stateMutability": mutability, "virtual": virtual, "override": override,
        }, {"parameters": parameters, "returnParameters": return_parameters,
            "modifiers": modifiers, "body": body})

    def _parse_modifier_invocation(self) -> AstNode:
        start = self._peek().offset
        name_tok = self._expect_ident("a modifier name")
        name = AstNode("Identifier", Span(name_tok.offset, name_tok.length),
                       {"name": name_tok.text}, {})
        arguments = None
        if self._accept("("):
            arguments = []
            if not self._at(")"):
                while True:
                    arguments.append(self._parse_expression())
                    if not self._accept(","):
                        break
            self._expect(")")
        return self._node("ModifierInvocation", start, {},
                          {"modifierName": name, "arguments": arguments})

    def _parse_modifier_definition(self) -> AstNode:
        start = self._peek().offset
        self._expect("modifier")
        name = self._expect_ident("a modifier name").text
        if self._at("("):
            parameters = self._parse_parameter_list()
        else:
            here = self._prev_end()
            parameters = AstNode("ParameterList", Span(here, 0),
                                 {}, {"parameters": []})
        body = self._parse_block()
        return self._node("ModifierDefinition", start, {"name": name},
                          {"parameters": parameters, "body": body})

    def _parse_event_definition(self) -> AstNode:
        start = self._peek().offset
        self._expect("event")
        name = self._expect_ident("an event name").text
        parameters = self._parse_parameter_list(event=True)
        anonymous = self._accept("anonymous")
        self._expect(";")
        return self._node("EventDefinition", start,
                          {"name": name, "anonymous": anonymous},
                          {"parameters": parameters})

    def _parse_parameter_list(self, event: bool = False) -> AstNode:
        start = self._peek().offset
        self._expect("(")
        parameters = []
        if not self._at(")"):
            while True:
                parameters.append(self._parse_parameter(event=event))
                if not self._accept(","):
                    break
        self._expect(")")
        return self._node("ParameterList", start, {}, {"parameters": parameters})

    def _parse_parameter(self, event: bool = False) -> AstNode:
        start = self._peek().offset
        type_name = self._parse_type_name()
        indexed = False
        location = "default"
        if event and self._accept("indexed"):
            indexed = True
        if self._peek().text in _LOCATIONS:
            location = self._next().text
        name = ""
        if self._peek().kind == "ident" and self._peek().text not in _LOCATIONS:
            name = self._next().text
        attributes = {
            "name": name, "stateVariable": False, "visibility": "internal",
            "mutability": "mutable", "constant": False,
            "storageLocation": location, "override": False,
        }
        if event:
            attributes["indexed"] = indexed
        return self._node("VariableDeclaration", start, attributes,
                          {"typeName": type_name, "value": None})

    # -- types -------------------------------------------------------------

    def _parse_type_name(self) -> AstNode:
        start = self._peek().offset
        tok = self._peek()
        if tok.text == "mapping":
            base = self._parse_mapping_type()
        elif tok.text == "function":
            self._unsupported("function type")
        elif is_elementary_type(tok.text):
            self._next()
            attributes = {"name": tok.text}
            if tok.text == "address" and self._at("payable"):
                self._next()
                attributes["stateMutability"] = "payable"
            base = self._node("ElementaryTypeName", start, attributes)
        elif tok.kind == "ident":
            base = self._parse_user_defined_type_name()
        else:
            self._fail("a type name")
            raise AssertionError("unreachable")
        while self._at("["):
            self._next()
            length = None
            if not self._at("]"):
                length = self._parse_expression()
            self._expect("]")
            base = self._node("ArrayTypeName", start, {},
                              {"baseType": base, "length": length})
        return base

    def _parse_mapping_type(self) -> AstNode:
        start = self._peek().offset
        self._expect("mapping")
        self._expect("(")
        key = self._parse_type_name()
        self._expect("=>")
        value = self._parse_type_name()
        self._expect(")")
        return self._node("Mapping", start, {}, {"keyType": key, "valueType": value})

    def _parse_user_defined_type_name(self) -> AstNode:
        start = self._peek().offset
        parts = [self._expect_ident("a type name").text]
        while self._peek().text == "." and self._peek(1).kind == "ident":
            self._next()
            parts.append(self._next().text)
        return self._node("UserDefinedTypeName", start, {"name": ".".join(parts)})

    # -- statements --------------------------------------------------------

    def _parse_block(self) -> AstNode:
        start = self._peek().offset
        self._expect("{")
        statements = []
        while not self._at("}"):
            if self._peek().kind == "eof":
                self._fail("'}'")
            statements.append(self._parse_statement())
        self._expect("}")
        return self._node("Block", start, {}, {"statements": statements})

    def _parse_statement(self) -> AstNode:
        tok = self._peek()
        if tok.text in _UNSUPPORTED_STATEMENTS:
            self._unsupported(_UNSUPPORTED_STATEMENTS[tok.text])
        if tok.text == "{":
            return self._parse_block()
        if tok.text == "if":
            return self._parse_if()
        if tok.text == "while":
            return self._parse_while()
        if tok.text == "for":
            return self._parse_for()
        if tok.text == "return":
            return self._parse_return()
        if tok.text == "emit":
            return self._parse_emit()
        if tok.text == "_" and self._peek(1).text == ";":
            start = tok.offset
            self._next()
            self._expect(";")
            return self._node("PlaceholderStatement", start)
        declaration = self._try(self._parse_variable_declaration_statement)
        if declaration is not None:
            return declaration
        return self._parse_expression_statement()

    def _parse_if(self) -> AstNode:
        start = self._peek().offset
        self._expect("if")
        self._expect("(")
        condition = self._parse_expression()
        self._expect(")")
        true_body = self._parse_statement()
        false_body = None
        if self._accept("else"):
            false_body = self._parse_statement()
        return self._node("IfStatement", start, {}, {
            "condition": condition, "trueBody": true_body, "falseBody": false_body,
        })

    def _parse_while(self) -> AstNode:
        start = self._peek().offset
        self._expect("while")
        self._expect("(")
        condition = self._parse_expression()
        self._expect(")")
        body = self._parse_statement()
        return self._node("WhileStatement", start, {},
                          {"condition": condition, "body": body})

    def _parse_for(self) -> AstNode:
        start = self._peek().offset
        self._expect("for")
        self._expect("(")
        init = None
        if not self._accept(";"):
            init = self._try(self._parse_variable_declaration_statement)
            if init is None:
                init = self._parse_expression_statement()
        condition = None
        if not self._at(";"):
            condition = self._parse_expression()
        self._expect(";")
        loop_expression = None
        if not self._at(")"):
            expr_start = self._peek().offset
            expr = self._parse_expression()
            loop_expression = self._node("ExpressionStatement", expr_start,
                                         {}, {"expression": expr})
        self._expect(")")
        body = self._parse_statement()
        return self._node("ForStatement", start, {}, {
            "initializationExpression": init, "condition": condition,
            "loopExpression": loop_expression, "body": body,
        })

    def _parse_return(self) -> AstNode:
        start = self._peek().offset
        self._expect("return")
        expression = None
        if not self._at(";"):
            expression = self._parse_expression()
        self._expect(";")
        return self._node("Return", start, {}, {"expression": expression})

    def _parse_emit(self) -> AstNode:
        start = self._peek().offset
        self._expect("emit")
        call = self._parse_expression()
        if call.node_type != "FunctionCall":
            self._fail("an event call")
        self._expect(";")
        return self._node("EmitStatement", start, {}, {"eventCall": call})

    def _parse_expression_statement(self) -> AstNode:
        start = self._peek().offset
        expression = self._parse_expression()
        self._expect(";")
        return self._node("ExpressionStatement", start, {},
                          {"expression": expression})

    def _parse_variable_declaration_statement(self) -> AstNode:
        start = self._peek().offset
        if self._at("("):
            return self._parse_tuple_declaration(start)
        type_name = self._parse_type_name()
        location = "default"
        if self._peek().text in _LOCATIONS:
            location = self._next().text
        name_tok = self._peek()
        if name_tok.kind != "ident" or name_tok.text in _LOCATIONS:
            self._fail("a variable name")
        self._next()
        declaration = self._node("VariableDeclaration", start, {
            "name": name_tok.text, "stateVariable": False, "visibility": "internal",
            "mutability": "mutable", "constant": False,
            "storageLocation": location, "override": False,
        }, {"typeName": type_name, "value": None})
        initial = None
        if self._accept("="):
            initial = self._parse_expression()
        self._expect(";")
        return self._node("VariableDeclarationStatement", start, {}, {
            "declarations": [declaration], "initialValue": initial,
        })

    def _parse_tuple_declaration(self, start: int) -> AstNode:
        # (bool ok, ) = target.call(...);  Empty slots stay None, as in the
        # compiler's AST. Reached only via backtracking, so a plain tuple
        # expression on the left of `=` falls through to the expression path.
        self._expect("(")
        declarations: list[AstNode | None] = []
        while True:
            if self._at(",") or self._at(")"):
                declarations.append(None)
            else:
                item_start = self._peek().offset
                type_name = self._parse_type_name()
                location = "default"
                if self._peek().text in _LOCATIONS:
                    location = self._next().text
                name = self._expect_ident("a variable name").text
                declarations.append(self._node("VariableDeclaration", item_start, {
                    "name": name, "stateVariable": False, "visibility": "internal",
                    "mutability": "mutable", "constant": False,
                    "storageLocation": location, "override": False,
                }, {"typeName": type_name, "value": None}))
            if not self._accept(","):
                break
        self._expect(")")
        if all(d is None for d in declarations):
            self._fail("a variable declaration")
        self._expect("=")
        initial = self._parse_expression()
        self._expect(";")
        return self._node("VariableDeclarationStatement", start, {}, {
            "declarations": declarations, "initialValue": initial,
        })

    # -- expressions -------------------------------------------------------

    def _parse_expression(self) -> AstNode:
        start = self._peek().offset
        left = self._parse_conditional()
        if self._peek().kind == "punct" and self._peek().text in _ASSIGN_OPS:
            operator = self._next().text
            right = self._parse_expression()
            return self._node("Assignment", start, {"operator": operator},
                              {"leftHandSide": left, "rightHandSide": right})
        return left

    def _parse_conditional(self) -> AstNode:
        start = self._peek().offset
        condition = self._parse_binary(0)
        if not self._accept("?"):
            return condition
        true_expression = self._parse_expression()
        self._expect(":")
        false_expression = self._parse_conditional()
        return self._node("Conditional", start, {}, {
            "condition": condition, "trueExpression": true_expression,
            "falseExpression": false_expression,
        })

    def _parse_binary(self, level: int) -> AstNode:
        if level >= len(_BINARY_LEVELS):
            return self._parse_power()
        start = self._peek().offset
        left = self._parse_binary(level + 1)
        operators = _BINARY_LEVELS[level]
        while self._peek().kind == "punct" and self._peek().text in operators:
            operator = self._next().text
            right = self._parse_binary(level + 1)
            left = self._node("BinaryOperation", start, {"operator": operator},
                              {"leftExpression": left, "rightExpression": right})
        return left

    def _parse_power(self) -> AstNode:
        start = self._peek().offset
        base = self._parse_unary()
        if self._at("**"):
            self._next()
            exponent = self._parse_power()
            return self._node("BinaryOperation", start, {"operator": "**"},
                              {"leftExpression": base, "rightExpression": exponent})
        return base

    def _parse_unary(self) -> AstNode:
        tok = self._peek()
        if tok.kind == "punct" and tok.text in ("!", "~", "-", "+", "++", "--"):
            start = tok.offset
            operator = self._next().text
            operand = self._parse_unary()
            return self._node("UnaryOperation", start,
                              {"operator": operator, "prefix": True},
                              {"subExpression": operand})
        if tok.text == "delete":
            start = tok.offset
            self._next()
            operand = self._parse_unary()
            return self._node("UnaryOperation", start,
                              {"operator": "delete", "prefix": True},
                              {"subExpression": operand})
        if tok.text == "new":
            start = tok.offset
            self._next()
            type_name = self._parse_type_name()
            created = self._node("NewExpression", start, {}, {"typeName": type_name})
            return self._parse_postfix_from(created, start)
        return self._parse_postfix()

    def _parse_postfix(self) -> AstNode:
        start = self._peek().offset
        return self._parse_postfix_from(self._parse_primary(), start)

    def _parse_postfix_from(self, expr: AstNode, start: int) -> AstNode:
        while True:
            tok = self._peek()
            if tok.text == "(":
                expr = self._parse_call(expr, start)
            elif tok.text == "{" and self._is_call_options():
                expr = self._parse_call_options(expr, start)
            elif tok.text == "." and self._peek(1).kind == "ident":
                self._next()
                member = self._next().text
                expr = self._node("MemberAccess", start, {"memberName": member},
                                  {"expression": expr})
            elif tok.text == "[":
                self._next()
                index = None
                if not self._at("]"):
                    index = self._parse_expression()
                self._expect("]")
                expr = self._node("IndexAccess", start, {}, {
                    "baseExpression": expr, "indexExpression": index,
                })
            elif tok.text in ("++", "--"):
                operator = self._next().text
                expr = self._node("UnaryOperation", start,
                                  {"operator": operator, "prefix": False},
                                  {"subExpression": expr})
            else:
                return expr

    def _is_call_options(self) -> bool:
        # `{` after an expression is call options only in `f{value: 1}(...)`
        # position; statement blocks never follow a parsed expression here,
        # but an object-ish `{ ident :` check keeps errors sane.
        return self._peek(1).kind == "ident" and self._peek(2).text == ":"

    def _parse_call(self, callee: AstNode, start: int) -> AstNode:
        self._expect("(")
        arguments = []
        names: list[str] = []
        if self._at("{"):
            self._next()
            while True:
                names.append(self._expect_ident("an argument name").text)
                self._expect(":")
                arguments.append(self._parse_expression())
                if not self._accept(","):
                    break
            self._expect("}")
        elif not self._at(")"):
            while True:
                arguments.append(self._parse_expression())
                if not self._accept(","):
                    break
        self._expect(")")
        kind = ("typeConversion"
                if callee.node_type == "ElementaryTypeNameExpression"
                else "functionCall")
        return self._node("FunctionCall", start, {"kind": kind, "names": names},
                          {"expression": callee, "arguments": arguments})

    def _parse_call_options(self, callee: AstNode, start: int) -> AstNode:
        self._expect("{")
        names = []
        options = []
        while True:
            names.append(self._expect_ident("an option name").text)
            self._expect(":")
            options.append(self._parse_expression())
            if not self._accept(","):
                break
        self._expect("}")
        return self._node("FunctionCallOptions", start, {"names": names},
                          {"expression": callee, "options": options})

    def _parse_primary(self) -> AstNode:
        tok = self._peek()
        start = tok.offset
        if tok.kind == "number":
            self._next()
            attributes = {"kind": "number", "value": tok.text,
                          "subdenomination": None}
            if self._peek().kind == "ident" and self._peek().text in _SUBDENOMINATIONS:
                attributes["subdenomination"] = self._next().text
            return self._node("Literal", start, attributes)
        if tok.kind == "string":
            self._next()
            return self._node("Literal", start,
                              {"kind": "string", "value": _unescape(tok.text)})
        if tok.text in ("true", "false"):
            self._next()
            return self._node("Literal", start, {"kind": "bool", "value": tok.text})
        if tok.text == "payable" and self._peek(1).text == "(":
            self._next()
            inner = AstNode("ElementaryTypeName", Span(start, len("payable")),
                            {"name": "address", "stateMutability": "payable"}, {})
            return self._node("ElementaryTypeNameExpression", start, {},
                              {"typeName": inner})
        if is_elementary_type(tok.text):
            self._next()
            inner = AstNode("ElementaryTypeName", Span(start, tok.length),
                            {"name": tok.text}, {})
            return self._node("ElementaryTypeNameExpression", start, {},
                              {"typeName": inner})
        if tok.kind == "ident":
            self._next()
            return self._node("Identifier", start, {"name": tok.text})
        if tok.text == "(":
            return self._parse_tuple_expression(start)
        if tok.text == "[":
            self._next()
            components = []
            if not self._at("]"):
                while True:
                    components.append(self._parse_expression())
                    if not self._accept(","):
                        break
            self._expect("]")
            return self._node("TupleExpression", start, {"isInlineArray": True},
                              {"components": components})
        self._fail("an expression")
        raise AssertionError("unreachable")

    def _parse_tuple_expression(self, start: int) -> AstNode:
        self._expect("(")
        components: list[AstNode | None] = []
        saw_comma = False
        while True:
            if self._at(",") or self._at(")"):
                components.append(None)
            else:
                components.append(self._parse_expression())
            if self._accept(","):
                saw_comma = True
            else:
                break
        self._expect(")")
        if not saw_comma and len(components) == 1 and components[0] is not None:
            # plain parentheses: grouping only, no node of its own
            return components[0]
        return self._node("TupleExpression", start, {"isInlineArray": False},
                          {"components": components})


def parse(source: str, file_id: str = "<memory>") -> SourceUnit:
    """Parse a full source file."""
    return Parser(source, file_id).parse_source_unit()


def parse_expression(source: str) -> AstNode:
    """Parse an isolated expression (fixtures and tests)."""
    return Parser(source).parse_expression_only()
