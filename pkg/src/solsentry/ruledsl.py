"""The condition language generated detectors are written in.

A rule is a boolean expression over paths into one AST node, e.g.

    node.nodeType == "UnaryOperation" && node.operator == "--"

Rules are data, not code: a closed grammar (paths, comparisons, exists,
!/&&/||) keeps model-produced detectors sandboxed, diffable and loadable at
runtime. Evaluation is total — an unresolvable path never raises, it just
fails the comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .engine import Detector, DetectorDescriptor, ScanOptions
from .errors import RuleSyntaxError
from .findings import Finding, make_finding
from .nodes import AstNode, SourceUnit, iter_nodes

UNDEFINED = object()

_COMPARE_OPS = ("==", "!=", "<=", ">=", "<", ">", "contains", "matches")


# -- expression tree -------------------------------------------------------

@dataclass(frozen=True)
class Path:
    steps: tuple    # ("attr", name) | ("index", int)

    def __str__(self) -> str:
        out = "node"
        for kind, value in self.steps:
            out += f".{value}" if kind == "attr" else f"[{value}]"
        return out


@dataclass(frozen=True)
class Compare:
    path: Path
    op: str
    literal: object


@dataclass(frozen=True)
class Exists:
    path: Path


@dataclass(frozen=True)
class Not:
    term: "RuleExpr"


@dataclass(frozen=True)
class And:
    terms: tuple


@dataclass(frozen=True)
class Or:
    terms: tuple


RuleExpr = Compare | Exists | Not | And | Or


@dataclass
class GeneratedRule:
    rule_id: str
    swe_id: str
    condition: RuleExpr
    condition_text: str
    origin_label: str = "generated"
    acceptance_accuracy: float = 0.0
    created_from: str = ""


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>&&|\|\||==|!=|<=|>=|<|>|!|\(|\)|\[|\]|\.)
  | (?P<number>-?\d+(?:\.\d+)?)
  | (?P<string>"(?:[^"\\]|\\.)*"|'(?:[^'\\]|\\.)*')
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


def _lex(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise RuleSyntaxError(pos, "a condition token")
        if match.lastgroup != "ws":
            tokens.append((match.lastgroup, match.group(), pos))
        pos = match.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _ConditionParser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos]

    def _advance(self):
        token = self.tokens[self.pos]
        if token[0] != "eof":
            self.pos += 1
        return token

    def _fail(self, expected: str):
        raise RuleSyntaxError(self._peek()[2], expected)

    def _accept_text(self, text: str) -> bool:
        if self._peek()[1] == text and self._peek()[0] != "eof":
            self.pos += 1
            return True
        return False

    def _expect_text(self, text: str):
        if not self._accept_text(text):
            self._fail(repr(text))

    def parse(self) -> RuleExpr:
        expr = self._or()
        if self._peek()[0] != "eof":
            self._fail("end of condition")
        return expr

    def _or(self) -> RuleExpr:
        terms = [self._and()]
        while self._accept_text("||"):
            terms.append(self._and())
        return terms[0] if len(terms) == 1 else Or(tuple(terms))

    def _and(self) -> RuleExpr:
        terms = [self._unary()]
        while self._accept_text("&&"):
            terms.append(self._unary())
        return terms[0] if len(terms) == 1 else And(tuple(terms))

    def _unary(self) -> RuleExpr:
        if self._accept_text("!"):
            return Not(self._unary())
        return self._primary()

    def _primary(self) -> RuleExpr:
        kind, text, _ = self._peek()
        if text == "(":
            self._advance()
            expr = self._or()
            self._expect_text(")")
            return expr
        if text == "exists":
            self._advance()
            self._expect_text("(")
            path = self._path()
            self._expect_text(")")
            return Exists(path)
        if kind == "ident" and text not in ("true", "false"):
            path = self._path()
            op = self._peek()[1]
            if op not in _COMPARE_OPS:
                self._fail("a comparison operator")
            self._advance()
            return Compare(path, op, self._literal())
        self._fail("a condition")
        raise AssertionError("unreachable")

    def _path(self) -> Path:
        # `node` is the current node; any other root is shorthand for an
        # attribute of it (`a == 1` means `node.a == 1`)
        kind, text, _ = self._peek()
        if kind != "ident" or text in ("true", "false"):
            self._fail("a path")
        self._advance()
        steps = [] if text == "node" else [("attr", text)]
        while True:
            if self._accept_text("."):
                kind, text, _ = self._peek()
                if kind != "ident":
                    self._fail("an attribute name")
                self._advance()
                steps.append(("attr", text))
            elif self._accept_text("["):
                kind, text, _ = self._peek()
                if kind != "number" or not text.isdigit():
                    self._fail("a list index")
                self._advance()
                steps.append(("index", int(text)))
                self._expect_text("]")
            else:
                return Path(tuple(steps))

    def _literal(self):
        kind, text, _ = self._advance()
        if kind == "string":
            return _unquote(text)
        if kind == "number":
            return float(text) if "." in text else int(text)
        if kind == "ident" and text in ("true", "false"):
            return text == "true"
        self._fail("a literal")
        raise AssertionError("unreachable")


def _unquote(raw: str) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    while i < len(body):
        if body[i] == "\\" and i + 1 < len(body):
            out.append(body[i + 1])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


def parse_condition(text: str) -> RuleExpr:
    """Parse a condition; RuleSyntaxError carries position and expectation."""
    return _ConditionParser(text).parse()


# -- printing --------------------------------------------------------------

def print_condition(expr: RuleExpr) -> str:
    if isinstance(expr, Or):
        return " || ".join(print_condition(t) for t in expr.terms)
    if isinstance(expr, And):
        parts = []
        for term in expr.terms:
            text = print_condition(term)
            parts.append(f"({text})" if isinstance(term, Or) else text)
        return " && ".join(parts)
    if isinstance(expr, Not):
        inner = expr.term
        text = print_condition(inner)
        if isinstance(inner, (Exists, Not)):
            return f"!{text}"
        return f"!({text})"
    if isinstance(expr, Exists):
        return f"exists({expr.path})"
    if isinstance(expr, Compare):
        return f"{expr.path} {expr.op} {_print_literal(expr.literal)}"
    raise TypeError(f"not a rule expression: {expr!r}")


def _print_literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    return repr(value)


# -- evaluation ------------------------------------------------------------

def resolve(path: Path, node: AstNode):
    """Walk attributes, child slots and list indices; UNDEFINED on any miss."""
    current: object = node
    for kind, value in path.steps:
        if kind == "attr":
            if isinstance(current, AstNode):
                if value == "nodeType":
                    current = current.node_type
                elif value == "id":
                    current = current.id
                elif value in current.attributes:
                    current = current.attributes[value]
                elif value in current.children:
                    current = current.children[value]
                else:
                    return UNDEFINED
            elif isinstance(current, dict):
                if value not in current:
                    return UNDEFINED
                current = current[value]
            else:
                return UNDEFINED
        else:
            if not isinstance(current, (list, tuple)) or value >= len(current):
                return UNDEFINED
            current = current[value]
        if current is None:
            return UNDEFINED
    return current


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _equals(value, literal) -> bool:
    if value is UNDEFINED:
        return False
    if isinstance(literal, bool):
        return isinstance(value, bool) and value == literal
    if isinstance(literal, str):
        return isinstance(value, str) and value == literal
    return _is_number(value) and value == literal


def _compare(value, op: str, literal) -> bool:
    if op == "==":
        return _equals(value, literal)
    if op == "!=":
        return not _equals(value, literal)
    if op in ("<", "<=", ">", ">="):
        if not _is_number(value) or not _is_number(literal):
            return False
        if op == "<":
            return value < literal
        if op == "<=":
            return value <= literal
        if op == ">":
            return value > literal
        return value >= literal
    if op == "contains":
        return (isinstance(value, str) and isinstance(literal, str)
                and literal in value)
    if op == "matches":
        if not isinstance(value, str) or not isinstance(literal, str):
            return False
        try:
            return re.fullmatch(literal, value) is not None
        except re.error:
            return False
    return False


def eval_condition(expr: RuleExpr, node: AstNode) -> bool:
    if isinstance(expr, Or):
        return any(eval_condition(t, node) for t in expr.terms)
    if isinstance(expr, And):
        return all(eval_condition(t, node) for t in expr.terms)
    if isinstance(expr, Not):
        return not eval_condition(expr.term, node)
    if isinstance(expr, Exists):
        return resolve(expr.path, node) is not UNDEFINED
    if isinstance(expr, Compare):
        return _compare(resolve(expr.path, node), expr.op, expr.literal)
    raise TypeError(f"not a rule expression: {expr!r}")


# -- canonical form --------------------------------------------------------

def _negate(inner: RuleExpr) -> RuleExpr:
    return inner.term if isinstance(inner, Not) else Not(inner)


def canonicalize(expr: RuleExpr) -> RuleExpr:
    """Normal form: != rewritten through ==, double negation gone, &&/||
    operand lists flattened and sorted by their printed text."""
    if isinstance(expr, Compare):
        if expr.op == "!=":
            return Not(Compare(expr.path, "==", expr.literal))
        return expr
    if isinstance(expr, Exists):
        return expr
    if isinstance(expr, Not):
        return _negate(canonicalize(expr.term))
    if isinstance(expr, (And, Or)):
        flat = []
        for term in expr.terms:
            canonical = canonicalize(term)
            if isinstance(canonical, type(expr)):
                flat.extend(canonical.terms)
            else:
                flat.append(canonical)
        flat.sort(key=print_condition)
        return type(expr)(tuple(flat))
    raise TypeError(f"not a rule expression: {expr!r}")


# -- integration with the engine ------------------------------------------

def install_rule(rule: GeneratedRule, severity: str = "medium") -> Detector:
    """Wrap a rule as a detector that fires on every matching node."""
    expr = rule.condition

    def run(unit: SourceUnit, options: ScanOptions) -> list[Finding]:
        findings = []
        for node in iter_nodes(unit.root):
            if eval_condition(expr, node):
                findings.append(make_finding(
                    unit, node, swe_id=rule.swe_id, detector_id=rule.rule_id,
                    origin=rule.origin_label, severity=severity,
                    message=f"matched {rule.origin_label} rule for {rule.swe_id}"))
        return findings

    descriptor = DetectorDescriptor(
        detector_id=rule.rule_id, swe_id=rule.swe_id, origin=rule.origin_label,
        condition_text=rule.condition_text,
        acceptance_accuracy=rule.acceptance_accuracy)
    return Detector(descriptor, run)
