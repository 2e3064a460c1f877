"""Per-function control-flow graphs over the statement AST.

Blocks hold statement node ids; branch statements (if/while/for/require) sit
last in their block and fan out through kind-tagged edges. require and revert
get an exception edge into one synthetic failure-exit block per function,
so guard reachability is visible to detectors. Ternaries never split blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NoBodyError
from .nodes import AstNode, iter_nodes

FALLTHROUGH = "fallthrough"
TRUE_BRANCH = "true-branch"
FALSE_BRANCH = "false-branch"
LOOP_BACK = "loop-back"
EXCEPTION = "exception"


@dataclass
class BasicBlock:
    index: int
    statements: list[int] = field(default_factory=list)       # node ids
    statement_nodes: list[AstNode] = field(default_factory=list)
    successors: list[tuple[int, str]] = field(default_factory=list)
    terminator: str = "implicit-fallthrough"
    dead: bool = False

    def append(self, node: AstNode) -> None:
        self.statements.append(node.id)
        self.statement_nodes.append(node)


@dataclass
class Cfg:
    function_id: int
    blocks: list[BasicBlock]
    entry: int
    exits: set[int]


def _call_name(statement: AstNode) -> str | None:
    if statement.node_type != "ExpressionStatement":
        return None
    expression = statement.child("expression")
    if expression is None or expression.node_type != "FunctionCall":
        return None
    callee = expression.child("expression")
    if callee is not None and callee.node_type == "Identifier":
        return callee.attr("name")
    return None


class _Builder:
    def __init__(self):
        self.blocks: list[BasicBlock] = []
        self.failure_exit: int | None = None
        self.current: BasicBlock | None = self._new_block()

    def _new_block(self) -> BasicBlock:
        block = BasicBlock(index=len(self.blocks))
        self.blocks.append(block)
        return block

    def _failure(self) -> int:
        if self.failure_exit is None:
            block = self._new_block()
            block.terminator = "revert"
            self.failure_exit = block.index
        return self.failure_exit

    def _need_current(self) -> BasicBlock:
        # after return/revert there is no live block; anything further is
        # dead code and goes into a fresh unreachable block
        if self.current is None:
            self.current = self._new_block()
        return self.current

    def statements(self, statements: list[AstNode]) -> None:
        for statement in statements:
            self.statement(statement)

    def statement(self, statement: AstNode) -> None:
        t = statement.node_type
        if t == "IfStatement":
            self._if(statement)
        elif t in ("WhileStatement", "ForStatement"):
            self._loop(statement)
        elif t == "Block":
            block = self._need_current()
            block.append(statement)
            self.statements(statement.child("statements"))
        elif t == "Return":
            block = self._need_current()
            block.append(statement)
            block.terminator = "return"
            self.current = None
        else:
            name = _call_name(statement)
            if name in ("require", "assert"):
                block = self._need_current()
                block.append(statement)
                block.terminator = "require-fail-edge"
                block.successors.append((self._failure(), EXCEPTION))
                nxt = self._new_block()
                block.successors.insert(0, (nxt.index, FALLTHROUGH))
                self.current = nxt
            elif name == "revert":
                block = self._need_current()
                block.append(statement)
                block.terminator = "revert"
                block.successors.append((self._failure(), EXCEPTION))
                self.current = None
            else:
                self._need_current().append(statement)

    def _if(self, statement: AstNode) -> None:
        cond = self._need_current()
        cond.append(statement)
        self.current = None

        then_block = self._new_block()
        cond.successors.append((then_block.index, TRUE_BRANCH))
        self.current = then_block
        self.statement(statement.child("trueBody"))
        then_end = self.current

        else_end = None
        false_body = statement.child("falseBody")
        if false_body is not None:
            else_block = self._new_block()
            cond.successors.append((else_block.index, FALSE_BRANCH))
            self.current = else_block
            self.statement(false_body)
            else_end = self.current

        join = self._new_block()
        if false_body is None:
            cond.successors.append((join.index, FALSE_BRANCH))
        if then_end is not None:
            then_end.successors.append((join.index, FALLTHROUGH))
        if else_end is not None:
            else_end.successors.append((join.index, FALLTHROUGH))
        self.current = join

    def _loop(self, statement: AstNode) -> None:
        is_for = statement.node_type == "ForStatement"
        if is_for:
            init = statement.child("initializationExpression")
            if init is not None:
                self._need_current().append(init)

        before = self._need_current()
        cond = self._new_block()
        before.successors.append((cond.index, FALLTHROUGH))
        cond.append(statement)

        body = self._new_block()
        cond.successors.append((body.index, TRUE_BRANCH))
        self.current = body
        self.statement(statement.child("body"))
        if self.current is not None:
            if is_for:
                loop_expression = statement.child("loopExpression")
                if loop_expression is not None:
                    self.current.append(loop_expression)
            self.current.successors.append((cond.index, LOOP_BACK))
        self.current = None

        after = self._new_block()
        cond.successors.append((after.index, FALSE_BRANCH))
        self.current = after


def build_cfg(function: AstNode) -> Cfg:
    """Build the graph for one FunctionDefinition or ModifierDefinition."""
    body = function.child("body")
    if body is None:
        raise NoBodyError(f"{function.attr('name') or function.attr('kind')} has no body")
    builder = _Builder()
    builder.statements(body.child("statements"))
    if builder.current is not None:
        builder.current.terminator = "end-of-function"
    blocks = builder.blocks
    cfg = Cfg(function_id=function.id, blocks=blocks, entry=0,
              exits={b.index for b in blocks if not b.successors})
    live = reachable(cfg, cfg.entry)
    for block in blocks:
        block.dead = block.index not in live
    return cfg


def reachable(cfg: Cfg, start: int) -> set[int]:
    """Blocks reachable from `start`, inclusive."""
    seen = {start}
    work = [start]
    while work:
        for successor, _kind in cfg.blocks[work.pop()].successors:
            if successor not in seen:
                seen.add(successor)
                work.append(successor)
    return seen


def predecessors(cfg: Cfg) -> dict[int, set[int]]:
    preds: dict[int, set[int]] = {b.index: set() for b in cfg.blocks}
    for block in cfg.blocks:
        for successor, _kind in block.successors:
            preds[successor].add(block.index)
    return preds


def dominators(cfg: Cfg) -> dict[int, set[int]]:
    """Iterate dom(b) = {b} ∪ ⋂ dom(preds) to a fixpoint.

    Unreachable blocks keep the full set (vacuous domination); callers only
    ask about live blocks.
    """
    everything = {b.index for b in cfg.blocks}
    preds = predecessors(cfg)
    dom = {index: set(everything) for index in everything}
    dom[cfg.entry] = {cfg.entry}
    changed = True
    while changed:
        changed = False
        for block in cfg.blocks:
            index = block.index
            if index == cfg.entry:
                continue
            incoming = [dom[p] for p in preds[index]]
            new = set.intersection(*incoming) if incoming else set(everything)
            new = new | {index}
            if new != dom[index]:
                dom[index] = new
                changed = True
    return dom


def _condition_expressions(statement: AstNode):
    t = statement.node_type
    if t in ("IfStatement", "WhileStatement", "ForStatement"):
        condition = statement.child("condition")
        if condition is not None:
            yield condition
    elif _call_name(statement) in ("require", "assert"):
        for argument in statement.child("expression").child("arguments"):
            yield argument


def uses_identifier_in_condition(cfg: Cfg, name: str, after: int) -> bool:
    """Is `name` read by any branch condition reachable from block `after`?

    Intra-block queries are flow-insensitive: a condition earlier in the same
    block counts too.
    """
    for index in reachable(cfg, after):
        for statement in cfg.blocks[index].statement_nodes:
            for condition in _condition_expressions(statement):
                for node in iter_nodes(condition):
                    if (node.node_type == "Identifier"
                            and node.attr("name") == name):
                        return True
    return False


def to_dot(cfg: Cfg, title: str = "cfg") -> str:
    """DOT rendering for --emit-cfg debugging output."""
    lines = [f'digraph "{title}" {{', "    node [shape=box];"]
    for block in cfg.blocks:
        label = f"B{block.index}\\n{block.terminator}"
        if block.statements:
            label += "\\nids: " + ",".join(str(i) for i in block.statements)
        style = ' style=dashed' if block.dead else ""
        lines.append(f'    b{block.index} [label="{label}"{style}];')
    for block in cfg.blocks:
        for successor, kind in block.successors:
            lines.append(f'    b{block.index} -> b{successor} [label="{kind}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
