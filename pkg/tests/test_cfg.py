"""CFG construction: block layout, edges, reachability, dominators, and the
condition-use query the send detector leans on."""

import pytest

from solsentry import cfg as cfglib
from solsentry.cfg import (FALLTHROUGH, FALSE_BRANCH, LOOP_BACK, TRUE_BRANCH,
                           build_cfg, dominators, predecessors, reachable,
                           to_dot, uses_identifier_in_condition)
from solsentry.errors import NoBodyError
from solsentry.nodes import find_nodes
from solsentry.parser import parse


def cfg_of(body: str, signature: str = "function f(uint a, uint b) public"):
    source = f"contract C {{ {signature} {{ {body} }} }}"
    unit = parse(source)
    function = find_nodes(unit.root, "FunctionDefinition")[0]
    return build_cfg(function)


def edge_kinds(graph):
    return {(b.index, s, kind) for b in graph.blocks
            for s, kind in b.successors}


def test_straight_line_is_one_block():
    graph = cfg_of("a = 1; b = 2; a = a + b;")
    assert len(graph.blocks) == 1
    assert graph.blocks[0].terminator == "end-of-function"
    assert len(graph.blocks[0].statements) == 3
    assert graph.exits == {0}


def test_if_else_diamond():
    graph = cfg_of("a = 1; if (a > b) { a = 2; } else { b = 3; } a = 4;")
    # condition, then, else, join
    assert len(graph.blocks) == 4
    kinds = edge_kinds(graph)
    assert (0, 1, TRUE_BRANCH) in kinds
    assert (0, 2, FALSE_BRANCH) in kinds
    assert (1, 3, FALLTHROUGH) in kinds
    assert (2, 3, FALLTHROUGH) in kinds
    assert reachable(graph, graph.entry) == {0, 1, 2, 3}


def test_if_without_else_branches_to_join():
    graph = cfg_of("if (a > b) { a = 2; } b = 1;")
    kinds = edge_kinds(graph)
    assert (0, 1, TRUE_BRANCH) in kinds
    assert (0, 2, FALSE_BRANCH) in kinds


def test_while_loop_back_edge():
    graph = cfg_of("while (a > 0) { a = a - 1; } b = 1;")
    kinds = edge_kinds(graph)
    assert any(kind == LOOP_BACK for _, _, kind in kinds)
    # the loop condition block has both a body edge and an exit edge
    cond = next(b for b in graph.blocks
                if any(k == TRUE_BRANCH for _, k in b.successors))
    assert any(k == FALSE_BRANCH for _, k in cond.successors)


def test_for_loop_pieces_land_in_blocks():
    graph = cfg_of("for (uint i = 0; i < a; i++) { b = b + i; }")
    kinds = edge_kinds(graph)
    assert any(kind == LOOP_BACK for _, _, kind in kinds)


def test_return_ends_block_and_orphans_the_rest():
    graph = cfg_of("if (a > b) { return 1; } return 2;",
                   "function f(uint a, uint b) public returns (uint)")
    returns = [b for b in graph.blocks if b.terminator == "return"]
    assert len(returns) == 2
    for block in returns:
        assert block.successors == []


def test_code_after_return_is_dead():
    graph = cfg_of("return 1; a = 2;",
                   "function f(uint a, uint b) public returns (uint)")
    live = reachable(graph, graph.entry)
    dead = [b for b in graph.blocks if b.index not in live]
    assert dead
    assert all(b.dead for b in dead)


def test_require_splits_block_with_exception_edge():
    graph = cfg_of("require(a > 0); b = 1;")
    first = graph.blocks[0]
    assert first.terminator == "require-fail-edge"
    exception_edges = [(s, k) for s, k in first.successors if k == "exception"]
    assert len(exception_edges) == 1
    failure = graph.blocks[exception_edges[0][0]]
    assert failure.terminator == "revert"


def test_revert_terminates_flow():
    graph = cfg_of("if (a == 0) { revert(); } b = 1;")
    revert_block = next(b for b in graph.blocks if b.terminator == "revert"
                        and b.statements)
    assert all(kind == "exception" for _, kind in revert_block.successors)


def test_ternary_does_not_split_blocks():
    graph = cfg_of("a = b > 0 ? 1 : 2; b = 3;")
    assert len(graph.blocks) == 1


def test_predecessors_inverts_successors():
    graph = cfg_of("if (a > b) { a = 2; } else { b = 3; } a = 4;")
    preds = predecessors(graph)
    assert preds[graph.entry] == set()
    for block in graph.blocks:
        for successor, _ in block.successors:
            assert block.index in preds[successor]


def test_dominators_on_diamond():
    graph = cfg_of("a = 1; if (a > b) { a = 2; } else { b = 3; } a = 4;")
    dom = dominators(graph)
    assert dom[graph.entry] == {graph.entry}
    join = 3
    assert graph.entry in dom[join]
    assert 1 not in dom[join] and 2 not in dom[join]
    assert dom[1] == {0, 1}
    assert dom[2] == {0, 2}


def test_dominators_through_require():
    # the guard's fallthrough block is dominated by the guard block
    graph = cfg_of("require(a > 0); b = 1;")
    dom = dominators(graph)
    after = next(b.index for b in graph.blocks
                 if b.terminator == "end-of-function")
    assert 0 in dom[after]


def test_no_body_raises():
    unit = parse("interface I { function f() external; }")
    function = find_nodes(unit.root, "FunctionDefinition")[0]
    with pytest.raises(NoBodyError):
        build_cfg(function)


def test_uses_identifier_in_condition_downstream():
    graph = cfg_of("bool ok = a > 0; b = 1; require(ok);")
    # ok is declared in block 0 and read by the require in the same block
    assert uses_identifier_in_condition(graph, "ok", 0)
    assert not uses_identifier_in_condition(graph, "nothing", 0)


def test_uses_identifier_across_blocks():
    graph = cfg_of("bool ok = a > 0; if (ok) { b = 1; }")
    assert uses_identifier_in_condition(graph, "ok", 0)


def test_condition_use_does_not_look_backwards():
    # a require before the block in question is not downstream of it
    graph = cfg_of("require(a > 0); bool ok = b > 0; b = 2;")
    block_of_ok = next(b.index for b in graph.blocks
                       if b.terminator == "end-of-function")
    assert not uses_identifier_in_condition(graph, "a", block_of_ok)


def test_to_dot_lists_blocks_and_edges():
    graph = cfg_of("if (a > b) { a = 2; } b = 1;")
    dot = to_dot(graph, title="demo")
    assert dot.startswith('digraph "demo"')
    for block in graph.blocks:
        assert f"b{block.index}" in dot
    assert "true-branch" in dot and "false-branch" in dot


def test_dead_blocks_render_dashed():
    graph = cfg_of("return 1; a = 2;",
                   "function f(uint a, uint b) public returns (uint)")
    assert "style=dashed" in to_dot(graph)


def test_function_id_recorded():
    unit = parse("contract C { function f() public { } }")
    function = find_nodes(unit.root, "FunctionDefinition")[0]
    graph = build_cfg(function)
    assert graph.function_id == function.id
    assert graph.entry == 0
