"""Parser output shape: node types, spans, dense pre-order ids, errors."""

import pytest

from solsentry.errors import SoliditySyntaxError, UnsupportedConstructError
from solsentry.nodes import find_nodes, iter_nodes
from solsentry.parser import parse, parse_expression

SMALL = """\
pragma solidity ^0.8.0;

contract Wallet {
    uint256 balance;

    function deposit(uint256 amount) public payable {
        balance = balance + amount;
    }
}
"""


def test_source_unit_root():
    unit = parse(SMALL, file_id="wallet.sol")
    assert unit.root.node_type == "SourceUnit"
    assert unit.file_id == "wallet.sol"
    kinds = [n.node_type for n in unit.root.child("nodes")]
    assert kinds == ["PragmaDirective", "ContractDefinition"]


def test_pragma_literals_and_constraint():
    unit = parse(SMALL)
    assert unit.pragma_directives == [("solidity", "^0.8.0")]
    assert unit.solidity_constraint().admits((0, 8, 4))


def test_ids_are_dense_preorder():
    unit = parse(SMALL)
    ids = [node.id for node in iter_nodes(unit.root)]
    assert ids == list(range(len(ids)))


def test_spans_cover_their_text():
    unit = parse(SMALL)
    contract = unit.contracts[0]
    assert unit.text_at(contract.span).startswith("contract Wallet")
    assert unit.text_at(contract.span).endswith("}")
    function = find_nodes(unit.root, "FunctionDefinition")[0]
    assert unit.text_at(function.span).startswith("function deposit")
    for node in iter_nodes(unit.root):
        assert 0 <= node.span.offset <= len(SMALL)
        assert node.span.end <= len(SMALL)


def test_every_child_span_inside_parent():
    unit = parse(SMALL)

    def check(node):
        for child in node.child_nodes():
            assert node.span.contains(child.span), (node, child)
            check(child)

    check(unit.root)


def test_contract_kinds():
    unit = parse("contract A {} interface B {} library C {}")
    kinds = [c.attr("contractKind") for c in unit.contracts]
    assert kinds == ["contract", "interface", "library"]


def test_inheritance():
    unit = parse("contract A {} contract B is A {}")
    b = unit.contracts[1]
    bases = [s.child("baseName").attr("name")
             for s in b.child("baseContracts")]
    assert bases == ["A"]


def test_function_attributes():
    source = """
    contract C {
        function f(uint256 a) external pure returns (uint256) { return a; }
        function() external payable {}
        receive() external payable {}
    }
    """
    unit = parse(source)
    functions = find_nodes(unit.root, "FunctionDefinition")
    assert functions[0].attr("visibility") == "external"
    assert functions[0].attr("stateMutability") == "pure"
    assert functions[1].attr("kind") == "fallback"
    assert functions[2].attr("kind") == "receive"
    assert functions[2].attr("stateMutability") == "payable"


def test_state_variable_declaration():
    unit = parse("contract C { mapping(address => uint256) balances; uint8[] small; }")
    variables = find_nodes(unit.root, "VariableDeclaration")
    assert variables[0].child("typeName").node_type == "Mapping"
    assert variables[1].child("typeName").node_type == "ArrayTypeName"


def test_operator_precedence():
    expr = parse_expression("1 + 2 * 3")
    assert expr.attr("operator") == "+"
    assert expr.child("rightExpression").attr("operator") == "*"


def test_comparison_and_logic_precedence():
    expr = parse_expression("a < b && c == d || e")
    assert expr.attr("operator") == "||"
    left = expr.child("leftExpression")
    assert left.attr("operator") == "&&"
    assert left.child("leftExpression").attr("operator") == "<"


def test_member_index_and_call_chain():
    expr = parse_expression("tokens[0].balanceOf(user)")
    assert expr.node_type == "FunctionCall"
    callee = expr.child("expression")
    assert callee.node_type == "MemberAccess"
    assert callee.attr("memberName") == "balanceOf"
    assert callee.child("expression").node_type == "IndexAccess"


def test_call_options_block():
    expr = parse_expression("to.call{value: amount, gas: 2300}(payload)")
    options = expr.child("expression")
    assert options.node_type == "FunctionCallOptions"
    assert options.attr("names") == ["value", "gas"]
    gas = options.child("options")[1]
    assert gas.node_type == "Identifier" or gas.node_type == "Literal"


def test_unary_operations():
    postfix = parse_expression("x++")
    assert postfix.node_type == "UnaryOperation"
    assert postfix.attr("operator") == "++"
    assert postfix.attr("prefix") is False
    prefix = parse_expression("!ok")
    assert prefix.attr("prefix") is True


def test_literals():
    unit = parse('contract C { function f() public { uint a = 0x10; string memory s = "hi"; bool b = true; } }')
    literals = find_nodes(unit.root, "Literal")
    assert [l.attr("kind") for l in literals] == ["number", "string", "bool"]
    assert literals[0].attr("value") == "0x10"
    assert literals[1].attr("value") == "hi"


def test_statements_shapes():
    source = """
    contract C {
        function f(uint n) public returns (uint) {
            uint total = 0;
            for (uint i = 0; i < n; i++) { total += i; }
            while (total > 100) { total -= 1; }
            if (total == 0) { return 0; } else { return total; }
        }
    }
    """
    unit = parse(source)
    for node_type in ("VariableDeclarationStatement", "ForStatement",
                      "WhileStatement", "IfStatement", "Return"):
        assert find_nodes(unit.root, node_type), node_type


def test_emit_and_events():
    source = """
    contract C {
        event Ping(address from);
        function f() public { emit Ping(msg.sender); }
    }
    """
    unit = parse(source)
    assert find_nodes(unit.root, "EventDefinition")
    assert find_nodes(unit.root, "EmitStatement")


def test_modifier_with_placeholder():
    source = """
    contract C {
        modifier onlyOwner() { require(true); _; }
        function f() public onlyOwner {}
    }
    """
    unit = parse(source)
    assert find_nodes(unit.root, "ModifierDefinition")
    assert find_nodes(unit.root, "PlaceholderStatement")
    invocations = find_nodes(unit.root, "ModifierInvocation")
    assert invocations[0].child("modifierName").attr("name") == "onlyOwner"


def test_import_directive():
    unit = parse('import "./Other.sol";\ncontract C {}')
    imports = find_nodes(unit.root, "ImportDirective")
    assert imports[0].attr("file") == "./Other.sol"


def test_interface_function_without_body():
    unit = parse("interface I { function f() external; }")
    function = find_nodes(unit.root, "FunctionDefinition")[0]
    assert function.child("body") is None


def test_syntax_error_position():
    with pytest.raises(SoliditySyntaxError) as err:
        parse("contract C { function f() public { uint x = ; } }")
    assert err.value.line == 1
    assert err.value.column > 0


def test_error_on_garbage():
    with pytest.raises(SoliditySyntaxError):
        parse("}}}")


def test_assembly_is_unsupported():
    source = "contract C { function f() public { assembly { let x := 1 } } }"
    with pytest.raises(UnsupportedConstructError) as err:
        parse(source)
    assert "assembly" in str(err.value)


def test_parse_expression_rejects_trailing_garbage():
    with pytest.raises(SoliditySyntaxError):
        parse_expression("a + b }")
