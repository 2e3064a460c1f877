"""AST JSON export/import: compiler-convention shape, round trips, and
tolerance for trees the built-in parser never produced."""

import json

import pytest

from solsentry import astjson
from solsentry.engine import builtin_registry, scan
from solsentry.errors import MalformedAstError
from solsentry.nodes import iter_nodes, structurally_equal
from solsentry.parser import parse

SOURCE = """\
pragma solidity ^0.5.0;

contract Queue {
    uint256[] entries;

    function pop() public {
        entries.length--;
    }
}
"""


def test_export_shape_follows_compiler_convention():
    unit = parse(SOURCE)
    data = astjson.to_json(unit)
    assert data["nodeType"] == "SourceUnit"
    assert data["id"] == 0
    offset, length, file_index = data["src"].split(":")
    assert (int(offset), int(length), int(file_index)) == (0, len(SOURCE), 0)
    contract = data["nodes"][1]
    assert contract["nodeType"] == "ContractDefinition"
    assert contract["name"] == "Queue"


def test_file_index_parameter():
    unit = parse(SOURCE)
    data = astjson.to_json(unit, file_index=3)
    assert data["src"].endswith(":3")


def test_round_trip_preserves_everything():
    unit = parse(SOURCE)
    data = astjson.to_json(unit)
    back = astjson.from_json(data)
    assert structurally_equal(unit.root, back, compare_ids=True)
    spans = [(n.span.offset, n.span.length) for n in iter_nodes(unit.root)]
    back_spans = [(n.span.offset, n.span.length) for n in iter_nodes(back)]
    assert spans == back_spans


def test_json_text_round_trip_is_identical():
    unit = parse(SOURCE)
    data = astjson.to_json(unit)
    again = astjson.to_json(astjson.from_json(data))
    assert json.dumps(data, sort_keys=True) == json.dumps(again, sort_keys=True)


def test_foreign_node_types_become_opaque_and_survive():
    data = {
        "nodeType": "SourceUnit", "id": 0, "src": "0:10:0",
        "nodes": [{
            "nodeType": "UsingForDirective", "id": 1, "src": "0:5:0",
            "global": False,
            "libraryName": {"nodeType": "IdentifierPath", "id": 2,
                            "src": "0:3:0", "name": "SafeMath"},
        }],
    }
    root = astjson.from_json(data)
    foreign = root.child("nodes")[0]
    assert foreign.is_opaque
    assert foreign.attr("global") is False
    # the nested object with a nodeType key was discovered as a child
    assert foreign.child("libraryName").node_type == "IdentifierPath"
    assert astjson.to_json(root) == data


def test_scan_of_compiler_exported_ast(fixtures_dir):
    data = json.loads((fixtures_dir / "compiler_ast.json").read_text())
    unit = astjson.unit_from_json(data, file_id="compiler_ast.json")
    findings = scan(unit, builtin_registry())
    assert [f.swe_id for f in findings] == ["SWE-161"]
    assert any(n.is_opaque for n in iter_nodes(unit.root))


def test_missing_node_type_reports_path():
    data = {"nodeType": "SourceUnit", "src": "0:1:0",
            "nodes": [{"src": "0:1:0"}]}
    with pytest.raises(MalformedAstError) as err:
        astjson.from_json(data)
    assert "$.nodes[0]" in str(err.value)


def test_bad_src_reports_path():
    with pytest.raises(MalformedAstError) as err:
        astjson.from_json({"nodeType": "Literal", "src": "zero:1:0"})
    assert "bad src" in str(err.value)


def test_non_object_rejected():
    with pytest.raises(MalformedAstError):
        astjson.from_json(["not", "a", "node"])


def test_non_integer_id_rejected():
    with pytest.raises(MalformedAstError):
        astjson.from_json({"nodeType": "Literal", "src": "0:1:0", "id": "x"})


def test_unit_from_json_requires_source_unit_root():
    with pytest.raises(MalformedAstError) as err:
        astjson.unit_from_json({"nodeType": "ContractDefinition", "src": "0:1:0"})
    assert "SourceUnit" in str(err.value)


def test_absent_optional_slots_round_trip():
    unit = parse("contract C { function f() public { if (true) { } } }")
    back = astjson.from_json(astjson.to_json(unit))
    statement = next(n for n in iter_nodes(back) if n.node_type == "IfStatement")
    assert statement.child("falseBody") is None
