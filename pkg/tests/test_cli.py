"""End-to-end command behavior and exit codes (0 clean, 1 negative, 2 error)."""

import json

import pytest

from solsentry import cli
from solsentry.bundled import CANONICAL_CONDITIONS
from solsentry.ingest import save_fixture

ADDRESS = "0x" + "12ef" * 10
ETHERSCAN_URL = ("https://api.etherscan.io/api?module=contract"
                 f"&action=getsourcecode&address={ADDRESS}")

LENGTH_WRITE = ("pragma solidity ^0.5.0;\n"
                "contract Queue { uint256[] entries;"
                " function pop() public { entries.length--; } }\n")
MODERN_LENGTH_WRITE = ("pragma solidity ^0.8.0;\n"
                       "contract Queue { uint256[] entries;"
                       " function pop() public { entries.length--; } }\n")


@pytest.fixture
def run(capsys, isolated_cwd):
    def invoke(*argv):
        code = cli.main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return invoke


@pytest.fixture
def vulnerable_file(isolated_cwd):
    path = isolated_cwd / "Queue.sol"
    path.write_text(LENGTH_WRITE, encoding="utf-8")
    return path


# -- scan ------------------------------------------------------------------

def test_scan_clean_directory_exits_zero(run, fixtures_dir):
    code, out, _ = run("scan", str(fixtures_dir / "clean"))
    assert code == 0
    assert "0 finding(s)" in out


def test_scan_vulnerable_file_exits_one(run, vulnerable_file):
    code, out, _ = run("scan", str(vulnerable_file))
    assert code == 1
    assert "SWE-161" in out
    assert "array-length-write" in out
    assert "1 finding(s)" in out


def test_scan_json_payload(run, vulnerable_file):
    code, out, _ = run("scan", "--format", "json", str(vulnerable_file))
    assert code == 1
    payload = json.loads(out)
    assert payload["count"] == 1
    finding = payload["findings"][0]
    assert finding["swe_id"] == "SWE-161"
    assert finding["detector_id"] == "array-length-write"
    assert finding["origin"] == "builtin"
    assert set(finding["span"]) == {"offset", "length", "line", "column"}


def test_scan_missing_target_is_operational_error(run):
    code, _, err = run("scan", "no-such-file.sol")
    assert code == 2
    assert "error:" in err


def test_scan_error_in_json_format(run):
    code, _, err = run("scan", "--format", "json", "no-such-file.sol")
    assert code == 2
    assert "error" in json.loads(err)


def test_scan_unknown_detector_id(run, vulnerable_file):
    code, _, err = run("scan", "--disable", "no-such", str(vulnerable_file))
    assert code == 2
    assert "unknown detector id" in err


def test_scan_disable_builtin(run, vulnerable_file):
    code, out, _ = run("scan", "--disable", "array-length-write",
                       str(vulnerable_file))
    assert code == 0
    assert "0 finding(s)" in out


def test_scan_pragma_gate_flag(run, isolated_cwd):
    path = isolated_cwd / "Modern.sol"
    path.write_text(MODERN_LENGTH_WRITE, encoding="utf-8")
    assert run("scan", str(path))[0] == 0
    code, out, _ = run("scan", "--no-pragma-gate", str(path))
    assert code == 1
    assert "SWE-161" in out


def test_scan_emit_cfg_writes_dot_to_stderr(run, vulnerable_file):
    code, out, err = run("scan", "--emit-cfg", str(vulnerable_file))
    assert code == 1
    assert "digraph" in err
    assert "digraph" not in out
    assert "SWE-161" in out


def test_scan_parallel_output_matches_serial(run, fixtures_dir):
    serial = run("scan", "--jobs", "1", str(fixtures_dir))
    parallel = run("scan", "--jobs", "4", str(fixtures_dir))
    assert serial == parallel
    assert serial[0] == 1


# -- rules lifecycle -------------------------------------------------------

def rule_file(path, condition, rule_id="gen-swe-161-cafe0001"):
    payload = {"rule_id": rule_id, "swe_id": "SWE-161",
               "condition": condition, "origin": "generated"}
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_rules_list_builtins(run):
    code, out, _ = run("rules", "list")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert lines[0].split() == ["approve-race", "SWE-114", "builtin", "enabled"]


def test_rules_list_json(run):
    code, out, _ = run("rules", "list", "--format", "json")
    assert code == 0
    listed = json.loads(out)
    assert [d["detector_id"] for d in listed] == [
        "approve-race", "array-length-write", "hardcoded-gas",
        "locked-ether", "unchecked-send"]


def test_added_rule_joins_scans_until_disabled(run, isolated_cwd,
                                               vulnerable_file):
    rules_json = rule_file(isolated_cwd / "rule.json",
                           CANONICAL_CONDITIONS["SWE-161"])
    code, out, _ = run("rules", "add", str(rules_json))
    assert code == 0
    assert "gen-swe-161-cafe0001" in out

    code, out, _ = run("scan", str(vulnerable_file))
    assert code == 1
    assert "2 finding(s)" in out
    assert "generated" in out

    assert run("rules", "disable", "gen-swe-161-cafe0001")[0] == 0
    code, out, _ = run("scan", str(vulnerable_file))
    assert code == 1
    assert "1 finding(s)" in out


def test_rules_validate_accepts_and_rejects(run, isolated_cwd):
    good = rule_file(isolated_cwd / "good.json",
                     CANONICAL_CONDITIONS["SWE-161"])
    code, out, _ = run("rules", "validate", str(good))
    assert code == 0
    assert "accepted" in out

    bad = rule_file(isolated_cwd / "bad.json", 'node.nodeType == "NoSuch"')
    code, out, _ = run("rules", "validate", str(bad))
    assert code == 1
    assert "rejected" in out

    broken = isolated_cwd / "broken.json"
    broken.write_text(json.dumps({"swe_id": "SWE-161"}), encoding="utf-8")
    assert run("rules", "validate", str(broken))[0] == 2


# -- gen -------------------------------------------------------------------

def script_file(path, responses):
    path.write_text(json.dumps(responses), encoding="utf-8")
    return path


def test_gen_integrates_on_the_third_attempt(run, isolated_cwd,
                                             vulnerable_file):
    script = script_file(isolated_cwd / "script.json", [
        "node.bad ==", "also broken &&", CANONICAL_CONDITIONS["SWE-161"]])
    code, out, _ = run("gen", "SWE-161", "--backend", f"script:{script}")
    assert code == 0
    assert "attempt-1: rejected" in out
    assert "attempt-2: rejected" in out
    assert "attempt-3: accepted" in out
    assert "integrated gen-swe-161-" in out
    assert "(origin generated)" in out

    stored = list((isolated_cwd / "rules").glob("gen-swe-161-*.json"))
    assert len(stored) == 1
    assert json.loads(stored[0].read_text())["origin"] == "generated"

    code, out, _ = run("scan", str(vulnerable_file))
    assert code == 1
    assert "2 finding(s)" in out


def test_gen_exhaustion_exits_one(run, isolated_cwd):
    script = script_file(isolated_cwd / "script.json", ["node.bad =="])
    code, out, _ = run("gen", "SWE-161", "--backend", f"script:{script}",
                       "--max-attempts", "1")
    assert code == 1
    assert "no candidate accepted" in out


def test_gen_threshold_out_of_range_is_usage_error(run, isolated_cwd):
    script = script_file(isolated_cwd / "script.json", ["x == 1"])
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["gen", "SWE-161", "--backend", f"script:{script}",
                  "--threshold", "1.01"])
    assert excinfo.value.code == 2


def test_gen_without_backend_is_an_error(run):
    code, _, err = run("gen", "SWE-161")
    assert code == 2
    assert "backend" in err


def test_gen_unknown_class_is_an_error(run, isolated_cwd):
    script = script_file(isolated_cwd / "script.json", ["x == 1"])
    code, _, err = run("gen", "SWE-999", "--backend", f"script:{script}")
    assert code == 2
    assert "no labeled instances" in err


def test_gen_json_report(run, isolated_cwd):
    script = script_file(isolated_cwd / "script.json",
                         [CANONICAL_CONDITIONS["SWE-161"]])
    code, out, _ = run("gen", "SWE-161", "--format", "json",
                       "--backend", f"script:{script}")
    assert code == 0
    payload = json.loads(out)
    assert payload["integrated"]["origin"] == "generated"
    assert payload["reports"][0]["decision"] == "accepted"


# -- dataset ---------------------------------------------------------------

def test_dataset_dedup(run):
    code, out, _ = run("dataset", "dedup")
    assert code == 0
    assert "150 -> 150 instances" in out


def test_dataset_split_writes_a_manifest(run, isolated_cwd):
    code, out, _ = run("dataset", "split", "--train", "112", "--seed", "7",
                       "--out", "manifest.json")
    assert code == 0
    assert "112 train / 38 test" in out
    manifest = json.loads((isolated_cwd / "manifest.json").read_text())
    assert manifest["seed"] == 7
    assert manifest["counts"] == {"total": 150, "train": 112, "test": 38}
    assert len(manifest["train_ids"]) == 112
    assert len(manifest["test_ids"]) == 38
    assert not set(manifest["train_ids"]) & set(manifest["test_ids"])

    run("dataset", "split", "--train", "112", "--seed", "7",
        "--out", "again.json")
    again = json.loads((isolated_cwd / "again.json").read_text())
    assert again == manifest


def test_dataset_inject_writes_a_contract(run, isolated_cwd):
    code, out, _ = run("dataset", "inject", "--snippet", "data.length--;",
                       "--seed", "5", "--out", "made.sol")
    assert code == 0
    assert "SWE-161" in out
    composed = (isolated_cwd / "made.sol").read_text(encoding="utf-8")
    assert "data.length--;" in composed
    assert run("scan", "made.sol")[0] == 1


def test_dataset_inject_snippet_sources_are_exclusive(run, isolated_cwd):
    code, _, err = run("dataset", "inject", "--seed", "1")
    assert code == 2
    assert "exactly one" in err
    (isolated_cwd / "snip.sol").write_text("data.length--;", encoding="utf-8")
    code, _, err = run("dataset", "inject", "--seed", "1",
                       "--snippet", "x;", "--snippet-file", "snip.sol")
    assert code == 2


def test_dataset_inject_rejects_broken_snippets(run):
    code, _, err = run("dataset", "inject", "--snippet", "}}}", "--seed", "1")
    assert code == 2


def test_dataset_export_jsonl(run, isolated_cwd):
    code, out, _ = run("dataset", "export-jsonl", "--out", "train.jsonl")
    assert code == 0
    assert "wrote 112 lines" in out
    lines = (isolated_cwd / "train.jsonl").read_text().splitlines()
    assert len(lines) == 112
    sample = json.loads(lines[0])
    assert [m["role"] for m in sample["messages"]] == \
        ["system", "user", "assistant"]


# -- eval ------------------------------------------------------------------

def pairs_file(path, matching, total, as_dicts=True):
    pairs = []
    for i in range(total):
        expected = 'node.kind == "good"'
        generated = expected if i < matching else 'node.kind == "bad"'
        if as_dicts:
            pairs.append({"generated": generated, "expected": expected})
        else:
            pairs.append([generated, expected])
    path.write_text(json.dumps(pairs), encoding="utf-8")
    return path


def test_eval_reports_the_score(run, isolated_cwd):
    pairs = pairs_file(isolated_cwd / "pairs.json", 35, 38)
    code, out, _ = run("eval", str(pairs))
    assert code == 0
    assert "score:   92.1" in out


def test_eval_accepts_two_item_lists_and_json_format(run, isolated_cwd):
    pairs = pairs_file(isolated_cwd / "pairs.json", 34, 38, as_dicts=False)
    code, out, _ = run("eval", str(pairs), "--mode", "logical",
                       "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report == {"mode": "logical", "total": 38, "matches": 34,
                      "score": 89.5}


def test_eval_error_paths(run, isolated_cwd):
    assert run("eval", "missing.json")[0] == 2
    bad = isolated_cwd / "bad.json"
    bad.write_text("not json", encoding="utf-8")
    assert run("eval", str(bad))[0] == 2
    empty = isolated_cwd / "empty.json"
    empty.write_text("[]", encoding="utf-8")
    assert run("eval", str(empty))[0] == 2


# -- fetch and config ------------------------------------------------------

def test_fetch_with_fixture_directory(run, isolated_cwd):
    fixtures = isolated_cwd / "fixtures"
    save_fixture(fixtures, ETHERSCAN_URL, json.dumps({
        "status": "1",
        "result": [{"SourceCode": "contract Token { }",
                    "ContractName": "Token"}]}))
    code, out, _ = run("fetch", ADDRESS, "--fixtures", str(fixtures),
                       "--cache-dir", str(isolated_cwd / "cache"))
    assert code == 0
    assert "origin: etherscan" in out
    assert "Token.sol" in out

    code, out, _ = run("fetch", ADDRESS, "--offline",
                       "--cache-dir", str(isolated_cwd / "cache"))
    assert code == 0
    assert "Token.sol" in out


def test_fetch_offline_without_cache_fails(run, isolated_cwd):
    code, _, err = run("fetch", ADDRESS, "--offline",
                       "--cache-dir", str(isolated_cwd / "cache"))
    assert code == 2
    assert "offline" in err


def test_fetch_local_json_output(run, isolated_cwd, vulnerable_file):
    code, out, _ = run("fetch", str(vulnerable_file), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["entry_file"] == "Queue.sol"
    assert "Queue.sol" in payload["files"]


def test_config_show_annotates_sources(run, isolated_cwd):
    (isolated_cwd / "solsentry.toml").write_text('format = "text"\n'
                                                 'unknown_thing = 1\n',
                                                 encoding="utf-8")
    code, out, err = run("config", "show")
    assert code == 0
    assert all("  # " in line for line in out.strip().splitlines())
    assert "format = 'text'  # file" in out
    assert "unknown_thing" in err


def test_missing_command_is_usage_error(run):
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 2
