"""Release gate: the eight checks a build must clear, one test per criterion.

Each test prints `criterion N: PASS` (or FAIL) on the terminal so a plain
pytest run doubles as the checklist.
"""

import json
import random
import socket
import time

import pytest

from _dslref import node_to_plain, random_expr, random_node, ref_eval
from solsentry import astjson, cli
from solsentry.bundled import CANONICAL_CONDITIONS
from solsentry.corpus import (LabeledInstance, dedup, em_score, export_jsonl,
                              inject, split)
from solsentry.engine import builtin_registry, scan
from solsentry.nodes import Span, structurally_equal
from solsentry.parser import parse
from solsentry.printer import print_source
from solsentry.prompts import get_template
from solsentry.ruledsl import canonicalize, eval_condition
from solsentry.rulegen import validate_candidate


def _announce(capsys, n, ok):
    with capsys.disabled():
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}")


def _class_detector_map():
    return {d.swe_id: d.detector_id
            for d in builtin_registry().descriptors()}


def test_criterion_1_detector_precision_and_recall(corpus150, capsys):
    ok = False
    try:
        started = time.perf_counter()
        registry = builtin_registry()
        detector_for = _class_detector_map()
        counts = {swe_id: {"tp": 0, "fp": 0, "fn": 0}
                  for swe_id in detector_for}
        for instance in corpus150:
            unit = parse(instance.source, file_id=instance.instance_id)
            findings = scan(unit, registry)
            detector_id = detector_for[instance.swe_id]
            mine = [f for f in findings if f.detector_id == detector_id]
            if instance.label == "vulnerable":
                hit = any(f.span.overlaps(instance.marked_span) for f in mine)
                counts[instance.swe_id]["tp" if hit else "fn"] += 1
            elif mine:
                counts[instance.swe_id]["fp"] += 1
        for swe_id, c in counts.items():
            precision = c["tp"] / (c["tp"] + c["fp"])
            recall = c["tp"] / (c["tp"] + c["fn"])
            assert precision == 1.0 and recall == 1.0, (swe_id, c)
            assert c["tp"] == 15, (swe_id, c)
        assert time.perf_counter() - started < 10.0
        ok = True
    finally:
        _announce(capsys, 1, ok)


def _gate_instances(correct, total):
    instances = []
    for i in range(correct):
        source = f"pragma solidity ^0.8.0;\ncontract V{i} {{ uint256 x; }}"
        offset = source.index("contract")
        instances.append(LabeledInstance(
            instance_id=f"v{i:02d}", source=source, swe_id="SWE-161",
            label="vulnerable", marked_span=Span(offset, len(source) - offset)))
    for i in range(total - correct):
        source = f"pragma solidity ^0.8.0;\ncontract C{i} {{ uint256 y; }}"
        instances.append(LabeledInstance(
            instance_id=f"c{i:02d}", source=source, swe_id="SWE-161",
            label="clean"))
    return instances


def test_criterion_2_validator_gate(capsys):
    ok = False
    try:
        condition = 'node.nodeType == "ContractDefinition"'
        below = validate_candidate(condition, _gate_instances(30, 38))
        assert below.accuracy == 30 / 38
        assert below.decision == "rejected"
        above = validate_candidate(condition, _gate_instances(31, 38))
        assert above.accuracy == 31 / 38
        assert above.decision == "accepted"
        edge = validate_candidate(condition, _gate_instances(4, 5))
        assert edge.accuracy == 0.80
        assert edge.decision == "accepted"
        ok = True
    finally:
        _announce(capsys, 2, ok)


def test_criterion_3_em_arithmetic(capsys):
    ok = False
    try:
        def pairs(matching, total):
            out = [("node.a == 1", "node.a == 1")] * matching
            return out + [("node.a == 1", "node.b == 2")] * (total - matching)
        assert em_score(pairs(35, 38)) == 92.1
        assert em_score(pairs(34, 38)) == 89.5
        assert em_score(pairs(38, 38)) == 100.0
        ok = True
    finally:
        _announce(capsys, 3, ok)


def _run_generation(workdir, corpus150, capsys):
    script = workdir / "script.json"
    script.write_text(json.dumps([
        "node.bad ==", "also broken &&", CANONICAL_CONDITIONS["SWE-161"]]),
        encoding="utf-8")
    rules_dir = workdir / "rules"
    code = cli.main(["gen", "SWE-161", "--backend", f"script:{script}",
                     "--rules-dir", str(rules_dir)])
    gen_out = capsys.readouterr().out
    assert code == 0
    assert "attempt-1: rejected" in gen_out
    assert "attempt-2: rejected" in gen_out
    assert "attempt-3: accepted" in gen_out
    stored = sorted(rules_dir.glob("gen-swe-161-*.json"))
    assert len(stored) == 1
    payload = json.loads(stored[0].read_text(encoding="utf-8"))
    assert payload["origin"] == "generated"

    fixtures = workdir / "fixture-set"
    fixtures.mkdir()
    for instance in corpus150:
        if instance.swe_id == "SWE-161" and instance.label == "vulnerable":
            (fixtures / f"{instance.instance_id}.sol").write_text(
                instance.source, encoding="utf-8")
    rescan = cli.main(["scan", "--format", "json",
                       "--rules-dir", str(rules_dir), str(fixtures)])
    scan_out = capsys.readouterr().out
    assert rescan == 1
    findings = json.loads(scan_out)["findings"]
    generated = [f for f in findings if f["origin"] == "generated"]
    assert len(generated) == 15
    assert all(f["swe_id"] == "SWE-161" for f in generated)
    assert all(f["detector_id"] == payload["rule_id"] for f in generated)
    return payload["rule_id"], stored[0].read_bytes(), findings


def test_criterion_4_end_to_end_loop(tmp_path, monkeypatch, capsys,
                                     corpus150):
    ok = False
    try:
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
        for name in ("SENTRY_CACHE_DIR", "SENTRY_ETHERSCAN_KEY",
                     "SENTRY_GITHUB_TOKEN", "SENTRY_LLM_ENDPOINT",
                     "SENTRY_LLM_KEY"):
            monkeypatch.delenv(name, raising=False)

        started = time.perf_counter()
        one = tmp_path / "one"
        one.mkdir()
        rule_id, rule_bytes, findings = _run_generation(one, corpus150,
                                                        capsys)
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0

        two = tmp_path / "two"
        two.mkdir()
        again_id, again_bytes, again_findings = _run_generation(
            two, corpus150, capsys)
        assert (rule_id, rule_bytes) == (again_id, again_bytes)
        assert [dict(f, file_id="") for f in findings] == \
            [dict(f, file_id="") for f in again_findings]
        ok = True
    finally:
        _announce(capsys, 4, ok)


def test_criterion_5_parser_round_trips(corpus150, capsys):
    ok = False
    try:
        started = time.perf_counter()
        for instance in corpus150:
            unit = parse(instance.source, file_id=instance.instance_id)
            reparsed = parse(print_source(unit), file_id=instance.instance_id)
            assert structurally_equal(unit.root, reparsed.root), \
                instance.instance_id
            payload = astjson.to_json(unit)
            rebuilt = astjson.unit_from_json(payload,
                                             raw_text=instance.source,
                                             file_id=instance.instance_id)
            assert astjson.to_json(rebuilt) == payload, instance.instance_id
            assert structurally_equal(unit.root, rebuilt.root,
                                      compare_ids=True)
        assert time.perf_counter() - started < 10.0
        ok = True
    finally:
        _announce(capsys, 5, ok)


def test_criterion_6_dsl_oracle_equivalence(capsys):
    ok = False
    try:
        started = time.perf_counter()
        rng = random.Random(20260822)
        nodes = [random_node(rng) for _ in range(40)]
        plains = [node_to_plain(node) for node in nodes]
        exprs = [random_expr(rng) for _ in range(30)]
        pairs = disagreements = canonical_breaks = 0
        for expr in exprs:
            canonical = canonicalize(expr)
            for node, plain in zip(nodes, plains):
                expected = ref_eval(expr, plain)
                if eval_condition(expr, node) is not expected:
                    disagreements += 1
                if eval_condition(canonical, node) is not expected:
                    canonical_breaks += 1
                pairs += 1
        assert pairs >= 1000
        assert disagreements == 0
        assert canonical_breaks == 0
        assert time.perf_counter() - started < 30.0
        ok = True
    finally:
        _announce(capsys, 6, ok)


def test_criterion_7_dataset_pipeline(corpus150, tmp_path, capsys):
    ok = False
    try:
        once = dedup(corpus150)
        assert len(once) == 150
        assert dedup(once) == once

        result = split(corpus150, 112, seed=7)
        train_ids = {i.instance_id for i in result.train}
        test_ids = {i.instance_id for i in result.test}
        assert len(train_ids) == 112 and len(test_ids) == 38
        assert not train_ids & test_ids

        out = tmp_path / "train.jsonl"
        count = export_jsonl(result.train, get_template("P_rcbi"), out)
        lines = out.read_text(encoding="utf-8").splitlines()
        assert count == len(lines) == 112
        for line in lines:
            record = json.loads(line)
            roles = [m["role"] for m in record["messages"]]
            assert roles == ["system", "user", "assistant"]
            assert all(m["content"] for m in record["messages"])

        registry = builtin_registry()
        injected = [i for i in corpus150 if i.provenance == "injected"]
        fresh = [inject("data.length--;", seed) for seed in (901, 902)]
        assert len(injected) == 50
        for instance in injected + fresh:
            unit = parse(instance.source, file_id=instance.instance_id)
            marked = [f for f in scan(unit, registry)
                      if f.swe_id == instance.swe_id
                      and f.span.overlaps(instance.marked_span)]
            assert len(marked) == 1, instance.instance_id
        ok = True
    finally:
        _announce(capsys, 7, ok)


def test_criterion_8_suite_runs_with_networking_disabled(capsys):
    ok = False
    try:
        with pytest.raises(Exception) as excinfo:
            socket.create_connection(("127.0.0.1", 9), timeout=0.1)
        assert "network" in str(excinfo.value).lower()
        with pytest.raises(Exception):
            socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        ok = True
    finally:
        _announce(capsys, 8, ok)
