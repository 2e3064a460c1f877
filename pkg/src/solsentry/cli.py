"""Command-line entry point.

Subcommands cover scanning, rule lifecycle, condition generation, corpus
tooling, EM evaluation, and source fetching. Exit codes are stable for CI:
0 success or clean, 1 domain-negative (findings, rejection, exhaustion),
2 operational or usage error. With --format json every output path,
including errors, stays machine-parseable.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import bundled, corpus as corpus_mod, ingest
from .backends import DirectoryBackend, LiveBackend, ScriptBackend
from .cfg import build_cfg, to_dot
from .config import load_config
from .engine import Registry, ScanOptions, builtin_registry, scan
from .errors import (BackendUnavailableError, NoBodyError, SentryError)
from .parser import parse
from .prompts import get_template
from .rulegen import (GenerationConfig, run_loop, validate_candidate)
from .ruledsl import parse_condition
from .rulestore import RuleStore

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _emit_error(message: str, fmt: str):
    if fmt == "json":
        print(json.dumps({"error": message}), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)


def _print_json(payload):
    print(json.dumps(payload, indent=2))


# -- argument surface ------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solsentry",
        description="Static analysis for Solidity with generated rules.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a TOML config file")
    common.add_argument("--format", choices=("text", "json"), default=None,
                        help="output format (default text)")
    common.add_argument("--rules-dir", dest="rules_dir",
                        help="directory holding generated rule files")

    sub = parser.add_subparsers(dest="command", required=True)

    p_scan = sub.add_parser("scan", parents=[common],
                            help="scan targets and print findings")
    p_scan.add_argument("targets", nargs="+")
    p_scan.add_argument("--jobs", type=int, default=None)
    p_scan.add_argument("--emit-cfg", action="store_true",
                        help="write per-function CFGs as DOT on stderr")
    p_scan.add_argument("--enable", action="append", default=[],
                        metavar="ID")
    p_scan.add_argument("--disable", action="append", default=[],
                        metavar="ID")
    p_scan.add_argument("--no-pragma-gate", action="store_true")
    p_scan.add_argument("--no-mint-check", action="store_true")
    p_scan.add_argument("--offline", action="store_true")
    p_scan.add_argument("--network", default=None)

    p_gen = sub.add_parser("gen", parents=[common],
                           help="generate and validate a rule for one class")
    p_gen.add_argument("swe_id", metavar="SWE_ID")
    p_gen.add_argument("--corpus", help="labeled corpus directory "
                                        "(default: bundled instances)")
    p_gen.add_argument("--template", default=None)
    p_gen.add_argument("--backend", default=None,
                       help="fixture:DIR | script:FILE | live")
    p_gen.add_argument("--max-attempts", dest="max_attempts", type=int,
                       default=None)
    p_gen.add_argument("--threshold", type=float, default=None)
    p_gen.add_argument("--seed", type=int, default=None)

    p_rules = sub.add_parser("rules", parents=[common],
                             help="list, validate, add, or disable rules")
    rules_sub = p_rules.add_subparsers(dest="rules_command", required=True)
    rules_sub.add_parser("list", parents=[common])
    p_rv = rules_sub.add_parser("validate", parents=[common])
    p_rv.add_argument("file")
    p_rv.add_argument("--corpus")
    p_rv.add_argument("--threshold", type=float, default=None)
    p_ra = rules_sub.add_parser("add", parents=[common])
    p_ra.add_argument("file")
    p_rd = rules_sub.add_parser("disable", parents=[common])
    p_rd.add_argument("rule_id")

    p_data = sub.add_parser("dataset", parents=[common],
                            help="dedup, split, inject, export-jsonl")
    data_sub = p_data.add_subparsers(dest="dataset_command", required=True)
    p_dd = data_sub.add_parser("dedup", parents=[common])
    p_dd.add_argument("--corpus")
    p_ds = data_sub.add_parser("split", parents=[common])
    p_ds.add_argument("--corpus")
    p_ds.add_argument("--train", type=int, default=112)
    p_ds.add_argument("--seed", type=int, default=7)
    p_ds.add_argument("--out", help="write the id manifest here")
    p_di = data_sub.add_parser("inject", parents=[common])
    p_di.add_argument("--snippet", help="inline snippet text")
    p_di.add_argument("--snippet-file", dest="snippet_file")
    p_di.add_argument("--seed", type=int, required=True)
    p_di.add_argument("--swe", dest="swe_id", default=None)
    p_di.add_argument("--out", help="write the composed contract here")
    p_de = data_sub.add_parser("export-jsonl", parents=[common])
    p_de.add_argument("--corpus")
    p_de.add_argument("--out", required=True)
    p_de.add_argument("--template", default=None)
    p_de.add_argument("--train", type=int, default=112)
    p_de.add_argument("--seed", type=int, default=7)

    p_eval = sub.add_parser("eval", parents=[common],
                            help="exact-match score over (generated, expected) pairs")
    p_eval.add_argument("pairs_file")
    p_eval.add_argument("--mode", choices=("syntactic", "logical"),
                        default="syntactic")

    p_fetch = sub.add_parser("fetch", parents=[common],
                             help="retrieve sources from a path, URL, or address")
    p_fetch.add_argument("target")
    p_fetch.add_argument("--offline", action="store_true")
    p_fetch.add_argument("--network", default=None)
    p_fetch.add_argument("--cache-dir", dest="cache_dir")
    p_fetch.add_argument("--fixtures", help="serve responses from this directory")

    p_cfg = sub.add_parser("config", parents=[common],
                           help="inspect the effective configuration")
    cfg_sub = p_cfg.add_subparsers(dest="config_command", required=True)
    cfg_sub.add_parser("show", parents=[common])

    return parser


def _load(args) -> tuple:
    overrides = {
        "format": getattr(args, "format", None),
        "rules_dir": getattr(args, "rules_dir", None),
        "jobs": getattr(args, "jobs", None),
        "network": getattr(args, "network", None),
        "cache_dir": getattr(args, "cache_dir", None),
        "template": getattr(args, "template", None),
        "backend": getattr(args, "backend", None),
        "threshold": getattr(args, "threshold", None),
        "max_attempts": getattr(args, "max_attempts", None),
        "corpus_dir": getattr(args, "corpus", None),
    }
    if getattr(args, "offline", False):
        overrides["offline"] = True
    if getattr(args, "no_pragma_gate", False):
        overrides["pragma_gate"] = False
    if getattr(args, "no_mint_check", False):
        overrides["mint_check"] = False
    config = load_config(config_path=getattr(args, "config", None),
                         overrides=overrides)
    return config, config.format


# -- shared helpers --------------------------------------------------------

def _registry_for(config) -> Registry:
    registry = builtin_registry()
    store = RuleStore(config.rules_dir)
    store.install_into(registry)
    for rule_id in store.disabled_ids():
        registry.set_enabled(rule_id, False)
    return registry


def _corpus_instances(config, swe_id: str | None = None):
    if config.corpus_dir:
        instances = corpus_mod.load_corpus(config.corpus_dir)
    else:
        instances = bundled.bundled_corpus()
    if swe_id is not None:
        instances = [i for i in instances if i.swe_id == swe_id]
    return instances


def _make_backend(config):
    spec = config.backend
    if spec and spec.startswith("fixture:"):
        return DirectoryBackend(spec[len("fixture:"):])
    if spec and spec.startswith("script:"):
        return ScriptBackend.from_file(spec[len("script:"):])
    if spec in (None, "live"):
        if not config.llm_endpoint:
            raise BackendUnavailableError(
                "no backend: pass --backend fixture:DIR or script:FILE, "
                "or set SENTRY_LLM_ENDPOINT for live use")
        return LiveBackend(config.llm_endpoint, config.llm_model,
                           api_key=config.llm_key)
    raise BackendUnavailableError(f"unrecognized backend spec: {spec}")


def _read_rule_file(path: str) -> dict:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(payload, dict) or "condition" not in payload:
        raise SentryError(f"{path}: not a rule file (missing 'condition')")
    return payload


# -- scan ------------------------------------------------------------------

def _scan_one(path: str, text: str, registry, options, emit_cfg: bool):
    unit = parse(text, file_id=path)
    if emit_cfg:
        for contract in unit.contracts:
            for member in contract.child("nodes") or []:
                if member.node_type != "FunctionDefinition":
                    continue
                try:
                    graph = build_cfg(member)
                except NoBodyError:
                    continue
                name = member.attr("name") or member.attr("kind")
                print(to_dot(graph, title=f"{path}:{name}"),
                      file=sys.stderr)
    return scan(unit, registry, options)


def cmd_scan(args) -> int:
    config, fmt = _load(args)
    try:
        registry = _registry_for(config)
        for rule_id in args.enable:
            if not registry.set_enabled(rule_id, True):
                raise SentryError(f"unknown detector id: {rule_id}")
        for rule_id in args.disable:
            if not registry.set_enabled(rule_id, False):
                raise SentryError(f"unknown detector id: {rule_id}")
        options = ScanOptions(pragma_gate=config.pragma_gate,
                              mint_check=config.mint_check)
        fetch_options = ingest.FetchOptions(offline=config.offline,
                                            network=config.network,
                                            cache_dir=config.cache_dir)
        sources: list[tuple[str, str]] = []
        for target in args.targets:
            tree = ingest.fetch(target, fetch_options)
            for path in sorted(tree.files):
                sources.append((path, tree.files[path]))
            for unresolved in sorted(tree.unresolved):
                print(f"warning: unresolved import: {unresolved}",
                      file=sys.stderr)

        jobs = max(1, int(config.jobs))
        if jobs == 1 or len(sources) <= 1:
            results = [_scan_one(p, t, registry, options, args.emit_cfg)
                       for p, t in sources]
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(
                    lambda item: _scan_one(item[0], item[1], registry,
                                           options, args.emit_cfg),
                    sources))
        findings = sorted((f for batch in results for f in batch),
                          key=lambda f: f.sort_key())
    except SentryError as error:
        _emit_error(str(error), fmt)
        return EXIT_ERROR

    if fmt == "json":
        _print_json({"findings": [f.to_dict() for f in findings],
                     "count": len(findings)})
    else:
        for finding in findings:
            print(finding.render())
        print(f"{len(findings)} finding(s)")
    return EXIT_NEGATIVE if findings else EXIT_OK


# -- gen -------------------------------------------------------------------

def cmd_gen(args, parser: argparse.ArgumentParser) -> int:
    config, fmt = _load(args)
    threshold = config.threshold
    if not 0 < threshold <= 1:
        parser.error(f"--threshold must be in (0, 1], got {threshold}")
    try:
        instances = _corpus_instances(config, args.swe_id)
        if not instances:
            raise SentryError(f"no labeled instances for {args.swe_id}")
        generation = GenerationConfig(
            template_id=config.template,
            backend=_make_backend(config),
            max_attempts=int(config.max_attempts),
            acceptance_threshold=threshold,
            seed=args.seed)
        registry = _registry_for(config)
        store = RuleStore(config.rules_dir)
        result = run_loop(generation, instances, registry, store)
    except SentryError as error:
        _emit_error(str(error), fmt)
        return EXIT_ERROR

    reports = [r.to_dict() for r in result.reports]
    if fmt == "json":
        payload = {"reports": reports,
                   "integrated": (result.integrated.to_dict()
                                  if result.integrated else None)}
        _print_json(payload)
    else:
        for report in reports:
            print(f"{report['candidate_id']}: {report['decision']} "
                  f"(accuracy {report['accuracy']})")
            if report["parse_error"]:
                print(f"  parse error: {report['parse_error']}")
        if result.integrated:
            print(f"integrated {result.integrated.detector_id} "
                  f"(origin {result.integrated.origin})")
        else:
            print("no candidate accepted")
    return EXIT_OK if result.integrated else EXIT_NEGATIVE


# -- rules -----------------------------------------------------------------

def cmd_rules(args) -> int:
    config, fmt = _load(args)
    try:
        if args.rules_command == "list":
            registry = _registry_for(config)
            descriptors = [d.to_dict() for d in registry.descriptors()]
            if fmt == "json":
                _print_json(descriptors)
            else:
                for d in descriptors:
                    state = "enabled" if d["enabled"] else "disabled"
                    print(f"{d['detector_id']}  {d['swe_id']}  "
                          f"{d['origin']}  {state}")
            return EXIT_OK

        if args.rules_command == "validate":
            payload = _read_rule_file(args.file)
            swe_id = payload.get("swe_id", "")
            instances = _corpus_instances(config, swe_id or None)
            if not instances:
                raise SentryError(f"no labeled instances for {swe_id!r}")
            report = validate_candidate(payload["condition"], instances,
                                        threshold=config.threshold,
                                        candidate_id=payload.get(
                                            "rule_id", "rule-under-review"))
            if fmt == "json":
                _print_json(report.to_dict())
            else:
                print(f"{report.candidate_id}: {report.decision} "
                      f"(accuracy {round(report.accuracy, 4)})")
            return EXIT_OK if report.decision == "accepted" else EXIT_NEGATIVE

        if args.rules_command == "add":
            payload = _read_rule_file(args.file)
            from .ruledsl import GeneratedRule
            rule = GeneratedRule(
                rule_id=payload.get("rule_id") or "added-rule",
                swe_id=payload.get("swe_id", ""),
                condition=parse_condition(payload["condition"]),
                condition_text=payload["condition"],
                origin_label=payload.get("origin", "generated"),
                acceptance_accuracy=float(
                    payload.get("acceptance_accuracy", 0.0)),
                created_from=payload.get("created_from", ""))
            store = RuleStore(config.rules_dir)
            written = store.save(rule)
            if fmt == "json":
                _print_json({"added": rule.rule_id, "path": str(written)})
            else:
                print(f"added {rule.rule_id} -> {written}")
            return EXIT_OK

        if args.rules_command == "disable":
            store = RuleStore(config.rules_dir)
            store.set_disabled(args.rule_id, True)
            if fmt == "json":
                _print_json({"disabled": args.rule_id})
            else:
                print(f"disabled {args.rule_id}")
            return EXIT_OK
    except SentryError as error:
        _emit_error(str(error), fmt)
        return EXIT_ERROR
    return EXIT_ERROR


# -- dataset ---------------------------------------------------------------

def cmd_dataset(args) -> int:
    config, fmt = _load(args)
    try:
        if args.dataset_command == "dedup":
            instances = _corpus_instances(config)
            kept = corpus_mod.dedup(instances)
            payload = {"before": len(instances), "after": len(kept)}
            _print_json(payload) if fmt == "json" else print(
                f"{payload['before']} -> {payload['after']} instances")
            return EXIT_OK

        if args.dataset_command == "split":
            instances = _corpus_instances(config)
            result = corpus_mod.split(instances, args.train, args.seed)
            manifest = {
                "seed": result.split_seed,
                "counts": {"total": result.counts[0],
                           "train": result.counts[1],
                           "test": result.counts[2]},
                "train_ids": [i.instance_id for i in result.train],
                "test_ids": [i.instance_id for i in result.test],
            }
            if args.out:
                Path(args.out).write_text(json.dumps(manifest, indent=2) + "\n",
                                          encoding="utf-8")
            if fmt == "json":
                _print_json(manifest)
            else:
                print(f"split {manifest['counts']['total']} -> "
                      f"{manifest['counts']['train']} train / "
                      f"{manifest['counts']['test']} test (seed {args.seed})")
            return EXIT_OK

        if args.dataset_command == "inject":
            if bool(args.snippet) == bool(args.snippet_file):
                raise SentryError(
                    "pass exactly one of --snippet or --snippet-file")
            snippet = args.snippet or Path(args.snippet_file).read_text(
                encoding="utf-8")
            instance = corpus_mod.inject(snippet, args.seed,
                                         swe_id=args.swe_id)
            if args.out:
                Path(args.out).write_text(instance.source, encoding="utf-8")
            summary = {
                "instance_id": instance.instance_id,
                "swe_id": instance.swe_id,
                "marked_span": {"offset": instance.marked_span.offset,
                                "length": instance.marked_span.length},
                "provenance": instance.provenance,
            }
            if fmt == "json":
                _print_json(summary)
            else:
                print(f"{instance.instance_id}: {instance.swe_id} marked at "
                      f"{instance.marked_span.offset}"
                      f"+{instance.marked_span.length}")
                if not args.out:
                    print(instance.source)
            return EXIT_OK

        if args.dataset_command == "export-jsonl":
            instances = _corpus_instances(config)
            result = corpus_mod.split(instances, args.train, args.seed)
            template = get_template(config.template)
            count = corpus_mod.export_jsonl(result.train, template, args.out)
            payload = {"lines": count, "path": args.out}
            _print_json(payload) if fmt == "json" else print(
                f"wrote {count} lines to {args.out}")
            return EXIT_OK
    except SentryError as error:
        _emit_error(str(error), fmt)
        return EXIT_ERROR
    return EXIT_ERROR


# -- eval, fetch, config ---------------------------------------------------

def _load_pairs(path: str) -> list[tuple[str, str]]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    pairs = []
    for item in payload:
        if isinstance(item, dict):
            pairs.append((item["generated"], item["expected"]))
        else:
            pairs.append((item[0], item[1]))
    return pairs


def cmd_eval(args) -> int:
    config, fmt = _load(args)
    try:
        pairs = _load_pairs(args.pairs_file)
        report = corpus_mod.em_report(pairs, args.mode)
    except (SentryError, OSError, json.JSONDecodeError, KeyError,
            IndexError) as error:
        _emit_error(str(error), fmt)
        return EXIT_ERROR
    if fmt == "json":
        _print_json(report)
    else:
        print(f"mode:    {report['mode']}")
        print(f"total:   {report['total']}")
        print(f"matches: {report['matches']}")
        print(f"score:   {report['score']}")
    return EXIT_OK


def cmd_fetch(args) -> int:
    config, fmt = _load(args)
    try:
        client = ingest.FixtureClient(args.fixtures) if args.fixtures else None
        options = ingest.FetchOptions(
            offline=config.offline, network=config.network,
            cache_dir=config.cache_dir,
            etherscan_key=config.etherscan_key,
            github_token=config.github_token, client=client)
        tree = ingest.fetch(args.target, options)
    except SentryError as error:
        _emit_error(str(error), fmt)
        return EXIT_ERROR
    if fmt == "json":
        _print_json(tree.to_dict())
    else:
        print(f"origin: {tree.origin['kind']}")
        print(f"entry:  {tree.entry_file}")
        for path in sorted(tree.files):
            print(f"  {path} ({len(tree.files[path])} bytes)")
        for unresolved in sorted(tree.unresolved):
            print(f"unresolved import: {unresolved}")
        for warning in tree.cycle_warnings:
            print(f"warning: {warning}")
    return EXIT_OK


def cmd_config(args) -> int:
    config, fmt = _load(args)
    if fmt == "json":
        _print_json({"config": config.to_dict(),
                     "sources": config.sources,
                     "warnings": config.warnings})
    else:
        print(config.show())
        for warning in config.warnings:
            print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "scan":
        return cmd_scan(args)
    if args.command == "gen":
        return cmd_gen(args, parser)
    if args.command == "rules":
        return cmd_rules(args)
    if args.command == "dataset":
        return cmd_dataset(args)
    if args.command == "eval":
        return cmd_eval(args)
    if args.command == "fetch":
        return cmd_fetch(args)
    if args.command == "config":
        return cmd_config(args)
    parser.error(f"unknown command: {args.command}")
    return EXIT_ERROR


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
