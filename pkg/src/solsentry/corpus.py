"""Labeled dataset lifecycle: dedup, injection, split, JSONL export, EM.

Instances carry a label and, for vulnerable ones, a marked span around the
offending instruction. Injection forges a contract and function around a
snippet with seeded name and filler choices, so the same seed always yields
byte-identical output.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from pathlib import Path

from .engine import builtin_registry, scan
from .errors import (EmptyEvaluationError, InjectionUnparseableError,
                     InsufficientInstancesError, MalformedAstError,
                     MissingExpectedConditionError, SentryError)
from .nodes import Span
from .parser import parse
from .prompts import PromptTemplate, build_prompt
from .ruledsl import canonicalize, parse_condition
from .errors import RuleSyntaxError

VULNERABLE = "vulnerable"
CLEAN = "clean"
PROVENANCES = ("github", "etherscan", "injected", "handwritten")


@dataclass(frozen=True)
class LabeledInstance:
    instance_id: str
    source: str
    swe_id: str
    label: str                          # vulnerable | clean
    marked_span: Span | None = None
    expected_condition: str | None = None
    provenance: str = "handwritten"

    def snippet_text(self) -> str:
        """The marked instruction when present, the whole source otherwise."""
        if self.marked_span is not None:
            span = self.marked_span
            return self.source[span.offset:span.offset + span.length]
        return self.source


@dataclass
class DatasetSplit:
    train: list[LabeledInstance]
    test: list[LabeledInstance]
    split_seed: int

    @property
    def counts(self) -> tuple[int, int, int]:
        return (len(self.train) + len(self.test), len(self.train), len(self.test))


# -- normalization and dedup -----------------------------------------------

def _strip_comments(text: str) -> str:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            out.append(text[i:min(j + 1, n)])
            i = j + 1
        elif ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "/" and i + 1 < n and text[i + 1] == "*":
            end = text.find("*/", i + 2)
            i = n if end == -1 else end + 2
            out.append(" ")
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def normalize_source(text: str) -> str:
    """Key used for duplicate detection: comments out, whitespace collapsed."""
    return " ".join(_strip_comments(text).split())


def dedup(instances: list[LabeledInstance]) -> list[LabeledInstance]:
    seen = set()
    kept = []
    for instance in instances:
        key = normalize_source(instance.source)
        if key in seen:
            continue
        seen.add(key)
        kept.append(instance)
    return kept


# -- injection -------------------------------------------------------------

_SUPPORT_DECLS = (
    "uint256[] data;",
    "mapping(address => mapping(address => uint256)) allowed;",
    "address payable target;",
    "uint256 counter;",
    "address last;",
)
_FILLERS = ("counter += 1;", "last = msg.sender;", "counter = counter + 1;")
_CONTRACT_NAMES = ("Vault", "Treasury", "Escrow", "Ledger", "Broker",
                   "Custody", "Relay", "Depot", "Clearing", "Router")
_FUNCTION_POOLS = {
    "SWE-161": ("prune", "trimQueue", "shrink", "resetBuffer"),
    "SWE-134": ("forwardPayment", "relayFunds", "pushPayment", "payVendor"),
    "SWE-114": ("approve",),
    "SWE-138": ("reward", "issueBonus", "grantTokens", "airdrop"),
    "SWE-140": ("payout", "withdrawTo", "releaseFunds", "settle"),
}
_DEFAULT_POOL = ("process", "handleRequest", "execute", "runTask")


def inject(snippet: str, template_rng_seed: int, swe_id: str | None = None,
           instance_id: str | None = None) -> LabeledInstance:
    """Wrap a vulnerable statement sequence in a forged contract.

    Contract name, function name, and surrounding benign statements are drawn
    from the seed. When swe_id is omitted it is recovered by scanning the
    composed source and taking the finding inside the marked span.
    """
    rng = random.Random(template_rng_seed)
    name = rng.choice(_CONTRACT_NAMES)
    if rng.random() < 0.5:
        name += str(rng.randint(2, 99))
    function_name = rng.choice(_FUNCTION_POOLS.get(swe_id, _DEFAULT_POOL))
    before = rng.sample(_FILLERS, rng.randint(0, 2))
    rest = [f for f in _FILLERS if f not in before]
    after = rng.sample(rest, rng.randint(0, 1)) if rest else []

    # the length-write pragma gate only reports pre-0.6 code
    pragma = "^0.5.0" if swe_id in (None, "SWE-161") else "^0.8.0"
    indent = " " * 8
    head = [f"pragma solidity {pragma};", "", f"contract {name} {{"]
    head += ["    " + decl for decl in _SUPPORT_DECLS]
    head += ["", f"    function {function_name}"
             "(address spender, uint256 value, uint256 amount) public {"]
    head += [indent + filler for filler in before]
    prefix = "\n".join(head) + "\n"

    block = "\n".join(indent + line if line.strip() else line
                      for line in snippet.strip("\n").splitlines())
    marked = Span(len(prefix), len(block))
    tail_lines = [indent + filler for filler in after] + ["    }", "}", ""]
    source = prefix + block + "\n" + "\n".join(tail_lines)

    identifier = instance_id or f"injected-{template_rng_seed}"
    try:
        unit = parse(source, file_id=identifier)
    except SentryError as error:
        raise InjectionUnparseableError(
            f"composed source does not parse: {error}")

    if swe_id is None:
        findings = [f for f in scan(unit, builtin_registry())
                    if f.span.overlaps(marked)]
        swe_id = findings[0].swe_id if findings else ""
    return LabeledInstance(instance_id=identifier, source=source,
                           swe_id=swe_id, label=VULNERABLE,
                           marked_span=marked, provenance="injected")


# -- split and export ------------------------------------------------------

def split(instances: list[LabeledInstance], train_n: int,
          seed: int) -> DatasetSplit:
    if train_n > len(instances):
        raise InsufficientInstancesError(
            f"asked for {train_n} training instances, have {len(instances)}")
    shuffled = list(instances)
    random.Random(seed).shuffle(shuffled)
    return DatasetSplit(train=shuffled[:train_n], test=shuffled[train_n:],
                        split_seed=seed)


def export_jsonl(train: list[LabeledInstance], template: PromptTemplate,
                 path: str | Path) -> int:
    lines = []
    for instance in train:
        if instance.expected_condition is None:
            raise MissingExpectedConditionError(instance.instance_id)
        messages = build_prompt(template, instance.snippet_text())
        messages.append({"role": "assistant",
                         "content": instance.expected_condition})
        lines.append(json.dumps({"messages": messages}, ensure_ascii=False))
    Path(path).write_text("".join(line + "\n" for line in lines),
                          encoding="utf-8")
    return len(lines)


# -- exact match -----------------------------------------------------------

def _strip_fences(text: str) -> str:
    text = text.strip()
    if "```" in text:
        parts = text.split("```")
        if len(parts) >= 3:
            block = parts[1]
            newline = block.find("\n")
            if newline != -1 and block[:newline].strip().isalnum():
                block = block[newline + 1:]
            return block
    return text


def _syntactic_key(text: str) -> str:
    return " ".join(_strip_fences(text).split())


def exact_match(generated: str, expected: str,
                mode: str = "syntactic") -> bool:
    if mode == "syntactic":
        return _syntactic_key(generated) == _syntactic_key(expected)
    if mode != "logical":
        raise ValueError(f"unknown exact-match mode: {mode}")
    try:
        left = canonicalize(parse_condition(_strip_fences(generated)))
        right = canonicalize(parse_condition(_strip_fences(expected)))
    except RuleSyntaxError:
        return _syntactic_key(generated) == _syntactic_key(expected)
    return left == right


def em_score(pairs: list[tuple[str, str]], mode: str = "syntactic") -> float:
    if not pairs:
        raise EmptyEvaluationError("no pairs to evaluate")
    matches = sum(exact_match(g, e, mode) for g, e in pairs)
    return round(100.0 * matches / len(pairs), 1)


def em_report(pairs: list[tuple[str, str]], mode: str = "syntactic") -> dict:
    score = em_score(pairs, mode)
    matches = sum(exact_match(g, e, mode) for g, e in pairs)
    return {"mode": mode, "total": len(pairs), "matches": matches,
            "score": score}


# -- on-disk layout --------------------------------------------------------
# one directory per SWE class; each instance is {id}.sol plus {id}.json

def save_corpus(instances: list[LabeledInstance], root: str | Path):
    root = Path(root)
    for instance in instances:
        class_dir = root / instance.swe_id.lower().replace("-", "")
        class_dir.mkdir(parents=True, exist_ok=True)
        (class_dir / f"{instance.instance_id}.sol").write_text(
            instance.source, encoding="utf-8")
        sidecar = {
            "instance_id": instance.instance_id,
            "swe_id": instance.swe_id,
            "label": instance.label,
            "marked_span": (None if instance.marked_span is None else
                            {"offset": instance.marked_span.offset,
                             "length": instance.marked_span.length}),
            "expected_condition": instance.expected_condition,
            "provenance": instance.provenance,
        }
        (class_dir / f"{instance.instance_id}.json").write_text(
            json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")


def load_corpus(root: str | Path) -> list[LabeledInstance]:
    root = Path(root)
    instances = []
    for sidecar_path in sorted(root.glob("*/*.json")):
        payload = json.loads(sidecar_path.read_text(encoding="utf-8"))
        source_path = sidecar_path.with_suffix(".sol")
        if not source_path.exists():
            raise MalformedAstError(str(sidecar_path), "missing .sol source")
        span = payload.get("marked_span")
        instances.append(LabeledInstance(
            instance_id=payload["instance_id"],
            source=source_path.read_text(encoding="utf-8"),
            swe_id=payload["swe_id"],
            label=payload["label"],
            marked_span=None if span is None else Span(span["offset"],
                                                       span["length"]),
            expected_condition=payload.get("expected_condition"),
            provenance=payload.get("provenance", "handwritten")))
    return instances


def with_expected_condition(instance: LabeledInstance,
                            condition: str) -> LabeledInstance:
    return replace(instance, expected_condition=condition)
