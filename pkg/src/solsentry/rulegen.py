"""Generate → validate → integrate loop for rule conditions.

A backend proposes a condition for a vulnerability class; the validator
installs it in a scratch registry and replays the labeled instances; only
candidates at or above the accuracy threshold get persisted and registered,
tagged "generated". Rejection feeds the next attempt, up to a bound.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .corpus import LabeledInstance
from .engine import DetectorDescriptor, Registry, scan
from .errors import (EmptyResponseError, InsufficientInstancesError,
                     RejectedCandidateError, RuleSyntaxError, SentryError)
from .parser import parse
from .prompts import PASSTHROUGH_HYPERPARAMETERS, build_prompt, get_template
from .ruledsl import GeneratedRule, install_rule, parse_condition
from .rulestore import RuleStore

DEFAULT_THRESHOLD = 0.80
DEFAULT_MAX_ATTEMPTS = 5


@dataclass
class GenerationConfig:
    template_id: str = "P_rcbi"
    backend: object = None
    max_attempts: int = DEFAULT_MAX_ATTEMPTS
    acceptance_threshold: float = DEFAULT_THRESHOLD
    seed: int | None = None
    passthrough_hyperparameters: dict = field(
        default_factory=lambda: dict(PASSTHROUGH_HYPERPARAMETERS))

    def __post_init__(self):
        if not 0 < self.acceptance_threshold <= 1:
            raise ValueError(
                f"acceptance threshold must be in (0, 1], "
                f"got {self.acceptance_threshold}")
        if self.max_attempts < 1:
            raise ValueError(f"max_attempts must be >= 1, got {self.max_attempts}")


@dataclass
class InstanceVerdict:
    instance_id: str
    expected_label: str
    fired: bool
    correct: bool


@dataclass
class ValidationReport:
    candidate_id: str
    verdicts: list[InstanceVerdict]
    accuracy: float
    decision: str                 # accepted | rejected
    parse_error: str | None = None

    def to_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "accuracy": round(self.accuracy, 4),
            "decision": self.decision,
            "parse_error": self.parse_error,
            "verdicts": [
                {"instance_id": v.instance_id, "expected": v.expected_label,
                 "fired": v.fired, "correct": v.correct}
                for v in self.verdicts],
        }


@dataclass
class LoopResult:
    integrated: DetectorDescriptor | None
    reports: list[ValidationReport]

    @property
    def attempts(self) -> int:
        return len(self.reports)


# -- response trimming -----------------------------------------------------

def _looks_like_condition(line: str) -> bool:
    if "node" in line:
        return True
    return any(token in line for token in ("==", "&&", "||", "exists(", "!="))


def _outer_parens_wrap(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(text) - 1:
                return False
    return depth == 0


def trim_response(text: str) -> str:
    """Reduce raw model output to the bare condition.

    Strips code fences, drops prose lines, removes a trailing semicolon and
    an `if (...)` wrapper. Model output drifts even when told not to.
    """
    text = text.strip()
    if "```" in text:
        parts = text.split("```")
        if len(parts) >= 3:
            block = parts[1]
            newline = block.find("\n")
            if newline != -1 and block[:newline].strip().isalnum():
                block = block[newline + 1:]
            text = block.strip()
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    kept = [line for line in lines if _looks_like_condition(line)] or lines
    text = " ".join(kept).strip().rstrip(";").strip()
    if text.startswith("if"):
        rest = text[2:].lstrip()
        if rest.startswith("("):
            text = rest
    while (text.startswith("(") and text.endswith(")")
            and len(text) > 2 and _outer_parens_wrap(text)):
        text = text[1:-1].strip()
    return text


# -- the three loop stages -------------------------------------------------

def generate_candidate(config: GenerationConfig,
                       instances: list[LabeledInstance]) -> str:
    vulnerable = [i for i in instances if i.label == "vulnerable"]
    if not vulnerable:
        raise InsufficientInstancesError("no vulnerable instances to prompt from")
    template = get_template(config.template_id)
    messages = build_prompt(template, vulnerable[0].snippet_text())
    raw = config.backend.complete(messages, seed=config.seed)
    if raw is None or not raw.strip():
        raise EmptyResponseError("backend returned an empty response")
    return trim_response(raw)


def validate_candidate(condition_text: str, labeled: list[LabeledInstance],
                       threshold: float = DEFAULT_THRESHOLD,
                       candidate_id: str = "candidate") -> ValidationReport:
    """Score fired-iff-vulnerable over the labeled set.

    A condition that does not parse is an automatic reject at accuracy 0.
    """
    try:
        condition = parse_condition(condition_text)
    except RuleSyntaxError as error:
        return ValidationReport(candidate_id=candidate_id, verdicts=[],
                                accuracy=0.0, decision="rejected",
                                parse_error=str(error))
    swe_id = labeled[0].swe_id if labeled else "SWE-000"
    rule = GeneratedRule(rule_id="__candidate__", swe_id=swe_id,
                         condition=condition, condition_text=condition_text)
    scratch = Registry()
    scratch.register(install_rule(rule))

    verdicts = []
    for instance in labeled:
        fired = _fires_on(scratch, instance)
        correct = fired == (instance.label == "vulnerable")
        verdicts.append(InstanceVerdict(instance.instance_id, instance.label,
                                        fired, correct))
    accuracy = sum(v.correct for v in verdicts) / len(verdicts) if verdicts else 0.0
    decision = "accepted" if accuracy >= threshold else "rejected"
    return ValidationReport(candidate_id=candidate_id, verdicts=verdicts,
                            accuracy=accuracy, decision=decision)


def _fires_on(registry: Registry, instance: LabeledInstance) -> bool:
    try:
        unit = parse(instance.source, file_id=instance.instance_id)
    except SentryError:
        return False
    findings = scan(unit, registry)
    if instance.marked_span is None:
        return bool(findings)
    return any(f.span.overlaps(instance.marked_span) for f in findings)


def integrate(condition_text: str, report: ValidationReport,
              registry: Registry, store: RuleStore, *,
              swe_id: str, created_from: str = "") -> DetectorDescriptor:
    if report.decision != "accepted":
        raise RejectedCandidateError(
            f"candidate {report.candidate_id} was rejected "
            f"(accuracy {report.accuracy:.3f})")
    digest = hashlib.sha256(condition_text.encode("utf-8")).hexdigest()[:8]
    rule_id = f"gen-{swe_id.lower()}-{digest}"
    rule = GeneratedRule(
        rule_id=rule_id, swe_id=swe_id,
        condition=parse_condition(condition_text),
        condition_text=condition_text,
        origin_label="generated",
        acceptance_accuracy=report.accuracy,
        created_from=created_from)
    detector = install_rule(rule)
    registry.register(detector)       # raises DuplicateDetectorId first
    store.save(rule)
    return detector.descriptor


def instance_set_hash(instances: list[LabeledInstance]) -> str:
    joined = "\n".join(sorted(i.instance_id for i in instances))
    return hashlib.sha256(joined.encode("utf-8")).hexdigest()[:12]


def run_loop(config: GenerationConfig, instances: list[LabeledInstance],
             registry: Registry, store: RuleStore) -> LoopResult:
    """generate → validate until a candidate passes or attempts run out."""
    if not instances:
        raise InsufficientInstancesError("no labeled instances")
    swe_id = instances[0].swe_id
    created_from = f"{config.template_id}:{instance_set_hash(instances)}"
    reports: list[ValidationReport] = []
    for attempt in range(1, config.max_attempts + 1):
        condition_text = generate_candidate(config, instances)
        report = validate_candidate(condition_text, instances,
                                    threshold=config.acceptance_threshold,
                                    candidate_id=f"attempt-{attempt}")
        reports.append(report)
        if report.decision == "accepted":
            descriptor = integrate(condition_text, report, registry, store,
                                   swe_id=swe_id, created_from=created_from)
            return LoopResult(integrated=descriptor, reports=reports)
    return LoopResult(integrated=None, reports=reports)
