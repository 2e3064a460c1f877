"""Static analysis for Solidity: parser, CFG, detectors, and a rule DSL
whose conditions can be generated by a model and gated on labeled accuracy.
"""

from .cfg import Cfg, build_cfg, dominators, reachable
from .corpus import (DatasetSplit, LabeledInstance, dedup, em_score,
                     exact_match, export_jsonl, inject, split)
from .engine import (Detector, DetectorDescriptor, Registry, ScanOptions,
                     builtin_registry, scan)
from .errors import SentryError
from .findings import Finding
from .nodes import AstNode, SourceUnit, Span
from .parser import parse, parse_expression
from .printer import print_expression, print_source
from .ruledsl import (GeneratedRule, canonicalize, eval_condition,
                      install_rule, parse_condition, print_condition)
from .rulegen import (GenerationConfig, LoopResult, ValidationReport,
                      run_loop, validate_candidate)
from .rulestore import RuleStore
from .versions import VersionConstraint

__version__ = "0.1.0"

__all__ = [
    "AstNode", "Cfg", "DatasetSplit", "Detector", "DetectorDescriptor",
    "Finding", "GeneratedRule", "GenerationConfig", "LabeledInstance",
    "LoopResult", "Registry", "RuleStore", "ScanOptions", "SentryError",
    "SourceUnit", "Span", "ValidationReport", "VersionConstraint",
    "builtin_registry", "build_cfg", "canonicalize", "dedup", "dominators",
    "em_score", "eval_condition", "exact_match", "export_jsonl", "inject",
    "install_rule", "parse", "parse_condition", "parse_expression",
    "print_condition", "print_expression", "print_source", "reachable",
    "run_loop", "scan", "split", "validate_candidate",
]
