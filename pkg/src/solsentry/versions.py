"""Pragma version-constraint parsing.

Needed for one analysis decision: 0.8.x overflow semantics make unchecked
array-length arithmetic revert, so the length-underflow detector is gated on
whether the pragma admits any compiler older than 0.6.0 (when `length` was
still directly assignable). Only the subset of semver ranges that appears in
real pragmas is supported: `^`, `~`, comparison operators, plain versions,
space-joined conjunctions and `||` alternatives.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

Version = tuple[int, int, int]

_VERSION_RE = re.compile(r"(\d+)\.(\d+)(?:\.(\d+))?")
_PART_RE = re.compile(r"(\^|~|>=|<=|>|<|=)?\s*(\d+)\.(\d+)(?:\.(\d+))?")

_MAX = (999, 999, 999)


def _bump_caret(v: Version) -> Version:
    # ^0.5.2 admits <0.6.0; ^1.2.3 admits <2.0.0
    major, minor, _ = v
    if major == 0:
        return (0, minor + 1, 0)
    return (major + 1, 0, 0)


@dataclass(frozen=True)
class _Range:
    low: Version        # inclusive
    high: Version       # exclusive
    def contains(self, v: Version) -> bool:
        return self.low <= v < self.high


def _inc(v: Version) -> Version:
    return (v[0], v[1], v[2] + 1)


@dataclass(frozen=True)
class VersionConstraint:
    """A disjunction of conjunctive version ranges."""

    text: str
    alternatives: tuple[tuple[_Range, ...], ...]

    @classmethod
    def parse(cls, text: str) -> "VersionConstraint":
        alternatives = []
        for alt in text.split("||"):
            ranges = []
            for match in _PART_RE.finditer(alt):
                op, major, minor, patch = match.groups()
                v: Version = (int(major), int(minor), int(patch or 0))
                if op == "^":
                    ranges.append(_Range(v, _bump_caret(v)))
                elif op == "~":
                    ranges.append(_Range(v, (v[0], v[1] + 1, 0)))
                elif op == ">=":
                    ranges.append(_Range(v, _MAX))
                elif op == ">":
                    ranges.append(_Range(_inc(v), _MAX))
                elif op == "<":
                    ranges.append(_Range((0, 0, 0), v))
                elif op == "<=":
                    ranges.append(_Range((0, 0, 0), _inc(v)))
                else:
                    # plain or `=`: exact when a patch is given, else the
                    # whole minor series (0.5 means any 0.5.x)
                    if patch is None:
                        ranges.append(_Range(v, (v[0], v[1] + 1, 0)))
                    else:
                        ranges.append(_Range(v, _inc(v)))
            if ranges:
                alternatives.append(tuple(ranges))
        return cls(text=text, alternatives=tuple(alternatives))

    def admits(self, v: Version) -> bool:
        for ranges in self.alternatives:
            if all(r.contains(v) for r in ranges):
                return True
        return False

    def requires_at_least(self, major: int, minor: int, patch: int = 0) -> bool:
        """True when every admissible compiler version is >= the given one.

        An unparseable or empty constraint requires nothing.
        """
        if not self.alternatives:
            return False
        floor = (major, minor, patch)
        for ranges in self.alternatives:
            low = max(r.low for r in ranges)
            high = min(r.high for r in ranges)
            if low >= high:
                continue            # unsatisfiable conjunct admits nothing
            if low < floor:
                return False
        # at least one satisfiable alternative, all with low >= floor?
        return any(max(r.low for r in rs) < min(r.high for r in rs)
                   for rs in self.alternatives)
