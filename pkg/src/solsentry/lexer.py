"""Tokenizer for the supported Solidity subset.

Keywords are not a separate token kind; the parser matches identifier text
where the grammar calls for one. That keeps constructs like `require` and
`revert` what they really are in the language: ordinary function names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import SoliditySyntaxError
from .nodes import line_column

# Longest first, so maximal munch falls out of a single ordered scan.
_PUNCTUATION = [
    ">>=", "<<=", "**",
    "++", "--", "&&", "||", "==", "!=", "<=", ">=", "=>", "->",
    "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<", ">>",
    "+", "-", "*", "/", "%", "!", "=", "<", ">", "&", "|", "^", "~",
    "(", ")", "{", "}", "[", "]", ";", ",", ".", ":", "?",
]

_NUMBER_RE = re.compile(r"0[xX][0-9a-fA-F_]+|\d[\d_]*(?:\.\d[\d_]*)?(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")


@dataclass(frozen=True)
class Token:
    kind: str       # "number" | "string" | "ident" | "punct" | "eof"
    text: str
    offset: int

    @property
    def length(self) -> int:
        return len(self.text)

    @property
    def end(self) -> int:
        return self.offset + len(self.text)


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if source.startswith("//", i):
            nl = source.find("\n", i)
            i = n if nl < 0 else nl + 1
            continue
        if source.startswith("/*", i):
            close = source.find("*/", i + 2)
            if close < 0:
                line, col = line_column(source, i)
                raise SoliditySyntaxError(line, col, "*/", "end of file")
            i = close + 2
            continue
        if ch in "\"'":
            j = i + 1
            while j < n and source[j] != ch:
                j += 2 if source[j] == "\\" else 1
            if j >= n:
                line, col = line_column(source, i)
                raise SoliditySyntaxError(line, col, "closing quote", "end of file")
            tokens.append(Token("string", source[i:j + 1], i))
            i = j + 1
            continue
        m = _NUMBER_RE.match(source, i)
        if m:
            tokens.append(Token("number", m.group(), i))
            i = m.end()
            continue
        m = _IDENT_RE.match(source, i)
        if m:
            tokens.append(Token("ident", m.group(), i))
            i = m.end()
            continue
        for punct in _PUNCTUATION:
            if source.startswith(punct, i):
                tokens.append(Token("punct", punct, i))
                i += len(punct)
                break
        else:
            line, col = line_column(source, i)
            raise SoliditySyntaxError(line, col, "a token", repr(ch))
    tokens.append(Token("eof", "", n))
    return tokens
