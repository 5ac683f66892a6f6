from __future__ import annotations

from dataclasses import dataclass
from typing import List

from ..errors import LangSyntaxError

KEYWORDS = {
    "while", "if", "else", "skip", "return", "break", "true", "false",
    "observe", "observeFun", "cover", "nondet",
}

# longest first
SYMBOLS = [
    ":=", "==", "!=", "<=", ">=", "&&", "||",
    "(", ")", "{", "}", "[", "]", ",", ";", "+", "-", "*", "/", "%",
    "<", ">", "!", "|",
]

ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "0": "\0", "\\": "\\", "'": "'", '"': '"'}


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "char" | "str" | "ident" | "kw" | "sym" | "eof"
    text: str
    value: object
    line: int
    col: int


def _read_escape(src: str, i: int, line: int, col: int, source: str):
    """Decode the escape starting after a backslash at ``src[i]``."""
    if i >= len(src):
        raise LangSyntaxError("unterminated escape", line, col, source)
    c = src[i]
    if c == "x":
        digits = src[i + 1:i + 3]
        if len(digits) != 2 or any(d not in "0123456789abcdefABCDEF" for d in digits):
            raise LangSyntaxError("bad \\x escape", line, col, source)
        return chr(int(digits, 16)), i + 3
    if c not in ESCAPES:
        raise LangSyntaxError(f"unknown escape \\{c}", line, col, source)
    return ESCAPES[c], i + 1


def tokenize(src: str, first_line: int = 1, source: str = "") -> List[Token]:
    toks: List[Token] = []
    i, line, line_start = 0, first_line, 0
    n = len(src)
    while i < n:
        c = src[i]
        col = i - line_start + 1
        if c == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if c in " \t\r﻿":
            i += 1
            continue
        if src.startswith("//", i):
            while i < n and src[i] != "\n":
                i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Token("int", src[i:j], int(src[i:j]), line, col))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            word = src[i:j]
            toks.append(Token("kw" if word in KEYWORDS else "ident", word, word, line, col))
            i = j
            continue
        if c == "'":
            j = i + 1
            if j < n and src[j] == "\\":
                ch, j = _read_escape(src, j + 1, line, col, source)
            elif j < n and src[j] not in "'\n":
                ch, j = src[j], j + 1
            else:
                raise LangSyntaxError("empty or unterminated character literal", line, col, source)
            if j >= n or src[j] != "'":
                raise LangSyntaxError("unterminated character literal", line, col, source)
            toks.append(Token("char", src[i:j + 1], ch, line, col))
            i = j + 1
            continue
        if c == '"':
            j = i + 1
            buf = []
            while True:
                if j >= n or src[j] == "\n":
                    raise LangSyntaxError("unterminated string literal", line, col, source)
                if src[j] == '"':
                    break
                if src[j] == "\\":
                    ch, j = _read_escape(src, j + 1, line, col, source)
                    buf.append(ch)
                else:
                    buf.append(src[j])
                    j += 1
            toks.append(Token("str", src[i:j + 1], "".join(buf), line, col))
            i = j + 1
            continue
        for sym in SYMBOLS:
            if src.startswith(sym, i):
                toks.append(Token("sym", sym, sym, line, col))
                i += len(sym)
                break
        else:
            if c == "=":
                raise LangSyntaxError("use ':=' to assign and '==' to compare", line, col, source)
            raise LangSyntaxError(f"unexpected character {c!r}", line, col, source)
    toks.append(Token("eof", "", None, line, i - line_start + 1))
    return toks
