"""Surface syntax: parser and printer.

Grammar (whitespace insignificant, line comments start with --):

    term    := binder | app
    binder  := ("Pi" | "Sig" | "fn") IDENT ":" term "." term
    app     := atom+                       -- left-associative
    atom    := "Prop" | "Type" NAT | "fst" atom | "snd" atom
             | "<" term "," term ">" ":" annot | IDENT | "(" term ")"
    annot   := binder | atom
    IDENT   := [a-zA-Z][a-zA-Z0-9_']*      -- keywords reserved
    NAT     := [0-9]+                      -- "Type0" and "Type 0" both lex

Binder bodies extend to the right. Context files are newline-separated
entries of the form `IDENT : term`.

Printing is deterministic and re-parses to an alpha-equal term. Binder
and pair atoms are parenthesized where the grammar demands an atom, and
binder-shaped domains are parenthesized for readability.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import (
    PROP,
    App,
    Context,
    Lam,
    Pair,
    Pi,
    Proj1,
    Proj2,
    Prop,
    Sigma,
    Term,
    Type,
    Var,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, column {col})")


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: object
    line: int
    col: int


_WORD = re.compile(r"[a-zA-Z][a-zA-Z0-9_']*")
_NAT = re.compile(r"[0-9]+")
_SYMBOLS = {"(": "lparen", ")": "rparen", "<": "langle", ">": "rangle", ",": "comma", ":": "colon", ".": "dot"}
_KEYWORDS = {"Prop": "prop", "Pi": "pi", "Sig": "sig", "fn": "fn", "fst": "fst", "snd": "snd"}
_TYPE_WORD = re.compile(r"Type([0-9]+)\Z")


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _SYMBOLS:
            toks.append(_Tok(_SYMBOLS[ch], ch, line, col))
            i += 1
            col += 1
            continue
        m = _WORD.match(text, i)
        if m:
            word = m.group(0)
            fused = _TYPE_WORD.match(word)
            if fused:
                toks.append(_Tok("type", int(fused.group(1)), line, col))
            elif word == "Type":
                toks.append(_Tok("typekw", word, line, col))
            elif word in _KEYWORDS:
                toks.append(_Tok(_KEYWORDS[word], word, line, col))
            else:
                toks.append(_Tok("ident", word, line, col))
            i = m.end()
            col += len(word)
            continue
        m = _NAT.match(text, i)
        if m:
            toks.append(_Tok("nat", int(m.group(0)), line, col))
            i = m.end()
            col += len(m.group(0))
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("eof", None, line, col))
    return toks


_ATOM_START = {"prop", "type", "typekw", "fst", "snd", "langle", "ident", "lparen"}
_BINDER_START = {"pi", "sig", "fn"}


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.value!r}", tok.line, tok.col)
        return self.advance()

    def term(self) -> Term:
        if self.peek().kind in _BINDER_START:
            return self.binder()
        return self.app()

    def binder(self) -> Term:
        kw = self.advance()
        name = self.expect("ident", "a binder name")
        self.expect("colon", "':'")
        left = self.term()
        self.expect("dot", "'.'")
        right = self.term()
        if kw.kind == "pi":
            return Pi(name.value, left, right)
        if kw.kind == "sig":
            return Sigma(name.value, left, right)
        return Lam(name.value, left, right)

    def app(self) -> Term:
        t = self.atom()
        while self.peek().kind in _ATOM_START:
            t = App(t, self.atom())
        return t

    def atom(self) -> Term:
        tok = self.peek()
        match tok.kind:
            case "prop":
                self.advance()
                return PROP
            case "type":
                self.advance()
                return Type(tok.value)
            case "typekw":
                self.advance()
                nat = self.expect("nat", "a universe level")
                return Type(nat.value)
            case "fst":
                self.advance()
                return Proj1(self.atom())
            case "snd":
                self.advance()
                return Proj2(self.atom())
            case "ident":
                self.advance()
                return Var(tok.value)
            case "lparen":
                self.advance()
                t = self.term()
                self.expect("rparen", "')'")
                return t
            case "langle":
                self.advance()
                first = self.term()
                self.expect("comma", "','")
                second = self.term()
                self.expect("rangle", "'>'")
                self.expect("colon", "':'")
                if self.peek().kind in _BINDER_START:
                    ann = self.binder()
                else:
                    ann = self.atom()
                return Pair(first, second, ann)
        raise ParseError(f"expected a term, found {tok.value!r}", tok.line, tok.col)


def parse_term(text: str) -> Term:
    parser = _Parser(_tokenize(text))
    t = parser.term()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.col)
    return t


def parse_context(text: str) -> Context:
    entries: list[tuple[str, Term]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("--", 1)[0].strip()
        if not stripped:
            continue
        toks = _tokenize(stripped)
        parser = _Parser(toks)
        name = parser.expect("ident", "an entry name")
        parser.expect("colon", "':'")
        ty = parser.term()
        tok = parser.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input {tok.value!r} in context entry", lineno, tok.col)
        entries.append((name.value, ty))
    return Context(tuple(entries))


def print_term(t: Term) -> str:
    """Deterministic text form; parse_term(print_term(t)) is alpha-equal to t."""
    return _p_term(t)


def _p_term(t: Term) -> str:
    match t:
        case Pi(x, a, b):
            return f"Pi {x} : {_p_domain(a)} . {_p_term(b)}"
        case Sigma(x, a, b):
            return f"Sig {x} : {_p_domain(a)} . {_p_term(b)}"
        case Lam(x, a, b):
            return f"fn {x} : {_p_domain(a)} . {_p_term(b)}"
        case Pair(m, n, ann):
            return f"< {_p_term(m)} , {_p_term(n)} > : {_p_annot(ann)}"
        case _:
            return _p_app(t)


def _p_domain(t: Term) -> str:
    if isinstance(t, (Pi, Sigma, Lam, Pair)):
        return f"({_p_term(t)})"
    return _p_app(t)


def _p_annot(t: Term) -> str:
    if isinstance(t, (Pi, Sigma, Lam)):
        return _p_term(t)
    return _p_element(t)


def _p_app(t: Term) -> str:
    if isinstance(t, App):
        head = _p_app(t.fn) if isinstance(t.fn, App) else _p_element(t.fn)
        return f"{head} {_p_element(t.arg)}"
    return _p_element(t)


def _p_element(t: Term) -> str:
    match t:
        case Var(x):
            return x
        case Prop():
            return "Prop"
        case Type(j):
            return f"Type{j}"
        case Proj1(m):
            return f"fst {_p_element(m)}"
        case Proj2(m):
            return f"snd {_p_element(m)}"
        case Pair(m, n, ann):
            # parenthesize a binder-shaped annotation so the pair stays one atom
            if isinstance(ann, (Pi, Sigma, Lam)):
                return f"< {_p_term(m)} , {_p_term(n)} > : ({_p_term(ann)})"
            return f"< {_p_term(m)} , {_p_term(n)} > : {_p_element(ann)}"
        case _:
            return f"({_p_term(t)})"
