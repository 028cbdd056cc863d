"""
logic/parser.py

Recursive-descent parser for causal formulas.

    formula := iff ; iff := imp ("<->" imp)* ; imp := or ("->" imp)? ;
    or := and ("|" and)* ; and := un ("&" un)* ;
    un := "!" un | "(" formula ")" | box ;
    box := ("[" setlist? "]" | "<" setlist? ">") inner_un ;
    inner_un := "!" inner_un | "(" inner ")" | atom ;
    atom := IDENT "(" ctx ")" ("=" | "!=") VALUE | ("true" | "false") "(" ctx ")"

`inner` uses the same Boolean layers as `formula` over inner_un.
Every name, value and context is checked against the signature while parsing.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.causal.errors import (
    BadContextArity,
    DuplicateInterventionTarget,
    FormulaSyntaxError,
    OutOfRangeValue,
    UnknownVariable,
)
from src.causal.signature import Context, Intervention, Signature
from src.logic.ast import Atom, Box, Diamond, FalseAt, Formula, Iff, Implies, Not, TrueAt, conj, disj

SYMBOLS = ("<->", "<-", "->", "!=", "[", "]", "<", ">", "(", ")", "!", "&", "|", "=", ",", ";")
WORD_PATTERN = re.compile(r"[-+]?[A-Za-z0-9_]+")


@dataclass(frozen=True)
class Token:
    kind: str  # a symbol, "WORD" or "EOF"
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        for symbol in SYMBOLS:
            if text.startswith(symbol, i):
                tokens.append(Token(symbol, symbol, i))
                i += len(symbol)
                break
        else:
            match = WORD_PATTERN.match(text, i)
            if not match:
                raise FormulaSyntaxError(f"unexpected character {text[i]!r}", i)
            tokens.append(Token("WORD", match.group(), i))
            i = match.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class FormulaParser:
    """Parser for one formula text against one signature."""

    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.tokens = tokenize(text)
        self.pos = 0

    # ---------- token helpers ----------
    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def accept(self, kind: str) -> Optional[Token]:
        if self.current.kind == kind:
            token = self.current
            self.pos += 1
            return token
        return None

    def expect(self, kind: str, what: Optional[str] = None) -> Token:
        token = self.accept(kind)
        if token is None:
            self.fail(f"unexpected {self.describe(self.current)}", [what or repr(kind)])
        return token

    @staticmethod
    def describe(token: Token) -> str:
        return "end of input" if token.kind == "EOF" else repr(token.text)

    def fail(self, message: str, expected: List[str]):
        raise FormulaSyntaxError(message, self.current.position, expected)

    # ---------- entry ----------
    def parse(self) -> Formula:
        formula = self.binary(self.outer_unary)
        if self.current.kind != "EOF":
            self.fail(f"unexpected {self.describe(self.current)}", ["'&'", "'|'", "'->'", "'<->'", "end of input"])
        return formula

    # ---------- shared Boolean layers ----------
    def binary(self, unary) -> Formula:
        left = self.implication(unary)
        while self.accept("<->"):
            left = Iff(left, self.implication(unary))
        return left

    def implication(self, unary) -> Formula:
        left = self.disjunction(unary)
        if self.accept("->"):
            return Implies(left, self.implication(unary))
        return left

    def disjunction(self, unary) -> Formula:
        operands = [self.conjunction(unary)]
        while self.accept("|"):
            operands.append(self.conjunction(unary))
        return disj(*operands)

    def conjunction(self, unary) -> Formula:
        operands = [unary()]
        while self.accept("&"):
            operands.append(unary())
        return conj(*operands)

    # ---------- outer level ----------
    def outer_unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.outer_unary())
        if self.accept("("):
            formula = self.binary(self.outer_unary)
            self.expect(")", "')'")
            return formula
        if self.current.kind in ("[", "<"):
            return self.basic()
        if self.current.kind == "WORD":
            self.fail("atoms must appear inside a box or diamond", ["'['", "'<'"])
        self.fail(f"unexpected {self.describe(self.current)}", ["'!'", "'('", "'['", "'<'"])

    def basic(self) -> Formula:
        closing = "]" if self.accept("[") else None
        if closing is None:
            self.expect("<")
            closing = ">"
        iv = self.setlist(closing)
        inner = self.inner_unary()
        return Box(iv, inner) if closing == "]" else Diamond(iv, inner)

    def setlist(self, closing: str) -> Intervention:
        settings: List[Tuple[str, str]] = []
        if self.accept(closing):
            return Intervention(())
        if self.current.kind == "WORD" and self.current.text == "true" and self.tokens[self.pos + 1].kind == closing:
            self.pos += 2
            return Intervention(())
        while True:
            name_token = self.expect("WORD", "variable name")
            self.expect("<-", "'<-'")
            value_token = self.expect("WORD", "value")
            name, value = name_token.text, value_token.text
            if not self.sig.is_endogenous(name):
                raise UnknownVariable(f"column {name_token.position + 1}: {name!r} is not an endogenous variable")
            if value not in self.sig.range_of(name):
                raise OutOfRangeValue(f"column {value_token.position + 1}: value {value!r} out of range for {name}")
            if any(existing == name for existing, _ in settings):
                raise DuplicateInterventionTarget(f"column {name_token.position + 1}: {name} is set twice")
            settings.append((name, value))
            if self.accept(";"):
                continue
            self.expect(closing, f"';' or '{closing}'")
            return Intervention(tuple(settings))

    # ---------- inner level ----------
    def inner_unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.inner_unary())
        if self.accept("("):
            formula = self.binary(self.inner_unary)
            self.expect(")", "')'")
            return formula
        if self.current.kind == "WORD":
            return self.atom()
        if self.current.kind in ("[", "<"):
            self.fail("boxes cannot be nested inside a box", ["atom", "'('", "'!'"])
        self.fail(f"unexpected {self.describe(self.current)}", ["atom", "'('", "'!'"])

    def atom(self) -> Formula:
        name_token = self.expect("WORD", "variable name")
        name = name_token.text
        self.expect("(", "'('")
        context = self.context(name_token)
        if name in ("true", "false"):
            return TrueAt(context) if name == "true" else FalseAt(context)
        if not self.sig.is_endogenous(name):
            raise UnknownVariable(f"column {name_token.position + 1}: {name!r} is not an endogenous variable")
        negated = False
        if self.accept("!="):
            negated = True
        else:
            self.expect("=", "'=' or '!='")
        value_token = self.expect("WORD", "value")
        if value_token.text not in self.sig.range_of(name):
            raise OutOfRangeValue(f"column {value_token.position + 1}: value {value_token.text!r} out of range for {name}")
        atom = Atom(name, context, value_token.text)
        return Not(atom) if negated else atom

    def context(self, owner: Token) -> Context:
        values: List[Token] = []
        if not self.accept(")"):
            values.append(self.expect("WORD", "context value"))
            while self.accept(","):
                values.append(self.expect("WORD", "context value"))
            self.expect(")", "',' or ')'")
        exogenous = self.sig.exogenous
        if len(values) != len(exogenous):
            raise BadContextArity(
                f"column {owner.position + 1}: context has {len(values)} value(s), "
                f"signature has {len(exogenous)} exogenous variable(s)"
            )
        for variable, token in zip(exogenous, values):
            if token.text not in variable.values:
                raise OutOfRangeValue(
                    f"column {token.position + 1}: value {token.text!r} out of range for exogenous {variable.name}"
                )
        return Context(tuple(t.text for t in values))


def parse(text: str, sig: Signature) -> Formula:
    """Parse formula text against a signature."""
    return FormulaParser(text, sig).parse()
