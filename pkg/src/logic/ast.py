"""
logic/ast.py

Immutable formula trees for L_GP ⊂ L_uniq ⊂ L+.

Outer formulas are Boolean combinations of Box / Diamond nodes; inner
formulas (under a Box or Diamond) are Boolean combinations of Atom,
TrueAt and FalseAt. Both levels share the connective classes.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Tuple, Union

from src.causal.signature import Context, Intervention


@dataclass(frozen=True)
class Atom:
    variable: str
    context: Context
    value: str


@dataclass(frozen=True)
class TrueAt:
    context: Context


@dataclass(frozen=True)
class FalseAt:
    context: Context


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    operands: Tuple["Formula", ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("And needs at least two operands")


@dataclass(frozen=True)
class Or:
    operands: Tuple["Formula", ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("Or needs at least two operands")


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    iv: Intervention
    inner: "Formula"


@dataclass(frozen=True)
class Diamond:
    iv: Intervention
    inner: "Formula"


Formula = Union[Atom, TrueAt, FalseAt, Not, And, Or, Implies, Iff, Box, Diamond]
Basic = (Box, Diamond)
AtomLike = (Atom, TrueAt, FalseAt)


class LanguageClass(str, Enum):
    GP = "GP"
    UNIQ = "UNIQ"
    PLUS = "PLUS"

    @property
    def rank(self) -> int:
        return ["GP", "UNIQ", "PLUS"].index(self.value)


def conj(*formulas: Formula) -> Formula:
    """And of the arguments; a single argument is returned unchanged."""
    if not formulas:
        raise ValueError("empty conjunction")
    return formulas[0] if len(formulas) == 1 else And(tuple(formulas))


def disj(*formulas: Formula) -> Formula:
    if not formulas:
        raise ValueError("empty disjunction")
    return formulas[0] if len(formulas) == 1 else Or(tuple(formulas))


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.operand,)
    if isinstance(f, (And, Or)):
        return f.operands
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, (Box, Diamond)):
        return (f.inner,)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal of every subformula."""
    stack: List[Formula] = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def contexts_of(f: Formula) -> Tuple[Context, ...]:
    """Contexts mentioned in f, in order of first occurrence."""
    seen = {}
    for node in walk(f):
        if isinstance(node, AtomLike):
            seen.setdefault(node.context, None)
    return tuple(seen)


def variables_of(f: Formula) -> frozenset:
    """Endogenous names mentioned in atoms or intervention targets."""
    names = set()
    for node in walk(f):
        if isinstance(node, Atom):
            names.add(node.variable)
        elif isinstance(node, Basic):
            names.update(node.iv.targets)
    return frozenset(names)
