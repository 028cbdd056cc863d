"""
logic/transform.py

Structural operations on formulas: desugaring, language classification,
signature validation, context renaming and the L+ → L_uniq rewrite.
"""

from typing import Callable

from src.causal.errors import ValidationError
from src.causal.signature import Context, Intervention, Signature
from src.logic.ast import (
    And,
    Atom,
    AtomLike,
    Basic,
    Box,
    Diamond,
    FalseAt,
    Formula,
    Iff,
    Implies,
    LanguageClass,
    Not,
    Or,
    TrueAt,
    conj,
    disj,
    walk,
)


def tautology_atom(sig: Signature, u: Context) -> Atom:
    """X1(u)=v1 for the first declared endogenous variable and value."""
    first = sig.endogenous[0]
    return Atom(first.name, u, first.values[0])


def desugar(f: Formula, sig: Signature) -> Formula:
    """Rewrite into Box, Atom, Not, And, Or only."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, TrueAt):
        atom = tautology_atom(sig, f.context)
        return Or((atom, Not(atom)))
    if isinstance(f, FalseAt):
        atom = tautology_atom(sig, f.context)
        return Not(Or((atom, Not(atom))))
    if isinstance(f, Not):
        return Not(desugar(f.operand, sig))
    if isinstance(f, And):
        return And(tuple(desugar(op, sig) for op in f.operands))
    if isinstance(f, Or):
        return Or(tuple(desugar(op, sig) for op in f.operands))
    if isinstance(f, Implies):
        return Or((Not(desugar(f.left, sig)), desugar(f.right, sig)))
    if isinstance(f, Iff):
        left, right = desugar(f.left, sig), desugar(f.right, sig)
        return Or((And((left, right)), And((Not(left), Not(right)))))
    if isinstance(f, Box):
        return Box(f.iv, desugar(f.inner, sig))
    if isinstance(f, Diamond):
        return Not(Box(f.iv, Not(desugar(f.inner, sig))))
    raise TypeError(f"not a formula: {f!r}")


def _is_gp(f: Formula) -> bool:
    if isinstance(f, And):
        return all(_is_gp(op) for op in f.operands)
    return isinstance(f, Box) and isinstance(f.inner, Atom)


def classify_language(f: Formula) -> LanguageClass:
    """Smallest of GP, UNIQ, PLUS containing the surface formula."""
    if any(isinstance(node, (Implies, Iff)) for node in walk(f)):
        return LanguageClass.PLUS
    if _is_gp(f):
        return LanguageClass.GP
    if all(isinstance(node.inner, Atom) for node in walk(f) if isinstance(node, Basic)):
        return LanguageClass.UNIQ
    return LanguageClass.PLUS


def validate_formula(f: Formula, sig: Signature) -> None:
    """Check a programmatically built formula the way parse() checks text."""
    for node in walk(f):
        if isinstance(node, AtomLike):
            if len(node.context.values) != len(sig.exogenous):
                raise ValidationError(f"context {node.context} does not match the exogenous variables")
            for variable, value in zip(sig.exogenous, node.context.values):
                if value not in variable.values:
                    raise ValidationError(f"context value {value!r} out of range for {variable.name}")
        if isinstance(node, Atom):
            if not sig.is_endogenous(node.variable):
                raise ValidationError(f"{node.variable!r} is not an endogenous variable")
            if node.value not in sig.range_of(node.variable):
                raise ValidationError(f"value {node.value!r} out of range for {node.variable}")
        elif isinstance(node, Basic):
            for name, value in node.iv.settings:
                if not sig.is_endogenous(name) or value not in sig.range_of(name):
                    raise ValidationError(f"bad intervention setting {name}<-{value}")
            for inner in walk(node.inner):
                if isinstance(inner, Basic):
                    raise ValidationError("boxes cannot be nested inside a box")


def map_formula(
    f: Formula,
    context: Callable[[Context], Context] = lambda u: u,
    intervention: Callable[[Intervention], Intervention] = lambda iv: iv,
) -> Formula:
    """Rebuild f with contexts and interventions rewritten."""
    if isinstance(f, Atom):
        return Atom(f.variable, context(f.context), f.value)
    if isinstance(f, TrueAt):
        return TrueAt(context(f.context))
    if isinstance(f, FalseAt):
        return FalseAt(context(f.context))
    if isinstance(f, Not):
        return Not(map_formula(f.operand, context, intervention))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(map_formula(op, context, intervention) for op in f.operands))
    if isinstance(f, (Implies, Iff)):
        return type(f)(map_formula(f.left, context, intervention), map_formula(f.right, context, intervention))
    if isinstance(f, Basic):
        return type(f)(intervention(f.iv), map_formula(f.inner, context, intervention))
    raise TypeError(f"not a formula: {f!r}")


# ================== L+ → L_uniq ==================
def _push_box(iv: Intervention, inner: Formula, sig: Signature) -> Formula:
    if isinstance(inner, Atom):
        return Box(iv, inner)
    if isinstance(inner, TrueAt):
        box = Box(iv, tautology_atom(sig, inner.context))
        return Or((box, Not(box)))
    if isinstance(inner, FalseAt):
        box = Box(iv, tautology_atom(sig, inner.context))
        return And((box, Not(box)))
    if isinstance(inner, Not):
        return Not(_push_box(iv, inner.operand, sig))
    if isinstance(inner, And):
        return conj(*(_push_box(iv, op, sig) for op in inner.operands))
    if isinstance(inner, Or):
        return disj(*(_push_box(iv, op, sig) for op in inner.operands))
    if isinstance(inner, Implies):
        return Or((Not(_push_box(iv, inner.left, sig)), _push_box(iv, inner.right, sig)))
    if isinstance(inner, Iff):
        left, right = _push_box(iv, inner.left, sig), _push_box(iv, inner.right, sig)
        return Or((And((left, right)), And((Not(left), Not(right)))))
    raise TypeError(f"not an inner formula: {inner!r}")


def to_luniq(f: Formula, sig: Signature) -> Formula:
    """An L_uniq formula equivalent to f on every unique-solution model.

    Boxes and diamonds are pushed through the inner Boolean structure
    until each carries a single atom. Outer Implies/Iff are expanded too.
    """
    if isinstance(f, Basic):
        return _push_box(f.iv, f.inner, sig)
    if isinstance(f, Not):
        return Not(to_luniq(f.operand, sig))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(to_luniq(op, sig) for op in f.operands))
    if isinstance(f, Implies):
        return Or((Not(to_luniq(f.left, sig)), to_luniq(f.right, sig)))
    if isinstance(f, Iff):
        left, right = to_luniq(f.left, sig), to_luniq(f.right, sig)
        return Or((And((left, right)), And((Not(left), Not(right)))))
    raise TypeError(f"not an outer formula: {f!r}")


# ================== builders ==================
def has_solution(iv: Intervention, u: Context) -> Formula:
    """<iv>true(u): the submodel has at least one solution in context u."""
    return Diamond(iv, TrueAt(u))


def determined(iv: Intervention, variable: str, u: Context, value: str) -> Formula:
    """<iv>true(u) ∧ [iv](X(u)=x): solutions exist and all give X the value x."""
    return And((has_solution(iv, u), Box(iv, Atom(variable, u, value))))
