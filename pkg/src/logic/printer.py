"""
logic/printer.py

Canonical text for formulas. Parentheses are emitted only where the parser's
precedence (! > & > | > -> > <->) would otherwise regroup the tree; a box
or diamond always parenthesizes its inner formula.
"""

from src.logic.ast import And, Atom, Box, Diamond, FalseAt, Formula, Iff, Implies, Not, Or, TrueAt

IFF, IMPLIES, OR, AND, UNARY, PRIMARY = range(1, 7)


def _precedence(f: Formula) -> int:
    if isinstance(f, Iff):
        return IFF
    if isinstance(f, Implies):
        return IMPLIES
    if isinstance(f, Or):
        return OR
    if isinstance(f, And):
        return AND
    if isinstance(f, (Not, Box, Diamond)):
        return UNARY
    return PRIMARY


def _wrap(f: Formula, parenthesize: bool) -> str:
    text = print_formula(f)
    return f"({text})" if parenthesize else text


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f"{f.variable}({','.join(f.context.values)})={f.value}"
    if isinstance(f, TrueAt):
        return f"true({','.join(f.context.values)})"
    if isinstance(f, FalseAt):
        return f"false({','.join(f.context.values)})"
    if isinstance(f, Box):
        return f"[{f.iv}]({print_formula(f.inner)})"
    if isinstance(f, Diamond):
        return f"<{f.iv}>({print_formula(f.inner)})"
    if isinstance(f, Not):
        operand = f.operand
        return "!" + _wrap(operand, _precedence(operand) < UNARY or isinstance(operand, Atom))
    if isinstance(f, And):
        return " & ".join(_wrap(op, _precedence(op) <= AND) for op in f.operands)
    if isinstance(f, Or):
        return " | ".join(_wrap(op, _precedence(op) <= OR) for op in f.operands)
    if isinstance(f, Implies):
        return f"{_wrap(f.left, _precedence(f.left) <= IMPLIES)} -> {_wrap(f.right, _precedence(f.right) < IMPLIES)}"
    if isinstance(f, Iff):
        return f"{_wrap(f.left, _precedence(f.left) < IFF)} <-> {_wrap(f.right, _precedence(f.right) <= IFF)}"
    raise TypeError(f"not a formula: {f!r}")
