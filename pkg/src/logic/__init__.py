from src.logic.ast import (
    And,
    Atom,
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
    contexts_of,
    disj,
    variables_of,
)
from src.logic.parser import parse
from src.logic.printer import print_formula
from src.logic.transform import classify_language, desugar, to_luniq, validate_formula

__all__ = [
    "And",
    "Atom",
    "Box",
    "Diamond",
    "FalseAt",
    "Formula",
    "Iff",
    "Implies",
    "LanguageClass",
    "Not",
    "Or",
    "TrueAt",
    "classify_language",
    "conj",
    "contexts_of",
    "desugar",
    "disj",
    "parse",
    "print_formula",
    "to_luniq",
    "validate_formula",
    "variables_of",
]
