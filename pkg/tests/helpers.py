"""Random models and formulas for the oracle tests."""

import random
from typing import List

from src.causal.model import CausalModel
from src.causal.signature import Context, Intervention, Signature
from src.logic.ast import And, Atom, Box, Diamond, FalseAt, Formula, Iff, Implies, Not, Or, TrueAt


def random_model(sig: Signature, rng: random.Random) -> CausalModel:
    rows_all = sig.num_contexts
    for variable in sig.endogenous:
        rows_all *= variable.size
    tables = [tuple(rng.randrange(v.size) for _ in range(rows_all // v.size)) for v in sig.endogenous]
    return CausalModel.from_codes(sig, tables)


def random_intervention(sig: Signature, rng: random.Random) -> Intervention:
    names = [n for n in sig.endo_names if rng.random() < 0.3]
    return Intervention(tuple((n, rng.choice(sig.range_of(n))) for n in names))


def random_inner(sig: Signature, rng: random.Random, contexts: List[Context], depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.45:
        u = rng.choice(contexts)
        roll = rng.random()
        if roll < 0.06:
            return TrueAt(u)
        if roll < 0.1:
            return FalseAt(u)
        name = rng.choice(sig.endo_names)
        return Atom(name, u, rng.choice(sig.range_of(name)))
    kind = rng.choice(["not", "and", "or", "implies"])
    if kind == "not":
        return Not(random_inner(sig, rng, contexts, depth - 1))
    left = random_inner(sig, rng, contexts, depth - 1)
    right = random_inner(sig, rng, contexts, depth - 1)
    if kind == "implies":
        return Implies(left, right)
    return And((left, right)) if kind == "and" else Or((left, right))


def random_formula(sig: Signature, rng: random.Random, depth: int = 2, inner_depth: int = 1) -> Formula:
    """An L+ formula; inner_depth=0 keeps every box to a single atom."""
    contexts = list(sig.contexts())
    if depth == 0 or rng.random() < 0.35:
        node = Box if rng.random() < 0.6 else Diamond
        return node(random_intervention(sig, rng), random_inner(sig, rng, contexts, inner_depth))
    kind = rng.choice(["not", "and", "or", "iff"])
    if kind == "not":
        return Not(random_formula(sig, rng, depth - 1, inner_depth))
    left = random_formula(sig, rng, depth - 1, inner_depth)
    right = random_formula(sig, rng, depth - 1, inner_depth)
    if kind == "iff":
        return Iff(left, right)
    return And((left, right)) if kind == "and" else Or((left, right))
