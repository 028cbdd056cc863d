"""
tools/signature_reducer.py

Signature reductions for satisfiability: S_φ keeps only the endogenous
variables a formula mentions and replaces U by one exogenous variable U*
ranging over the mentioned contexts; S_φ⁺ additionally carries a fresh X*
whose range is the product of the kept ranges, when the original signature
is large enough to need it.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

from src.causal.errors import ShapeMismatch
from src.causal.signature import EMPTY_CONTEXT, Context, Signature, Variable, is_token, sig_size
from src.logic.ast import Formula, contexts_of, variables_of
from src.logic.transform import map_formula

logger = logging.getLogger(__name__)

U_STAR = "U_star"
X_STAR = "X_star"


def fresh_name(base: str, taken: Sequence[str]) -> str:
    name = base
    while name in taken:
        name += "_"
    return name


def joined_tokens(rows: Sequence[Tuple[str, ...]], prefix: str) -> Tuple[str, ...]:
    """One value token per row: the row joined by "_", or prefix+index when
    that would be ambiguous or not a valid token."""
    tokens = tuple("_".join(row) for row in rows)
    if len(set(tokens)) == len(tokens) and all(is_token(t) for t in tokens):
        return tokens
    return tuple(f"{prefix}{i}" for i in range(len(rows)))


@dataclass(frozen=True)
class Reduction:
    """A reduced signature plus the bookkeeping to move between S and it."""

    original: Signature
    reduced: Signature
    formula: Formula
    kept: Tuple[str, ...]
    contexts: Tuple[Tuple[Context, Context], ...]  # (original, reduced) per mentioned context
    u_star: Optional[str] = None
    x_star: Optional[str] = None
    x_star_rows: Tuple[Tuple[str, ...], ...] = ()

    @property
    def plus(self) -> bool:
        return self.x_star is not None

    def to_reduced(self, u: Context) -> Context:
        """Reduced context of an original one; unmentioned contexts map to the first."""
        for original, reduced in self.contexts:
            if original == u:
                return reduced
        return self.contexts[0][1]

    def to_original(self, u: Context) -> Context:
        for original, reduced in self.contexts:
            if reduced == u:
                return original
        raise ShapeMismatch(f"context {u} is not a context of the reduced signature")

    def star_value(self, row: Sequence[str]) -> str:
        """X* token for a tuple of kept values."""
        return self.reduced.range_of(self.x_star)[self.x_star_rows.index(tuple(row))]

    def star_row(self, value: str) -> Tuple[str, ...]:
        return self.x_star_rows[self.reduced.range_of(self.x_star).index(value)]


def mentioned_contexts(f: Formula, sig: Signature) -> List[Context]:
    """Contexts mentioned in f, in the signature's context order."""
    return sorted(contexts_of(f), key=sig.encode_context)


def kept_variables(f: Formula, sig: Signature) -> Tuple[str, ...]:
    """V_φ in declaration order."""
    mentioned = variables_of(f)
    return tuple(n for n in sig.endo_names if n in mentioned)


def _build(f: Formula, sig: Signature, endogenous: List[Variable], x_star=None, rows=()) -> Reduction:
    contexts = mentioned_contexts(f, sig)
    taken = [v.name for v in endogenous]
    if len(contexts) > 1:
        u_star = fresh_name(U_STAR, taken)
        tokens = joined_tokens([u.values for u in contexts], "u")
        exogenous = (Variable(u_star, tokens),)
        pairs = tuple((u, Context((t,))) for u, t in zip(contexts, tokens))
    else:
        u_star, exogenous = None, ()
        pairs = tuple((u, EMPTY_CONTEXT) for u in contexts) or ((next(sig.contexts()), EMPTY_CONTEXT),)
    reduced = Signature(exogenous, tuple(endogenous))
    mapping = dict(pairs)
    formula = map_formula(f, context=lambda u: mapping[u])
    return Reduction(sig, reduced, formula, kept_variables(f, sig), pairs, u_star, x_star, tuple(rows))


def reduce_finite1(f: Formula, sig: Signature) -> Reduction:
    kept = kept_variables(f, sig)
    return _build(f, sig, [sig.variable(n) for n in kept])


def plus_guard(f: Formula, sig: Signature) -> bool:
    """||S|| > ||S_φ||² + ||S_φ||."""
    small = 1
    for name in kept_variables(f, sig):
        small *= sig.variable(name).size
    return sig_size(sig) > small * small + small


def reduce_finite1a(f: Formula, sig: Signature) -> Reduction:
    kept = kept_variables(f, sig)
    if not kept:
        # one variable alone always has a solution, so nothing smaller than V is faithful here
        return _build(f, sig, list(sig.endogenous))
    if not plus_guard(f, sig):
        logger.debug("📊 ||S|| within the S_φ⁺ bound; keeping every endogenous variable")
        return _build(f, sig, list(sig.endogenous))
    rows = list(product(*(sig.range_of(n) for n in kept)))
    x_star = fresh_name(X_STAR, sig.endo_names)
    star = Variable(x_star, joined_tokens(rows, "x"))
    logger.debug(f"📊 Adding {x_star} with {len(rows)} values")
    return _build(f, sig, [sig.variable(n) for n in kept] + [star], x_star, rows)


def reduce_sig_finite1(f: Formula, sig: Signature) -> Signature:
    """S_φ."""
    return reduce_finite1(f, sig).reduced


def reduce_sig_finite1a(f: Formula, sig: Signature) -> Signature:
    """S_φ⁺."""
    return reduce_finite1a(f, sig).reduced
