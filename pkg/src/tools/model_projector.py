"""
tools/model_projector.py

Moving models between a signature and its reductions while keeping the
solutions of every submodel over the mentioned variables:

- project_model_rec / project_model_uniq: S → S_φ
- transform_finite1a: S → S_φ⁺ (TO_REDUCED) and S_φ⁺ → S (FROM_REDUCED)
- lift_model: a witness over any reduction back to S
"""

import logging
from enum import Enum
from itertools import product
from typing import Callable, Dict, Optional, Union

from src.causal.classes import is_recursive, is_unique_solutions
from src.causal.errors import GuardViolated, NotRecursive, NotUniqueSolutions, ShapeMismatch
from src.causal.model import CausalModel, solve, solve_in_order
from src.causal.signature import Context, Intervention, Signature
from src.logic.ast import Formula
from src.tools.signature_reducer import Reduction, reduce_finite1, reduce_finite1a

logger = logging.getLogger(__name__)

State = Dict[str, str]


class Direction(str, Enum):
    TO_REDUCED = "TO_REDUCED"
    FROM_REDUCED = "FROM_REDUCED"

    @classmethod
    def parse(cls, text: str) -> "Direction":
        return cls(text.strip().upper().replace("-", "_"))


# ================== CONTEXT HELPERS ==================
def _context(sig: Signature, state: State) -> Context:
    return Context(tuple(state[n] for n in sig.exo_names))


def _reduced_inputs(reduction: Reduction, state: State) -> State:
    """Inputs over the reduced signature for an original context/state."""
    inputs = {n: state[n] for n in reduction.reduced.endo_names if n in state}
    if reduction.u_star:
        u = _context(reduction.original, state)
        inputs[reduction.u_star] = reduction.to_reduced(u).values[0]
    return inputs


def _original_context(reduction: Reduction, state: State) -> Context:
    """Original context for a state over the reduced signature."""
    if reduction.u_star:
        return reduction.to_original(Context((state[reduction.u_star],)))
    return reduction.contexts[0][0]


def _tabulate(sig: Signature, functions: Dict[str, Callable[[State], str]]) -> CausalModel:
    return CausalModel.from_functions(sig, functions)


# ================== S → S_φ ==================
def _project(model: CausalModel, f: Formula, value_of: Callable[[str, Intervention, Context], str]) -> CausalModel:
    reduction = reduce_finite1(f, model.signature)

    def mechanism(name: str):
        others = [n for n in reduction.kept if n != name]

        def compute(state: State) -> str:
            iv = Intervention(tuple((n, state[n]) for n in others))
            return value_of(name, iv, _original_context(reduction, state))

        return compute

    return _tabulate(reduction.reduced, {name: mechanism(name) for name in reduction.kept})


def project_model_rec(model: CausalModel, f: Formula) -> CausalModel:
    """F'_X by substitution along ≺ for the variables f does not mention.

    Raises:
        NotRecursive: when the model has no recursion order
    """
    order = is_recursive(model)
    if order is None:
        raise NotRecursive("project_model_rec needs a recursive model")
    return _project(model, f, lambda name, iv, u: solve_in_order(model, order, iv, u)[name])


def project_model_uniq(model: CausalModel, f: Formula, budget: Optional[int] = None) -> CausalModel:
    """F'_X(u, x⃗) = X in the unique solution of T_{V_φ−{X}←x⃗}(u).

    Raises:
        NotUniqueSolutions: when some submodel has zero or several solutions
    """
    if not is_unique_solutions(model, budget):
        raise NotUniqueSolutions("project_model_uniq needs a unique-solution model")
    return _project(model, f, lambda name, iv, u: solve(model, iv, u, budget).solutions[0][name])


# ================== S ↔ S_φ⁺ ==================
def _reindex_to_reduced(model: CausalModel, reduction: Reduction) -> CausalModel:
    def mechanism(name: str):
        def compute(state: State) -> str:
            u = _original_context(reduction, state)
            full = dict(zip(reduction.original.exo_names, u.values))
            full.update({n: state[n] for n in reduction.reduced.endo_names if n != name})
            return model.apply(name, full)

        return compute

    return _tabulate(reduction.reduced, {n: mechanism(n) for n in reduction.reduced.endo_names})


def _to_plus(model: CausalModel, reduction: Reduction, budget: Optional[int]) -> CausalModel:
    kept = reduction.kept
    star = reduction.x_star
    sig = model.signature

    # exact only when V − V_φ has one solution for every setting of V_φ
    ambiguous = next(
        (
            (u, row)
            for u, _ in reduction.contexts
            for row in reduction.x_star_rows
            if len(solve(model, Intervention(tuple(zip(kept, row))), u, budget)) != 1
        ),
        None,
    )
    if ambiguous:
        u, row = ambiguous
        logger.warning(
            f"⚠️ Unmentioned variables are not determined at {dict(zip(kept, row))} {u}; "
            "restricted solution sets may differ after the transform"
        )

    def mechanism(i: int, name: str):
        low, high = sig.range_of(name)[0], sig.range_of(name)[1]
        others = [n for n in kept if n != name]

        def compute(state: State) -> str:
            y = reduction.star_row(state[star])
            y_value = y[i]
            matches = all(state[n] == y[kept.index(n)] for n in others)
            if matches:
                u = _original_context(reduction, state)
                iv = Intervention(tuple((n, state[n]) for n in others))
                if y_value in solve(model, iv, u, budget).values_of(name):
                    return y_value
            return low if y_value != low else high

        return compute

    functions = {name: mechanism(i, name) for i, name in enumerate(kept)}
    functions[star] = lambda state: reduction.star_value([state[n] for n in kept])
    return _tabulate(reduction.reduced, functions)


def _from_plus(model: CausalModel, reduction: Reduction) -> CausalModel:
    sig = reduction.original
    kept = reduction.kept
    star = reduction.x_star
    stars = reduction.reduced.range_of(star)
    rest = [n for n in sig.endo_names if n not in kept]
    # injection: the r-th X* value ↦ the r-th tuple over V − V_φ
    tuples = list(product(*(sig.range_of(n) for n in rest)))
    rank = {t: r for r, t in enumerate(tuples)}
    reserved_last = tuples[-1]
    x0, x1 = reduction.x_star_rows[0], reduction.x_star_rows[1]

    def kept_mechanism(i: int, name: str):
        def compute(state: State) -> str:
            w = tuple(state[n] for n in rest)
            r = rank[w]
            if r < len(stars):
                inputs = _reduced_inputs(reduction, state)
                inputs[star] = stars[r]
                return model.apply(name, inputs)
            return x1[i] if w == reserved_last else x0[i]

        return compute

    def rest_mechanism(j: int):
        def compute(state: State) -> str:
            z = model.apply(star, _reduced_inputs(reduction, state))
            return tuples[stars.index(z)][j]

        return compute

    functions = {name: kept_mechanism(i, name) for i, name in enumerate(kept)}
    functions.update({name: rest_mechanism(j) for j, name in enumerate(rest)})
    return _tabulate(sig, functions)


def transform_finite1a(
    model: CausalModel,
    f: Formula,
    direction: Union[Direction, str],
    sig: Optional[Signature] = None,
    budget: Optional[int] = None,
) -> CausalModel:
    """Carry a model across the S / S_φ⁺ reduction.

    TO_REDUCED takes a model over S. FROM_REDUCED takes a model over S_φ⁺
    and needs the original signature `sig`. When ||S|| does not exceed the
    bound, S_φ⁺ keeps every variable and only contexts are re-indexed.

    Raises:
        ShapeMismatch: when the model is not over the expected signature
        GuardViolated: FROM_REDUCED on a model carrying X* while the
            original signature is too small for the injection
    """
    direction = Direction.parse(direction) if isinstance(direction, str) else direction
    if direction is Direction.TO_REDUCED:
        reduction = reduce_finite1a(f, model.signature)
        if not reduction.plus:
            return _reindex_to_reduced(model, reduction)
        return _to_plus(model, reduction, budget)

    if sig is None:
        raise ShapeMismatch("FROM_REDUCED needs the original signature")
    reduction = reduce_finite1a(f, sig)
    if model.signature != reduction.reduced:
        extra = [n for n in model.signature.endo_names if not sig.is_endogenous(n)]
        if extra and not reduction.plus:
            raise GuardViolated("||S|| ≤ ||S_φ||² + ||S_φ||: S_φ⁺ has no X* to expand")
        raise ShapeMismatch(f"model is not over S_φ⁺ of the given signature ({model.signature.describe()})")
    return lift_model(model, reduction)


# ================== WITNESS LIFTING ==================
def lift_model(model: CausalModel, reduction: Reduction) -> CausalModel:
    """A model over the original signature agreeing with `model` on f.

    Variables outside the reduced signature get constant mechanisms (first
    value); contexts are re-indexed; X* is expanded through FROM_REDUCED.
    """
    if reduction.plus:
        return _from_plus(model, reduction)
    sig = reduction.original

    def mechanism(name: str):
        if name not in reduction.reduced.endo_names:
            first = sig.range_of(name)[0]
            return lambda state: first
        return lambda state: model.apply(name, _reduced_inputs(reduction, state))

    return _tabulate(sig, {n: mechanism(n) for n in sig.endo_names})
