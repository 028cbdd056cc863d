"""
tools/enum_sat_solver.py

Satisfiability and validity by exhaustive enumeration of the models of a
reduced signature, plus the class dispatcher used by the CLI and the API.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from typing import Iterator, List, Optional, Tuple, Union

from pqdm.threads import pqdm

from src import config
from src.causal.classes import ModelClass, count_models, enumerate_models, in_class, is_recursive
from src.causal.model import CausalModel, solve
from src.causal.signature import Signature
from src.logic.ast import Formula, Not
from src.logic.transform import validate_formula
from src.tools.model_checker import ModelChecker, evaluate
from src.tools.model_projector import lift_model
from src.tools.rec_sat_solver import SatWitness, Verdict, relevant_pairs, sat_rec
from src.tools.signature_reducer import Reduction, reduce_finite1, reduce_finite1a

logger = logging.getLogger(__name__)

REDUCTIONS = ("auto", "finite1", "none")
CACHE_LIMIT = 1 << 16  # model spaces up to this size are kept in memory between queries
CHUNK = 256


@dataclass(frozen=True)
class ValidityResult:
    valid: bool
    countermodel: Optional[CausalModel] = None


@lru_cache(maxsize=8)
def _cached_models(sig: Signature, model_class: ModelClass, budget: int) -> Tuple[CausalModel, ...]:
    return tuple(enumerate_models(sig, model_class, budget))


def class_models(sig: Signature, model_class: ModelClass, budget: int, progress: bool = False) -> Iterator[CausalModel]:
    """Models of the class over sig; small spaces are enumerated once and cached."""
    if count_models(sig) <= CACHE_LIMIT:
        return iter(_cached_models(sig, model_class, budget))
    return enumerate_models(sig, model_class, budget, progress=progress)


def _choose_reduction(f: Formula, sig: Signature, model_class: ModelClass, reduction: str, fallback: bool) -> Optional[Reduction]:
    """None means: enumerate over sig itself."""
    if reduction not in REDUCTIONS:
        raise ValueError(f"reduction must be one of {REDUCTIONS}")
    if reduction == "none":
        return None
    if reduction == "finite1" or model_class is not ModelClass.ALL:
        chosen = reduce_finite1(f, sig)
    else:
        chosen = reduce_finite1a(f, sig)
    if fallback and count_models(chosen.reduced) > count_models(sig):
        logger.info("📊 Original signature has the smaller model space; enumerating over it")
        return None
    return chosen


def _first_satisfying(models: Iterator[CausalModel], f: Formula, budget: int, parallel: int) -> Optional[CausalModel]:
    if parallel <= 1:
        for model in models:
            if ModelChecker(model, budget).evaluate(f, validate=False):
                return model
        return None
    while True:
        batch = list(islice(models, CHUNK * parallel))
        if not batch:
            return None
        verdicts = pqdm(
            batch,
            lambda m: ModelChecker(m, budget).evaluate(f, validate=False),
            n_jobs=parallel,
            exception_behaviour="immediate",
            disable=True,
        )
        for model, holds in zip(batch, verdicts):
            if holds:
                return model


def _witness(model: CausalModel, f: Formula, sig: Signature, model_class: ModelClass, budget: int) -> SatWitness:
    if not evaluate(model, f, budget) or not in_class(model, model_class, budget):
        raise RuntimeError(f"{model_class.value} witness does not verify")
    order = is_recursive(model) if model_class is ModelClass.REC else None
    pair_solutions = {}
    if model_class is not ModelClass.ALL:
        pair_solutions = {
            pair: solve(model, pair.iv, pair.u, budget).solutions[0] for pair in relevant_pairs(f, sig)
        }
    return SatWitness(Verdict.SAT, model, order, pair_solutions)


def sat_enum(
    f: Formula,
    sig: Signature,
    model_class: Union[ModelClass, str] = ModelClass.ALL,
    budget: Optional[int] = None,
    reduction: str = "auto",
    fallback_to_original: bool = False,
    parallel: Optional[int] = None,
    progress: bool = False,
) -> SatWitness:
    """Decide f in the class by enumerating the models of a reduced signature.

    `reduction` selects the signature: "auto" (S_φ for REC/UNIQ, S_φ⁺ for
    ALL), "finite1" (S_φ for every class) or "none" (sig itself). A SAT
    witness is lifted back to sig and re-verified there.

    Raises:
        BudgetExceeded: when the chosen model space exceeds the budget
    """
    model_class = ModelClass.parse(model_class) if isinstance(model_class, str) else model_class
    budget = config.DEFAULT_BUDGET if budget is None else budget
    parallel = config.DEFAULT_PARALLEL if parallel is None else parallel
    validate_formula(f, sig)

    chosen = _choose_reduction(f, sig, model_class, reduction, fallback_to_original)
    target_sig, target_f = (sig, f) if chosen is None else (chosen.reduced, chosen.formula)
    logger.info(f"🔍 Enumerating {model_class.value} models over {len(target_sig.endogenous)} variable(s)")

    found = _first_satisfying(class_models(target_sig, model_class, budget, progress), target_f, budget, parallel)
    if found is None:
        return SatWitness(Verdict.UNSAT)
    lifted = found if chosen is None else lift_model(found, chosen)
    return _witness(lifted, f, sig, model_class, budget)


def sat(
    f: Formula,
    sig: Signature,
    model_class: Union[ModelClass, str] = ModelClass.ALL,
    budget: Optional[int] = None,
    **options,
) -> SatWitness:
    """REC goes to the backtracking search, UNIQ and ALL to enumeration."""
    model_class = ModelClass.parse(model_class) if isinstance(model_class, str) else model_class
    if model_class is ModelClass.REC:
        return sat_rec(f, sig, budget)
    return sat_enum(f, sig, model_class, budget, **options)


def valid(
    f: Formula,
    sig: Signature,
    model_class: Union[ModelClass, str] = ModelClass.ALL,
    budget: Optional[int] = None,
    **options,
) -> ValidityResult:
    """f is valid iff ¬f is unsatisfiable; a satisfying model of ¬f is the countermodel."""
    witness = sat(Not(f), sig, model_class, budget, **options)
    if witness.satisfiable:
        return ValidityResult(False, witness.model)
    return ValidityResult(True)


def verdicts_by_class(f: Formula, sig: Signature, budget: Optional[int] = None) -> List[Tuple[ModelClass, bool]]:
    """Satisfiability in REC, UNIQ and ALL, in that order."""
    return [(cls, sat(f, sig, cls, budget).satisfiable) for cls in ModelClass]
