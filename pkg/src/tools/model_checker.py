"""
tools/model_checker.py

The satisfaction relation T ⊨ φ and the "affects" relation Y ⇝ Z
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Tuple

from src import config
from src.causal.errors import BudgetExceeded
from src.causal.model import CausalModel
from src.causal.signature import Context, Intervention, Signature
from src.logic.ast import (
    And,
    Atom,
    Box,
    Diamond,
    FalseAt,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    TrueAt,
    contexts_of,
    disj,
)
from src.logic.transform import validate_formula

logger = logging.getLogger(__name__)


class ModelChecker:
    """Evaluate formulas against one model, sharing its solution cache.

    Box(iv, φ) holds iff φ is true under every global choice of one
    solution per context mentioned in φ; it holds vacuously when some
    such context has no solution. Diamond is the dual.
    """

    def __init__(self, model: CausalModel, budget: Optional[int] = None):
        self.model = model
        self.sig = model.signature
        self.budget = config.DEFAULT_BUDGET if budget is None else budget

    def evaluate(self, f: Formula, validate: bool = True) -> bool:
        if validate:
            validate_formula(f, self.sig)
        return self._outer(f)

    def solutions(self, iv: Intervention, u: Context) -> Tuple[Tuple[int, ...], ...]:
        return self.model.solve_codes(self.sig.encode_intervention(iv), self.sig.encode_context(u), self.budget)

    # ---------- outer level ----------
    def _outer(self, f: Formula) -> bool:
        if isinstance(f, Box):
            return self._basic(f.iv, f.inner, universal=True)
        if isinstance(f, Diamond):
            return self._basic(f.iv, f.inner, universal=False)
        if isinstance(f, Not):
            return not self._outer(f.operand)
        if isinstance(f, And):
            return all(self._outer(op) for op in f.operands)
        if isinstance(f, Or):
            return any(self._outer(op) for op in f.operands)
        if isinstance(f, Implies):
            return (not self._outer(f.left)) or self._outer(f.right)
        if isinstance(f, Iff):
            return self._outer(f.left) == self._outer(f.right)
        raise TypeError(f"not an outer formula: {f!r}")

    def _basic(self, iv: Intervention, inner: Formula, universal: bool) -> bool:
        contexts = contexts_of(inner)
        per_context = [self.solutions(iv, u) for u in contexts]
        if any(not rows for rows in per_context):
            return universal
        for choice in product(*per_context):
            holds = self._inner(inner, dict(zip(contexts, choice)))
            if universal and not holds:
                return False
            if not universal and holds:
                return True
        return universal

    # ---------- inner level ----------
    def _inner(self, f: Formula, chosen: Dict[Context, Tuple[int, ...]]) -> bool:
        if isinstance(f, Atom):
            variable = self.sig.variable(f.variable)
            return chosen[f.context][self.sig.endo_index(f.variable)] == variable.code(f.value)
        if isinstance(f, TrueAt):
            return True
        if isinstance(f, FalseAt):
            return False
        if isinstance(f, Not):
            return not self._inner(f.operand, chosen)
        if isinstance(f, And):
            return all(self._inner(op, chosen) for op in f.operands)
        if isinstance(f, Or):
            return any(self._inner(op, chosen) for op in f.operands)
        if isinstance(f, Implies):
            return (not self._inner(f.left, chosen)) or self._inner(f.right, chosen)
        if isinstance(f, Iff):
            return self._inner(f.left, chosen) == self._inner(f.right, chosen)
        raise TypeError(f"not an inner formula: {f!r}")


def evaluate(model: CausalModel, f: Formula, budget: Optional[int] = None) -> bool:
    """T ⊨ f."""
    return ModelChecker(model, budget).evaluate(f)


# ================== AFFECTS ==================
@dataclass(frozen=True)
class AffectsWitness:
    """Setting X⃗←x⃗ and context u where additionally setting Y←y moves Z."""

    setting: Intervention
    cause_value: str
    context: Context
    before: str  # Z under X⃗←x⃗
    after: str  # Z under X⃗←x⃗, Y←y

    def describe(self, cause: str, effect: str) -> str:
        return (
            f"{cause} affects {effect}: [{self.setting}] {cause}<-{self.cause_value} "
            f"u={self.context} : {effect} {self.before} -> {self.after}"
        )


def _settings(sig: Signature, y: str, z: str) -> Iterator[Intervention]:
    """X⃗←x⃗ over V − {Y, Z}: subsets by size, values lexicographically."""
    others = [n for n in sig.endo_names if n not in (y, z)]
    for size in range(len(others) + 1):
        for subset in combinations(others, size):
            yield from sig.interventions(subset)


def affects_disjuncts(sig: Signature, y: str, z: str) -> int:
    """Number of disjuncts in the expansion of Y ⇝ Z."""
    others = [v for v in sig.endogenous if v.name not in (y, z)]
    settings = 1
    for variable in others:
        settings *= 1 + variable.size
    z_size = sig.variable(z).size
    return settings * sig.variable(y).size * sig.num_contexts * z_size * (z_size - 1)


def affects(
    model: CausalModel,
    y: str,
    z: str,
    require_solutions: bool = True,
    budget: Optional[int] = None,
) -> Optional[AffectsWitness]:
    """First witness that Y affects Z, or None.

    With require_solutions, both submodels must have solutions; without,
    the boxes of the defining disjunction may hold vacuously.
    """
    if y == z:
        raise ValueError("affects needs two distinct variables")
    checker = ModelChecker(model, budget)
    sig = model.signature
    z_index = sig.endo_index(z)
    z_values = sig.range_of(z)

    def box_values(rows) -> set:
        return {z_values[r[z_index]] for r in rows}

    for setting in _settings(sig, y, z):
        for y_value in sig.range_of(y):
            changed = setting.extend(y, y_value)
            for u in sig.contexts():
                after_rows = checker.solutions(changed, u)
                before_rows = checker.solutions(setting, u)
                if require_solutions and not (after_rows and before_rows):
                    continue
                after_values, before_values = box_values(after_rows), box_values(before_rows)
                for after in z_values:
                    if after_values - {after}:
                        continue
                    for before in z_values:
                        if before != after and not (before_values - {before}):
                            return AffectsWitness(setting, y_value, u, before, after)
    return None


def expand_affects(
    sig: Signature,
    y: str,
    z: str,
    guarded: bool = True,
    budget: Optional[int] = None,
) -> Formula:
    """Y ⇝ Z as an explicit disjunction.

    Guarded disjuncts also assert that both submodels have a solution,
    which makes the formula agree with affects(require_solutions=True)
    on every model; unguarded ones are plain L_uniq boxes.
    """
    budget = config.DEFAULT_BUDGET if budget is None else budget
    count = affects_disjuncts(sig, y, z)
    if count > budget:
        raise BudgetExceeded(f"disjuncts of {y} ⇝ {z}", count, budget)

    disjuncts: List[Formula] = []
    z_values = sig.range_of(z)
    for setting in _settings(sig, y, z):
        for y_value in sig.range_of(y):
            changed = setting.extend(y, y_value)
            for u in sig.contexts():
                for after in z_values:
                    for before in z_values:
                        if before == after:
                            continue
                        boxes = [Box(changed, Atom(z, u, after)), Box(setting, Atom(z, u, before))]
                        if guarded:
                            boxes = [Diamond(changed, TrueAt(u)), boxes[0], Diamond(setting, TrueAt(u)), boxes[1]]
                        disjuncts.append(And(tuple(boxes)))
    logger.debug(f"🔍 {y} ⇝ {z}: {len(disjuncts)} disjuncts")
    return disj(*disjuncts)


# ================== LEMMA CHECKS ==================
def box_lemmas(iv: Intervention, phi: Formula, psi: Formula) -> Dict[str, Formula]:
    """Distribution of a box over ∨ and ∧ and its commutation with ¬."""
    return {
        "or": Iff(Box(iv, Or((phi, psi))), Or((Box(iv, phi), Box(iv, psi)))),
        "and": Iff(Box(iv, And((phi, psi))), And((Box(iv, phi), Box(iv, psi)))),
        "not": Iff(Box(iv, Not(phi)), Not(Box(iv, phi))),
    }
