"""
causal/classes.py

Membership in the three model classes (recursive, unique-solution, all)
and exhaustive enumeration of the models over a signature.
"""

import logging
from enum import Enum
from itertools import combinations, product
from typing import Iterator, Optional, Tuple

import networkx as nx
from tqdm import tqdm

from src import config
from src.causal.errors import BudgetExceeded
from src.causal.model import CausalModel
from src.causal.signature import Signature

logger = logging.getLogger(__name__)


class ModelClass(str, Enum):
    REC = "REC"
    UNIQ = "UNIQ"
    ALL = "ALL"

    @classmethod
    def parse(cls, text: str) -> "ModelClass":
        return cls(text.strip().upper())


def sensitive_inputs(model: CausalModel, name: str) -> Tuple[str, ...]:
    """Inputs of F_X whose value alone can change the output (extensional)."""
    sig = model.signature
    index = sig.endo_index(name)
    table = model.codes[index]
    strides = model._strides[index]
    found = []
    for variable, stride in zip(sig.exogenous + sig.endogenous, strides):
        if stride == 0:
            continue
        for row, out in enumerate(table):
            digit = (row // stride) % variable.size
            if digit and table[row - digit * stride] != out:
                found.append(variable.name)
                break
    return tuple(found)


def dependency_graph(model: CausalModel) -> nx.DiGraph:
    """Edge Y→X iff F_X gives different outputs on inputs differing only at Y."""
    sig = model.signature
    graph = nx.DiGraph()
    graph.add_nodes_from(sig.endo_names)
    for name in sig.endo_names:
        for source in sensitive_inputs(model, name):
            if sig.is_endogenous(source):
                graph.add_edge(source, name)
    return graph


def is_recursive(model: CausalModel) -> Optional[Tuple[str, ...]]:
    """A recursion order ≺ over V, or None when the dependency graph is cyclic.

    Ties are broken by declaration order.
    """
    graph = dependency_graph(model)
    if not nx.is_directed_acyclic_graph(graph):
        return None
    sig = model.signature
    return tuple(nx.lexicographical_topological_sort(graph, key=sig.endo_index))


def unique_solution_checks(sig: Signature) -> int:
    """Number of (Y, y, u) triples an exhaustive uniqueness check visits."""
    count = sig.num_contexts
    for variable in sig.endogenous:
        count *= 1 + variable.size
    return count


def is_unique_solutions(model: CausalModel, budget: Optional[int] = None) -> bool:
    """True iff every submodel under every context has exactly one solution."""
    budget = config.DEFAULT_BUDGET if budget is None else budget
    sig = model.signature
    checks = unique_solution_checks(sig)
    if checks > budget:
        raise BudgetExceeded("uniqueness checks", checks, budget)

    contexts = [sig.encode_context(u) for u in sig.contexts()]
    indices = range(len(sig.endogenous))
    for size in range(len(sig.endogenous) + 1):
        for subset in combinations(indices, size):
            for values in product(*(range(sig.endogenous[i].size) for i in subset)):
                iv = tuple(zip(subset, values))
                for ctx in contexts:
                    if len(model.solve_codes(iv, ctx, budget)) != 1:
                        return False
    return True


def in_class(model: CausalModel, model_class: ModelClass, budget: Optional[int] = None) -> bool:
    if model_class is ModelClass.REC:
        return is_recursive(model) is not None
    if model_class is ModelClass.UNIQ:
        return is_unique_solutions(model, budget)
    return True


def count_models(sig: Signature) -> int:
    """Size of the full model space: ∏_X |R(X)|^(rows of F_X)."""
    total = 1
    rows_all = sig.num_contexts
    for variable in sig.endogenous:
        rows_all *= variable.size
    for variable in sig.endogenous:
        total *= variable.size ** (rows_all // variable.size)
    return total


def enumerate_models(
    sig: Signature,
    class_filter: ModelClass = ModelClass.ALL,
    budget: Optional[int] = None,
    progress: bool = False,
) -> Iterator[CausalModel]:
    """Every model over sig in the class, lexicographic over table entries.

    Raises:
        BudgetExceeded: before yielding anything, when the unfiltered model
            count exceeds the budget
    """
    budget = config.DEFAULT_BUDGET if budget is None else budget
    total = count_models(sig)
    if total > budget:
        raise BudgetExceeded(f"model space of {len(sig.endogenous)}-variable signature", total, budget)
    logger.info(f"📊 Enumerating {total} models ({class_filter.value})")

    rows_all = sig.num_contexts
    for variable in sig.endogenous:
        rows_all *= variable.size
    per_mechanism = [
        list(product(range(v.size), repeat=rows_all // v.size)) for v in sig.endogenous
    ]
    for tables in tqdm(product(*per_mechanism), total=total, disable=not progress, desc="models"):
        model = CausalModel.from_codes(sig, tables)
        if in_class(model, class_filter, budget):
            yield model
