"""
tools/rec_sat_solver.py

Satisfiability in the recursive models over a signature.

In a recursive model every submodel has exactly one solution, so a formula
is decided by guessing one solution vector per relevant (intervention,
context) pair plus a recursion order ≺. The guesses are realizable iff no
two same-context vectors differ at a non-intervened X while agreeing on
every Y ≺ X.

Only the entries some atom reads are guessed by backtracking; the rest of
each vector and the order are filled in afterwards. An accepted branch is
turned into a concrete recursive model and re-verified before it is
returned.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from src import config
from src.causal.classes import is_recursive
from src.causal.errors import BudgetExceeded
from src.causal.model import CausalModel, EndoAssignment, solve
from src.causal.signature import Context, Intervention, Signature
from src.logic.ast import And, Atom, Basic, FalseAt, Formula, Iff, Implies, Not, Or, TrueAt, walk
from src.logic.transform import validate_formula
from src.tools.model_checker import evaluate
from src.tools.model_projector import lift_model
from src.tools.signature_reducer import reduce_finite1

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass(frozen=True)
class RelevantPair:
    iv: Intervention
    u: Context

    def __str__(self) -> str:
        return f"[{self.iv}]{self.u}"


@dataclass(frozen=True)
class SatWitness:
    verdict: Verdict
    model: Optional[CausalModel] = None
    order: Optional[Tuple[str, ...]] = None
    pair_solutions: Dict[RelevantPair, EndoAssignment] = field(default_factory=dict)

    @property
    def satisfiable(self) -> bool:
        return self.verdict is Verdict.SAT


def _canonical(iv: Intervention, sig: Optional[Signature]) -> Intervention:
    if sig is not None:
        return iv.canonical(sig)
    return Intervention(tuple(sorted(iv.settings)))


def relevant_pairs(f: Formula, sig: Optional[Signature] = None) -> Tuple[RelevantPair, ...]:
    """(iv, u) for every box/diamond [iv]ψ and context u occurring in ψ.

    Interventions are put in canonical order (declaration order when a
    signature is given, names otherwise); pairs are deduplicated and kept in
    order of first occurrence.
    """
    seen: Dict[RelevantPair, None] = {}
    for node in walk(f):
        if isinstance(node, Basic):
            iv = _canonical(node.iv, sig)
            for inner in walk(node.inner):
                if isinstance(inner, (Atom, TrueAt, FalseAt)):
                    seen.setdefault(RelevantPair(iv, inner.context), None)
    return tuple(seen)


# ================== COMPILED FORMULA ==================
# nodes: ("const", bool) | ("atom", slot, code) | ("not", n) | ("and", ns) | ("or", ns) | ("iff", a, b)
# a slot is (pair index, endogenous index)


class _Compiler:
    def __init__(self, sig: Signature, pairs: Sequence[RelevantPair]):
        self.sig = sig
        self.index = {p: i for i, p in enumerate(pairs)}

    def outer(self, f: Formula):
        if isinstance(f, Basic):
            return self.inner(f.inner, _canonical(f.iv, self.sig))
        return self.connective(f, self.outer)

    def inner(self, f: Formula, iv: Intervention):
        if isinstance(f, Atom):
            variable = self.sig.variable(f.variable)
            fixed = iv.as_dict().get(f.variable)
            if fixed is not None:
                return ("const", fixed == f.value)
            slot = (self.index[RelevantPair(iv, f.context)], self.sig.endo_index(f.variable))
            return ("atom", slot, variable.code(f.value))
        if isinstance(f, TrueAt):
            return ("const", True)
        if isinstance(f, FalseAt):
            return ("const", False)
        return self.connective(f, lambda g: self.inner(g, iv))

    @staticmethod
    def connective(f: Formula, recurse):
        if isinstance(f, Not):
            return ("not", recurse(f.operand))
        if isinstance(f, And):
            return ("and", tuple(recurse(op) for op in f.operands))
        if isinstance(f, Or):
            return ("or", tuple(recurse(op) for op in f.operands))
        if isinstance(f, Implies):
            return ("or", (("not", recurse(f.left)), recurse(f.right)))
        if isinstance(f, Iff):
            return ("iff", recurse(f.left), recurse(f.right))
        raise TypeError(f"unexpected formula node {f!r}")


def _kleene(node, values: Dict[Tuple[int, int], int]) -> Optional[bool]:
    """Three-valued evaluation; None when the partial guess leaves it open."""
    kind = node[0]
    if kind == "const":
        return node[1]
    if kind == "atom":
        value = values.get(node[1])
        return None if value is None else value == node[2]
    if kind == "not":
        inner = _kleene(node[1], values)
        return None if inner is None else not inner
    if kind == "iff":
        left, right = _kleene(node[1], values), _kleene(node[2], values)
        return None if left is None or right is None else left == right
    results = [_kleene(child, values) for child in node[1]]
    if kind == "and":
        if False in results:
            return False
        return None if None in results else True
    if True in results:
        return True
    return None if None in results else False


# ================== SEARCH ==================
class RecSatSolver:
    """Backtracking search for one formula over its reduced signature."""

    def __init__(self, f: Formula, sig: Signature, budget: Optional[int] = None):
        validate_formula(f, sig)
        self.original_formula = f
        self.reduction = reduce_finite1(f, sig)
        self.formula = self.reduction.formula
        self.sig = self.reduction.reduced
        self.budget = config.DEFAULT_BUDGET if budget is None else budget
        self.nodes = 0

        self.pairs = relevant_pairs(self.formula, self.sig)
        self.compiled = _Compiler(self.sig, self.pairs).outer(self.formula)
        atom_pairs = {slot[0] for slot in self._atom_slots(self.compiled)}
        self.searched = [i for i in range(len(self.pairs)) if i in atom_pairs]
        self.fixed: List[Dict[int, int]] = [
            {self.sig.endo_index(n): self.sig.variable(n).code(v) for n, v in p.iv.settings} for p in self.pairs
        ]
        self.slots = sorted(set(self._atom_slots(self.compiled)))

    @classmethod
    def _atom_slots(cls, node):
        if node[0] == "atom":
            yield node[1]
        elif node[0] == "not":
            yield from cls._atom_slots(node[1])
        elif node[0] == "iff":
            yield from cls._atom_slots(node[1])
            yield from cls._atom_slots(node[2])
        elif node[0] in ("and", "or"):
            for child in node[1]:
                yield from cls._atom_slots(child)

    # ---------- realizability ----------
    def _value(self, values, p: int, x: int) -> Optional[int]:
        fixed = self.fixed[p].get(x)
        return fixed if fixed is not None else values.get((p, x))

    def _greedy_order(self, values) -> Optional[List[int]]:
        """A recursion order compatible with the guesses, or None.

        Unknown values never cause a conflict, so on a partial guess None
        means that no completion is realizable. Eligibility only grows as
        variables are placed, which makes the first-eligible choice safe.
        """
        remaining = list(range(len(self.sig.endogenous)))
        order: List[int] = []
        while remaining:
            x = next((x for x in remaining if self._eligible(values, x, order)), None)
            if x is None:
                return None
            order.append(x)
            remaining.remove(x)
        return order

    def _agree(self, values, a: int, b: int, placed: Sequence[int]) -> bool:
        for y in placed:
            va, vb = self._value(values, a, y), self._value(values, b, y)
            if va is None or va != vb:
                return False
        return True

    def _eligible(self, values, x: int, placed: Sequence[int]) -> bool:
        """No two same-context guesses agree on `placed` but differ at x."""
        free = [p for p in self.searched if x not in self.fixed[p]]
        for i, a in enumerate(free):
            va = self._value(values, a, x)
            if va is None:
                continue
            for b in free[i + 1:]:
                vb = self._value(values, b, x)
                if vb is None or vb == va or self.pairs[a].u != self.pairs[b].u:
                    continue
                if self._agree(values, a, b, placed):
                    return False
        return True

    # ---------- backtracking ----------
    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded("REC search nodes", self.nodes, self.budget)

    def solve(self) -> SatWitness:
        values: Dict[Tuple[int, int], int] = {}
        found = self._search(values, 0)
        if found is None:
            logger.info(f"📊 REC search: UNSAT after {self.nodes} node(s)")
            return SatWitness(Verdict.UNSAT)
        logger.info(f"📊 REC search: SAT after {self.nodes} node(s)")
        return self._materialize(*found)

    def _search(self, values, depth: int):
        """Guess the values the formula reads, one slot at a time."""
        self._tick()
        truth = _kleene(self.compiled, values)
        if truth is False:
            return None
        if self._greedy_order(values) is None:
            return None
        if depth == len(self.slots):
            return self._realize(values) if truth else None
        slot = self.slots[depth]
        for code in range(self.sig.endogenous[slot[1]].size):
            values[slot] = code
            found = self._search(values, depth + 1)
            if found is not None:
                return found
        del values[slot]
        return None

    # ---------- realization ----------
    def _realize(self, values):
        """Complete the guesses to full solution vectors plus an order ≺.

        Variables are placed one at a time. Pairs of one context that agree
        on everything placed so far form a group, and a group shares one
        mechanism row for the next variable. A placement that only refines
        the groups is taken without alternatives; otherwise every order and
        group value is tried, with failed states remembered.
        """
        groups: Dict[Context, List[int]] = {}
        for p in self.searched:
            groups.setdefault(self.pairs[p].u, []).append(p)
        start = tuple(tuple(g) for g in groups.values())
        return self._place(values, [], {}, start, set())

    def _placements(self, values, x: int, groups) -> Optional[Tuple[bool, List[List[Optional[int]]]]]:
        """Candidate shared values of x per group, or None on a conflict.

        The flag is False when some choice may merge pairs that a later
        placement could have kept apart.
        """
        size = self.sig.endogenous[x].size
        safe = True
        per_group: List[List[Optional[int]]] = []
        for group in groups:
            free = [p for p in group if x not in self.fixed[p]]
            if not free:
                per_group.append([None])
                continue
            known = {values[(p, x)] for p in free if (p, x) in values}
            if len(known) > 1:
                return None
            used = {self.fixed[p][x] for p in group if x in self.fixed[p]}
            unknown = any((p, x) not in values for p in free)
            if known:
                shared = next(iter(known))
                if unknown and shared in used:
                    safe = False
                per_group.append([shared])
            elif not used:
                per_group.append([0])
            else:
                spare = [c for c in range(size) if c not in used]
                if spare:
                    per_group.append([spare[0]])
                else:
                    safe = False
                    per_group.append(list(range(size)))
        return safe, per_group

    def _place(self, values, order: List[int], assignment, groups, failed):
        self._tick()
        remaining = [x for x in range(len(self.sig.endogenous)) if x not in order]
        if not remaining:
            return assignment, order
        key = (frozenset(order), frozenset(frozenset(g) for g in groups))
        if key in failed:
            return None

        options = []
        for x in remaining:
            placement = self._placements(values, x, groups)
            if placement is None:
                continue
            safe, per_group = placement
            if safe:
                options = [(x, per_group)]
                break
            options.append((x, per_group))

        for x, per_group in options:
            for shared in product(*per_group):
                extended = dict(assignment)
                split = []
                for group, c in zip(groups, shared):
                    buckets: Dict[int, List[int]] = {}
                    for p in group:
                        value = self.fixed[p].get(x, c)
                        extended[(p, x)] = value
                        buckets.setdefault(value, []).append(p)
                    split.extend(tuple(b) for b in buckets.values())
                found = self._place(values, order + [x], extended, tuple(split), failed)
                if found is not None:
                    return found
        failed.add(key)
        return None

    # ---------- witness ----------
    def _materialize(self, assignment, order: List[int]) -> SatWitness:
        sig = self.sig
        names = sig.endo_names
        position = {x: i for i, x in enumerate(order)}
        tables: Dict[int, Dict[Tuple, int]] = {x: {} for x in range(len(names))}
        for p in self.searched:
            u = self.pairs[p].u
            for x in range(len(names)):
                if x in self.fixed[p]:
                    continue
                pre = tuple(assignment[(p, y)] for y in order[: position[x]])
                tables[x][(u, pre)] = assignment[(p, x)]

        def mechanism(x: int):
            table = tables[x]
            default = next(iter(table.values()), 0)
            pre_names = [names[y] for y in order[: position[x]]]

            def compute(state: Dict[str, str]) -> str:
                u = Context(tuple(state[n] for n in sig.exo_names))
                pre = tuple(sig.variable(n).code(state[n]) for n in pre_names)
                return sig.endogenous[x].values[table.get((u, pre), default)]

            return compute

        reduced_model = CausalModel.from_functions(sig, {names[x]: mechanism(x) for x in range(len(names))})
        if not evaluate(reduced_model, self.formula, self.budget) or is_recursive(reduced_model) is None:
            raise RuntimeError("REC witness over the reduced signature does not verify")

        model = lift_model(reduced_model, self.reduction)
        final_order = is_recursive(model)
        if final_order is None or not evaluate(model, self.original_formula, self.budget):
            raise RuntimeError("lifted REC witness does not verify")

        original = self.reduction.original
        pair_solutions = {
            pair: solve(model, pair.iv, pair.u, self.budget).solutions[0]
            for pair in relevant_pairs(self.original_formula, original)
        }
        return SatWitness(Verdict.SAT, model, final_order, pair_solutions)


def sat_rec(f: Formula, sig: Signature, budget: Optional[int] = None) -> SatWitness:
    """Decide satisfiability of f in T_rec(sig); SAT comes with a verified witness."""
    return RecSatSolver(f, sig, budget).solve()
