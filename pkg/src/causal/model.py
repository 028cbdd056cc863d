"""
causal/model.py

Causal models over a signature and the solver for intervention submodels.

A mechanism table is stored as the tuple of its outputs over the Cartesian
product of its inputs (exogenous first, then the other endogenous
variables, both in declaration order; itertools.product order).
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from src import config
from src.causal.errors import BudgetExceeded, ValidationError
from src.causal.signature import Context, Intervention, Signature

logger = logging.getLogger(__name__)

Codes = Tuple[int, ...]


def mechanism_inputs(sig: Signature, variable: str) -> Tuple[str, ...]:
    """Input slots of F_X: U ∪ (V − {X}) in declaration order."""
    return sig.exo_names + tuple(n for n in sig.endo_names if n != variable)


@dataclass(frozen=True)
class MechanismTable:
    """F_X as a total table; outputs[i] belongs to the i-th input tuple."""

    variable: str
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]

    def rows(self, sig: Signature) -> Iterator[Tuple[Tuple[str, ...], str]]:
        for key, out in zip(product(*(sig.range_of(n) for n in self.inputs)), self.outputs):
            yield key, out

    def table(self, sig: Signature) -> Dict[Tuple[str, ...], str]:
        return dict(self.rows(sig))


@dataclass(frozen=True)
class EndoAssignment:
    """Total assignment over V, aligned with the endogenous declaration order."""

    names: Tuple[str, ...]
    values: Tuple[str, ...]

    def __getitem__(self, name: str) -> str:
        return self.values[self.names.index(name)]

    def as_dict(self) -> Dict[str, str]:
        return dict(zip(self.names, self.values))

    def restrict(self, names: Sequence[str]) -> Tuple[Tuple[str, str], ...]:
        return tuple((n, self[n]) for n in names)

    def __str__(self) -> str:
        return " ".join(f"{n}={v}" for n, v in zip(self.names, self.values))


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of one submodel, lexicographic in declaration/range order."""

    solutions: Tuple[EndoAssignment, ...]

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self) -> Iterator[EndoAssignment]:
        return iter(self.solutions)

    def values_of(self, name: str) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(s[name] for s in self.solutions))

    def __str__(self) -> str:
        if not self.solutions:
            return "(no solutions)"
        return "\n".join(str(s) for s in self.solutions)


@dataclass(frozen=True)
class CausalModel:
    signature: Signature
    mechanisms: Tuple[MechanismTable, ...]
    _codes: Tuple[Codes, ...] = field(init=False, repr=False, compare=False, hash=False)
    _strides: Tuple[Codes, ...] = field(init=False, repr=False, compare=False, hash=False)
    _cache: Dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        sig = self.signature
        mechanisms = tuple(self.mechanisms)
        object.__setattr__(self, "mechanisms", mechanisms)
        if tuple(m.variable for m in mechanisms) != sig.endo_names:
            raise ValidationError("exactly one mechanism per endogenous variable, in declaration order")

        radices = [v.size for v in sig.exogenous + sig.endogenous]
        offset = len(sig.exogenous)
        codes, strides = [], []
        for index, mech in enumerate(mechanisms):
            if mech.inputs != mechanism_inputs(sig, mech.variable):
                raise ValidationError(f"mechanism {mech.variable} has inputs {mech.inputs}, expected U ∪ V−{{X}}")
            expected = 1
            for name in mech.inputs:
                expected *= sig.variable(name).size
            if len(mech.outputs) != expected:
                raise ValidationError(f"mechanism {mech.variable} has {len(mech.outputs)} rows, expected {expected}")
            values = sig.range_of(mech.variable)
            try:
                codes.append(tuple(values.index(out) for out in mech.outputs))
            except ValueError:
                bad = next(out for out in mech.outputs if out not in values)
                raise ValidationError(f"mechanism {mech.variable} outputs {bad!r}, outside its range") from None

            # stride of every state slot; the variable's own slot gets 0
            slot_strides = [0] * len(radices)
            stride = 1
            for slot in reversed(range(len(radices))):
                if slot == offset + index:
                    continue
                slot_strides[slot] = stride
                stride *= radices[slot]
            strides.append(tuple(slot_strides))

        object.__setattr__(self, "_codes", tuple(codes))
        object.__setattr__(self, "_strides", tuple(strides))
        object.__setattr__(self, "_cache", {})

    # ---------- construction helpers ----------
    @classmethod
    def from_codes(cls, sig: Signature, codes: Sequence[Codes]) -> "CausalModel":
        mechanisms = []
        for variable, table in zip(sig.endogenous, codes):
            outputs = tuple(variable.values[c] for c in table)
            mechanisms.append(MechanismTable(variable.name, mechanism_inputs(sig, variable.name), outputs))
        return cls(sig, tuple(mechanisms))

    @classmethod
    def from_functions(cls, sig: Signature, functions: Mapping[str, Callable[[Dict[str, str]], str]]) -> "CausalModel":
        """Tabulate one Python function per endogenous variable.

        Each function receives a dict of every input value by name.
        """
        mechanisms = []
        for name in sig.endo_names:
            inputs = mechanism_inputs(sig, name)
            outputs = tuple(
                str(functions[name](dict(zip(inputs, key))))
                for key in product(*(sig.range_of(n) for n in inputs))
            )
            mechanisms.append(MechanismTable(name, inputs, outputs))
        return cls(sig, tuple(mechanisms))

    def mechanism(self, name: str) -> MechanismTable:
        return self.mechanisms[self.signature.endo_index(name)]

    @property
    def codes(self) -> Tuple[Codes, ...]:
        return self._codes

    def apply(self, name: str, state: Mapping[str, str]) -> str:
        """F_X applied to a (partial or total) assignment of its inputs."""
        sig = self.signature
        index = sig.endo_index(name)
        full = [
            sig.variable(n).code(state[n]) if n != name else 0 for n in sig.exo_names + sig.endo_names
        ]
        return sig.endogenous[index].values[self._codes[index][self._row(index, full)]]

    def _row(self, index: int, state: Sequence[int]) -> int:
        return sum(s * x for s, x in zip(self._strides[index], state))

    # ---------- solving ----------
    def solve_codes(self, iv: Tuple[Tuple[int, int], ...], ctx: Codes, budget: Optional[int] = None) -> Tuple[Codes, ...]:
        """Brute-force solutions of T_{iv}(ctx), as endogenous code tuples."""
        key = (iv, ctx)
        cached = self._cache.get(key)
        if cached is not None:
            return cached

        sig = self.signature
        offset = len(ctx)
        fixed = dict(iv)
        free = [i for i in range(len(sig.endogenous)) if i not in fixed]
        candidates = 1
        for i in free:
            candidates *= sig.endogenous[i].size
        budget = config.DEFAULT_BUDGET if budget is None else budget
        if candidates > budget:
            raise BudgetExceeded("solve candidates", candidates, budget)

        state = list(ctx) + [0] * len(sig.endogenous)
        for i, value in fixed.items():
            state[offset + i] = value
        checks = [(offset + i, self._codes[i], self._strides[i]) for i in free]
        found: List[Codes] = []
        for combo in product(*(range(sig.endogenous[i].size) for i in free)):
            for i, value in zip(free, combo):
                state[offset + i] = value
            if all(table[sum(s * x for s, x in zip(strides, state))] == state[slot] for slot, table, strides in checks):
                found.append(tuple(state[offset:]))

        result = tuple(found)
        self._cache[key] = result
        return result

    def decode(self, codes: Codes) -> EndoAssignment:
        sig = self.signature
        return EndoAssignment(sig.endo_names, tuple(v.values[c] for v, c in zip(sig.endogenous, codes)))

    def describe(self) -> str:
        from src.causal.model_io import dump_model

        return dump_model(self)


def solve(model: CausalModel, iv: Intervention, u: Context, budget: Optional[int] = None) -> SolutionSet:
    """All total endogenous assignments solving T_{iv}(u)."""
    sig = model.signature
    iv_codes = sig.encode_intervention(iv)
    ctx_codes = sig.encode_context(u)
    rows = model.solve_codes(iv_codes, ctx_codes, budget)
    logger.debug(f"🔍 solve [{iv}] {u}: {len(rows)} solution(s)")
    return SolutionSet(tuple(model.decode(r) for r in rows))


def solve_in_order(model: CausalModel, order: Sequence[str], iv: Intervention, u: Context) -> EndoAssignment:
    """Compute the single solution of a recursive model equation by equation.

    Variables are evaluated along `order`; later slots are read as their
    first value, which F_X ignores when the order is a recursion order.
    """
    sig = model.signature
    iv_codes = dict(sig.encode_intervention(iv))
    state = list(sig.encode_context(u)) + [0] * len(sig.endogenous)
    offset = len(sig.exogenous)
    for name in order:
        index = sig.endo_index(name)
        if index in iv_codes:
            state[offset + index] = iv_codes[index]
        else:
            state[offset + index] = model.codes[index][model._row(index, state)]
    return model.decode(tuple(state[offset:]))
