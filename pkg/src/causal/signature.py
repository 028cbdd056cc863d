"""
causal/signature.py

Signatures, contexts and interventions.

Values are opaque string tokens. Internally every value is also addressed
by its position in the declared range ("code"), which is what the solver
and the enumerators work with.
"""

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from src.causal.errors import (
    DuplicateInterventionTarget,
    InvalidContext,
    InvalidIntervention,
    SignatureError,
)

NAME_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
TOKEN_PATTERN = re.compile(r"[-+]?[A-Za-z0-9_]+\Z")
RESERVED_NAMES = frozenset({"true", "false", "exogenous", "endogenous", "eq"})


def is_token(text: str) -> bool:
    return bool(TOKEN_PATTERN.match(text))


@dataclass(frozen=True)
class Variable:
    """A named variable with its ordered finite range."""

    name: str
    values: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(str(v) for v in self.values))
        if not NAME_PATTERN.match(self.name) or self.name in RESERVED_NAMES:
            raise SignatureError(f"invalid variable name {self.name!r}")
        for value in self.values:
            if not is_token(value):
                raise SignatureError(f"invalid value token {value!r} for {self.name}")
        if len(set(self.values)) != len(self.values):
            raise SignatureError(f"duplicate values in range of {self.name}")
        if len(self.values) < 2:
            raise SignatureError(f"range of {self.name} needs at least 2 values")

    @property
    def size(self) -> int:
        return len(self.values)

    def code(self, value: str) -> int:
        return self.values.index(value)


@dataclass(frozen=True)
class Context:
    """Positional exogenous values, in exogenous declaration order."""

    values: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(str(v) for v in self.values))

    def __str__(self) -> str:
        return "(" + ",".join(self.values) + ")"

    def __len__(self) -> int:
        return len(self.values)


EMPTY_CONTEXT = Context(())


@dataclass(frozen=True)
class Intervention:
    """Ordered settings Y←y over distinct endogenous targets (possibly empty)."""

    settings: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        settings = tuple((str(name), str(value)) for name, value in self.settings)
        object.__setattr__(self, "settings", settings)
        targets = [name for name, _ in settings]
        if len(set(targets)) != len(targets):
            duplicated = sorted({t for t in targets if targets.count(t) > 1})
            raise DuplicateInterventionTarget(f"duplicate intervention target(s): {', '.join(duplicated)}")

    @classmethod
    def of(cls, settings: Union[Mapping[str, str], Iterable[Tuple[str, str]], None] = None) -> "Intervention":
        if settings is None:
            return cls(())
        if isinstance(settings, Mapping):
            return cls(tuple(settings.items()))
        return cls(tuple(settings))

    @property
    def targets(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.settings)

    def as_dict(self) -> Dict[str, str]:
        return dict(self.settings)

    def is_empty(self) -> bool:
        return not self.settings

    def extend(self, name: str, value: str) -> "Intervention":
        return Intervention(self.settings + ((name, value),))

    def canonical(self, sig: "Signature") -> "Intervention":
        """Settings sorted by endogenous declaration order."""
        return Intervention(tuple(sorted(self.settings, key=lambda s: sig.endo_index(s[0]))))

    def __str__(self) -> str:
        return ";".join(f"{name}<-{value}" for name, value in self.settings)


EMPTY_INTERVENTION = Intervention(())


@dataclass(frozen=True)
class Signature:
    """The triple (U, V, R): exogenous and endogenous variables with ranges."""

    exogenous: Tuple[Variable, ...]
    endogenous: Tuple[Variable, ...]
    _lookup: Dict[str, Variable] = field(init=False, repr=False, compare=False, hash=False)
    _endo_index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "exogenous", tuple(self.exogenous))
        object.__setattr__(self, "endogenous", tuple(self.endogenous))
        lookup: Dict[str, Variable] = {}
        for variable in self.exogenous + self.endogenous:
            if variable.name in lookup:
                raise SignatureError(f"duplicate variable name {variable.name!r}")
            lookup[variable.name] = variable
        object.__setattr__(self, "_lookup", lookup)
        object.__setattr__(self, "_endo_index", {v.name: i for i, v in enumerate(self.endogenous)})

    @classmethod
    def of(
        cls,
        exogenous: Union[Mapping[str, Sequence[str]], Sequence[Tuple[str, Sequence[str]]]],
        endogenous: Union[Mapping[str, Sequence[str]], Sequence[Tuple[str, Sequence[str]]]],
    ) -> "Signature":
        """Build a signature from name → range mappings (order preserved)."""

        def variables(ranges):
            items = ranges.items() if isinstance(ranges, Mapping) else ranges
            return tuple(Variable(name, tuple(values)) for name, values in items)

        return cls(variables(exogenous), variables(endogenous))

    # ---------- names and ranges ----------
    @property
    def exo_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.exogenous)

    @property
    def endo_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.endogenous)

    def has_variable(self, name: str) -> bool:
        return name in self._lookup

    def is_endogenous(self, name: str) -> bool:
        return name in self._endo_index

    def variable(self, name: str) -> Variable:
        return self._lookup[name]

    def range_of(self, name: str) -> Tuple[str, ...]:
        return self._lookup[name].values

    def endo_index(self, name: str) -> int:
        return self._endo_index[name]

    # ---------- contexts ----------
    def contexts(self) -> Iterator[Context]:
        """All contexts in lexicographic order of declared ranges."""
        for values in product(*(v.values for v in self.exogenous)):
            yield Context(values)

    @property
    def num_contexts(self) -> int:
        count = 1
        for variable in self.exogenous:
            count *= variable.size
        return count

    def check_context(self, u: Context) -> None:
        if len(u.values) != len(self.exogenous):
            raise InvalidContext(
                f"context {u} has {len(u.values)} value(s), signature has {len(self.exogenous)} exogenous variable(s)"
            )
        for variable, value in zip(self.exogenous, u.values):
            if value not in variable.values:
                raise InvalidContext(f"value {value!r} out of range for exogenous {variable.name}")

    def encode_context(self, u: Context) -> Tuple[int, ...]:
        self.check_context(u)
        return tuple(v.code(x) for v, x in zip(self.exogenous, u.values))

    # ---------- interventions ----------
    def check_intervention(self, iv: Intervention) -> None:
        for name, value in iv.settings:
            if name not in self._endo_index:
                raise InvalidIntervention(f"intervention target {name!r} is not endogenous")
            if value not in self._lookup[name].values:
                raise InvalidIntervention(f"value {value!r} out of range for {name}")

    def encode_intervention(self, iv: Intervention) -> Tuple[Tuple[int, int], ...]:
        """(endogenous index, value code) pairs sorted by declaration order."""
        self.check_intervention(iv)
        return tuple(sorted((self._endo_index[n], self._lookup[n].code(x)) for n, x in iv.settings))

    def interventions(self, names: Sequence[str]) -> Iterator[Intervention]:
        """Every assignment to the given variables, lexicographically."""
        ranges = [self.range_of(n) for n in names]
        for values in product(*ranges):
            yield Intervention(tuple(zip(names, values)))

    def describe(self) -> List[str]:
        """Lines of the signature in the model file format."""
        lines = [f"exogenous {v.name} : {' '.join(v.values)}" for v in self.exogenous]
        lines += [f"endogenous {v.name} : {' '.join(v.values)}" for v in self.endogenous]
        return lines


def sig_size(sig: Signature) -> int:
    """||S||: product of the endogenous range sizes."""
    size = 1
    for variable in sig.endogenous:
        size *= variable.size
    return size
