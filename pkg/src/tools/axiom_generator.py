"""
tools/axiom_generator.py

Ground instances of the axiom schemes C1–C6, Ord and D1–D11 over a finite
signature, plus the named axiom systems built from them.
"""

import logging
import re
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src import config
from src.causal.errors import BudgetExceeded, CausalError
from src.causal.signature import Context, Intervention, Signature
from src.logic.ast import And, Atom, Box, Diamond, Formula, Iff, Implies, Not, Or, TrueAt, conj, disj
from src.tools.model_checker import expand_affects

logger = logging.getLogger(__name__)

SCHEMES = (
    "C1", "C2", "C3", "C4", "C5", "C6",
    "D1", "D2", "D3", "D3_BOX", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11",
    "ORD",
)
CHAIN_SCHEMES = ("C6", "D6")
ID_PATTERN = re.compile(r"^\s*([A-Za-z0-9_]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


@dataclass(frozen=True)
class AxiomId:
    """A scheme tag; C6/D6 carry a chain length k, Ord a total order over V."""

    tag: str
    k: Optional[int] = None
    order: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        tag = self.tag.upper()
        object.__setattr__(self, "tag", tag)
        if tag not in SCHEMES:
            raise CausalError(f"unknown axiom scheme {self.tag!r}")
        if tag in CHAIN_SCHEMES:
            if self.k is None:
                object.__setattr__(self, "k", 1)
            if self.k < 1:
                raise CausalError(f"{tag} needs a chain length k >= 1")
        if tag == "ORD" and not self.order:
            raise CausalError("Ord needs a total order over the endogenous variables")
        if self.order is not None:
            object.__setattr__(self, "order", tuple(self.order))

    @classmethod
    def parse(cls, text: str) -> "AxiomId":
        """Accepts C1 ... D11, C6(2), D6(1), D3_BOX and Ord(X<Y<Z)."""
        match = ID_PATTERN.match(text)
        if not match:
            raise CausalError(f"cannot parse axiom id {text!r}")
        tag, argument = match.group(1).upper(), match.group(2)
        if tag in CHAIN_SCHEMES:
            return cls(tag, k=int(argument) if argument else 1)
        if tag == "ORD":
            names = tuple(n.strip() for n in re.split(r"[<,\s]+", argument or "") if n.strip())
            return cls(tag, order=names)
        if argument:
            raise CausalError(f"{tag} takes no argument")
        return cls(tag)

    def __str__(self) -> str:
        if self.tag in CHAIN_SCHEMES:
            return f"{self.tag}({self.k})"
        if self.tag == "ORD":
            return f"Ord({'<'.join(self.order)})"
        return self.tag


@dataclass(frozen=True)
class AxiomInstance:
    axiom: AxiomId
    formula: Formula
    bindings: Tuple[Tuple[str, str], ...]


# ================== AXIOM SYSTEMS ==================
def axiom_system(name: str, k: int = 2, order: Optional[Sequence[str]] = None) -> List[AxiomId]:
    """Schemes of a named system; chain schemes are included for 1..k."""
    chains = lambda tag: [AxiomId(tag, k=i) for i in range(1, k + 1)]  # noqa: E731
    plus = [AxiomId(t) for t in ("D1", "D2", "D3", "D4", "D5", "D7", "D8", "D9", "D11")]
    systems: Dict[str, List[AxiomId]] = {
        "AX_UNIQ": [AxiomId(t) for t in ("C1", "C2", "C3", "C4", "C5")],
        "AX_REC": [AxiomId(t) for t in ("C1", "C2", "C3", "C4")] + chains("C6"),
        "AX+": plus,
        "AX+_UNIQ": plus + [AxiomId("D10")],
        "AX+_REC": plus + [AxiomId("D10")] + chains("D6"),
    }
    key = name.upper()
    if key == "A_C":
        if not order:
            raise CausalError("A_C needs a variable order")
        return [AxiomId(t) for t in ("C1", "C2", "C3", "C4")] + [AxiomId("ORD", order=tuple(order))]
    if key not in systems:
        raise CausalError(f"unknown axiom system {name!r}; known: {', '.join(list(systems) + ['A_C'])}")
    return systems[key]


# ================== GENERATOR ==================
class AxiomGenerator:
    """Enumerates the ground instances of one scheme over one signature."""

    def __init__(self, sig: Signature, budget: Optional[int] = None, max_variables: Optional[int] = None):
        self.sig = sig
        self.budget = config.DEFAULT_BUDGET if budget is None else budget
        limit = config.AXIOM_MAX_VARIABLES if max_variables is None else max_variables
        if len(sig.endogenous) > limit:
            raise BudgetExceeded("endogenous variables for axiom instantiation", len(sig.endogenous), limit)
        self.contexts = list(sig.contexts())

    def instances(self, axiom: AxiomId) -> Iterator[AxiomInstance]:
        method = getattr(self, f"_{axiom.tag.lower()}")
        count = 0
        for formula, bindings in method(axiom):
            count += 1
            if count > self.budget:
                raise BudgetExceeded(f"instances of {axiom}", count, self.budget)
            yield AxiomInstance(axiom, formula, tuple(bindings))
        logger.debug(f"📊 {axiom}: {count} instance(s)")

    # ---------- helpers ----------
    def vectors(self, pool: Sequence[str]) -> Iterator[Intervention]:
        """Every X⃗←x⃗ with X⃗ ⊆ pool: subsets by size, values lexicographically."""
        for size in range(len(pool) + 1):
            for subset in combinations(pool, size):
                yield from self.sig.interventions(subset)

    def names(self, exclude: Sequence[str] = ()) -> List[str]:
        return [n for n in self.sig.endo_names if n not in exclude]

    def atoms(self) -> Iterator[Atom]:
        for name in self.sig.endo_names:
            for u in self.contexts:
                for value in self.sig.range_of(name):
                    yield Atom(name, u, value)

    @staticmethod
    def equal(names: Sequence[str], values: Sequence[str], u: Context) -> List[Formula]:
        return [Atom(n, u, v) for n, v in zip(names, values)]

    # ---------- C schemes ----------
    def _c1(self, axiom):
        for x in self.sig.endo_names:
            for iv in self.vectors(self.sig.endo_names):
                for u in self.contexts:
                    for a, b in permutations(self.sig.range_of(x), 2):
                        formula = Implies(Box(iv, Atom(x, u, a)), Not(Box(iv, Atom(x, u, b))))
                        yield formula, [("X", x), ("iv", str(iv)), ("u", str(u)), ("x", a), ("x'", b)]

    def _c2(self, axiom):
        for x in self.sig.endo_names:
            for iv in self.vectors(self.sig.endo_names):
                for u in self.contexts:
                    formula = disj(*(Box(iv, Atom(x, u, v)) for v in self.sig.range_of(x)))
                    yield formula, [("X", x), ("iv", str(iv)), ("u", str(u))]

    def _c3(self, axiom):
        for setting in self.vectors(self.sig.endo_names):
            for w in self.names(setting.targets):
                for y in self.names([w]):
                    for u in self.contexts:
                        for w_value, y_value in product(self.sig.range_of(w), self.sig.range_of(y)):
                            formula = Implies(
                                And((Box(setting, Atom(w, u, w_value)), Box(setting, Atom(y, u, y_value)))),
                                Box(setting.extend(w, w_value), Atom(y, u, y_value)),
                            )
                            yield formula, [("x", str(setting)), ("W", w), ("Y", y), ("u", str(u)),
                                            ("w", w_value), ("y", y_value)]

    def _c4(self, axiom):
        for x in self.sig.endo_names:
            for rest in self.vectors(self.names([x])):
                for value in self.sig.range_of(x):
                    iv = Intervention(((x, value),) + rest.settings)
                    for u in self.contexts:
                        yield Box(iv, Atom(x, u, value)), [("X", x), ("iv", str(iv)), ("u", str(u))]

    _d4 = _c4

    def _c5(self, axiom):
        for setting in self.vectors(self.sig.endo_names):
            free = self.names(setting.targets)
            for w, y in permutations(free, 2):
                for u in self.contexts:
                    for w_value, y_value in product(self.sig.range_of(w), self.sig.range_of(y)):
                        formula = Implies(
                            And((
                                Box(setting.extend(w, w_value), Atom(y, u, y_value)),
                                Box(setting.extend(y, y_value), Atom(w, u, w_value)),
                            )),
                            Box(setting, Atom(y, u, y_value)),
                        )
                        yield formula, [("x", str(setting)), ("W", w), ("Y", y), ("u", str(u)),
                                        ("w", w_value), ("y", y_value)]

    def _chain(self, axiom, guarded: bool):
        cache: Dict[Tuple[str, str], Formula] = {}

        def leads(a: str, b: str) -> Formula:
            if (a, b) not in cache:
                cache[(a, b)] = expand_affects(self.sig, a, b, guarded=guarded, budget=self.budget)
            return cache[(a, b)]

        for chain in permutations(self.sig.endo_names, axiom.k + 1):
            premise = conj(*(leads(chain[i], chain[i + 1]) for i in range(axiom.k)))
            formula = Implies(premise, Not(leads(chain[-1], chain[0])))
            yield formula, [("chain", " ⇝ ".join(chain))]

    def _c6(self, axiom):
        return self._chain(axiom, guarded=False)

    def _d6(self, axiom):
        return self._chain(axiom, guarded=True)

    # ---------- D schemes ----------
    def _d1(self, axiom):
        for x in self.sig.endo_names:
            for iv in self.vectors(self.sig.endo_names):
                for u in self.contexts:
                    for a, b in permutations(self.sig.range_of(x), 2):
                        formula = Box(iv, Implies(Atom(x, u, a), Not(Atom(x, u, b))))
                        yield formula, [("X", x), ("iv", str(iv)), ("u", str(u)), ("x", a), ("x'", b)]

    def _d2(self, axiom):
        for x in self.sig.endo_names:
            for iv in self.vectors(self.sig.endo_names):
                for u in self.contexts:
                    formula = Box(iv, disj(*(Atom(x, u, v) for v in self.sig.range_of(x))))
                    yield formula, [("X", x), ("iv", str(iv)), ("u", str(u))]

    def _d3(self, axiom):
        for setting in self.vectors(self.sig.endo_names):
            for w in self.names(setting.targets):
                others = self.names([w])
                for size in range(1, len(others) + 1):
                    for ys in combinations(others, size):
                        for y_values in product(*(self.sig.range_of(n) for n in ys)):
                            for u in self.contexts:
                                for w_value in self.sig.range_of(w):
                                    target = self.equal(ys, y_values, u)
                                    formula = Implies(
                                        Diamond(setting, conj(Atom(w, u, w_value), *target)),
                                        Diamond(setting.extend(w, w_value), conj(*target)),
                                    )
                                    yield formula, [("x", str(setting)), ("W", w), ("Y", ",".join(ys)),
                                                    ("u", str(u)), ("w", w_value), ("y", ",".join(y_values))]

    def _d3_box(self, axiom):
        for formula, bindings in self._c3(axiom):
            (w_box, y_box), consequent = formula.left.operands, formula.right
            merged = Box(w_box.iv, And((w_box.inner, y_box.inner)))
            yield Implies(merged, consequent), bindings

    def _d5(self, axiom):
        for setting in self.vectors(self.sig.endo_names):
            free = self.names(setting.targets)
            for w, y in permutations(free, 2):
                zs = [n for n in free if n not in (w, y)]
                for z_values in product(*(self.sig.range_of(n) for n in zs)):
                    for u in self.contexts:
                        for w_value, y_value in product(self.sig.range_of(w), self.sig.range_of(y)):
                            rest = self.equal(zs, z_values, u)
                            w_atom, y_atom = Atom(w, u, w_value), Atom(y, u, y_value)
                            formula = Implies(
                                And((
                                    Diamond(setting.extend(y, y_value), conj(w_atom, *rest)),
                                    Diamond(setting.extend(w, w_value), conj(y_atom, *rest)),
                                )),
                                Diamond(setting, conj(w_atom, y_atom, *rest)),
                            )
                            yield formula, [("x", str(setting)), ("W", w), ("Y", y), ("Z", ",".join(zs)),
                                            ("u", str(u)), ("w", w_value), ("y", y_value),
                                            ("z", ",".join(z_values))]

    def _d7(self, axiom):
        atoms = list(self.atoms())
        for iv in self.vectors(self.sig.endo_names):
            for phi, psi in product(atoms, repeat=2):
                formula = Implies(And((Box(iv, phi), Box(iv, Implies(phi, psi)))), Box(iv, psi))
                yield formula, [("iv", str(iv)), ("phi", f"{phi.variable}{phi.context}={phi.value}"),
                                ("psi", f"{psi.variable}{psi.context}={psi.value}")]

    def _d8(self, axiom):
        for iv in self.vectors(self.sig.endo_names):
            for u in self.contexts:
                yield Box(iv, TrueAt(u)), [("iv", str(iv)), ("phi", f"true{u}")]
            for a in self.atoms():
                templates = {
                    "excluded-middle": Or((a, Not(a))),
                    "reflexivity": Implies(a, a),
                    "non-contradiction": Not(And((a, Not(a)))),
                }
                for name, tautology in templates.items():
                    yield Box(iv, tautology), [("iv", str(iv)), ("phi", name),
                                               ("atom", f"{a.variable}{a.context}={a.value}")]

    def _unique(self, x: str, iv: Intervention, u: Context) -> Formula:
        return And((Diamond(iv, TrueAt(u)), disj(*(Box(iv, Atom(x, u, v)) for v in self.sig.range_of(x)))))

    def _d9(self, axiom):
        for x in self.sig.endo_names:
            for iv in self.sig.interventions(self.names([x])):
                for u in self.contexts:
                    yield self._unique(x, iv, u), [("X", x), ("iv", str(iv)), ("u", str(u))]

    def _d10(self, axiom):
        for x in self.sig.endo_names:
            for iv in self.vectors(self.sig.endo_names):
                for u in self.contexts:
                    yield self._unique(x, iv, u), [("X", x), ("iv", str(iv)), ("u", str(u))]

    def _d11(self, axiom):
        literals_at = {
            u: [lit for a in self.atoms() if a.context == u for lit in (a, Not(a))] for u in self.contexts
        }
        for iv in self.vectors(self.sig.endo_names):
            for k in range(1, len(self.contexts) + 1):
                for us in combinations(self.contexts, k):
                    for parts in product(*(literals_at[u] for u in us)):
                        formula = Iff(Diamond(iv, conj(*parts)), conj(*(Diamond(iv, p) for p in parts)))
                        yield formula, [("iv", str(iv)), ("contexts", " ".join(str(u) for u in us))]

    def _ord(self, axiom):
        order = axiom.order
        if sorted(order) != sorted(self.sig.endo_names):
            raise CausalError(f"Ord order {order} is not a permutation of {self.sig.endo_names}")
        for i, y in enumerate(order):
            for w in order[i + 1:]:
                for setting in self.vectors(self.names([w])):
                    for w_value in self.sig.range_of(w):
                        for u in self.contexts:
                            for y_value in self.sig.range_of(y):
                                formula = Iff(
                                    Box(setting.extend(w, w_value), Atom(y, u, y_value)),
                                    Box(setting, Atom(y, u, y_value)),
                                )
                                yield formula, [("Y", y), ("W", w), ("x", str(setting)), ("w", w_value),
                                                ("u", str(u)), ("y", y_value)]


def generate_instances(
    axiom: AxiomId,
    sig: Signature,
    budget: Optional[int] = None,
    max_variables: Optional[int] = None,
) -> Iterator[AxiomInstance]:
    """Stream every ground instance of the scheme over sig."""
    return AxiomGenerator(sig, budget, max_variables).instances(axiom)
