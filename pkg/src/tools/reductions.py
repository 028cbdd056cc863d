"""
tools/reductions.py

Propositional satisfiability embedded into causal formulas:

- cnf_to_lgp: a CNF becomes an L_GP-style formula satisfiable in T_rec iff
  the CNF is satisfiable (one gadget variable Y_j per clause)
- prop_to_luniq: p_i becomes [](X_i()=1)

Also the DIMACS reader/writer and truth-table oracles used to test them.
"""

import logging
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

from src.causal.errors import MalformedCnf
from src.causal.fixtures import binary_signature
from src.causal.signature import EMPTY_CONTEXT, Intervention, Signature
from src.logic.ast import And, Atom, Box, Formula, Not, Or, TrueAt, conj

logger = logging.getLogger(__name__)

Clause = Tuple[int, ...]


@dataclass(frozen=True)
class CnfInstance:
    """Clauses of DIMACS literals (±i for proposition p_i, 1-based)."""

    num_vars: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 0:
            raise MalformedCnf("negative variable count")
        for index, clause in enumerate(self.clauses, start=1):
            for literal in clause:
                if literal == 0 or abs(literal) > self.num_vars:
                    raise MalformedCnf(f"clause {index}: literal {literal} outside 1..{self.num_vars}")

    @property
    def is_3cnf(self) -> bool:
        return all(len(c) == 3 for c in self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in clause) for clause in self.clauses)


# ================== PROPOSITIONAL FORMULAS ==================
@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Neg:
    operand: "PropFormula"


@dataclass(frozen=True)
class Conj:
    operands: Tuple["PropFormula", ...]


@dataclass(frozen=True)
class Disj:
    operands: Tuple["PropFormula", ...]


PropFormula = Union[Var, Neg, Conj, Disj]


def prop_vars(prop: PropFormula) -> int:
    """Largest proposition index in the formula."""
    if isinstance(prop, Var):
        return prop.index
    if isinstance(prop, Neg):
        return prop_vars(prop.operand)
    return max((prop_vars(op) for op in prop.operands), default=0)


def prop_eval(prop: PropFormula, assignment: Sequence[bool]) -> bool:
    if isinstance(prop, Var):
        return assignment[prop.index - 1]
    if isinstance(prop, Neg):
        return not prop_eval(prop.operand, assignment)
    if isinstance(prop, Conj):
        return all(prop_eval(op, assignment) for op in prop.operands)
    return any(prop_eval(op, assignment) for op in prop.operands)


def prop_satisfiable(prop: PropFormula, num_vars: int = None) -> bool:
    """Truth-table oracle."""
    n = prop_vars(prop) if num_vars is None else num_vars
    return any(prop_eval(prop, bits) for bits in product((False, True), repeat=n))


def cnf_satisfiable(cnf: CnfInstance) -> bool:
    """Truth-table oracle."""
    return any(cnf.satisfied_by(bits) for bits in product((False, True), repeat=cnf.num_vars))


# ================== EMBEDDINGS ==================
def _x(i: int) -> str:
    return f"X{i}"


def cnf_to_lgp(cnf: CnfInstance, require_3cnf: bool = True) -> Tuple[Formula, Signature]:
    """[](Y1()=1 & … & Ym()=1) & ⋀_j [X←x̄_j](Yj()=0).

    x̄_j is the assignment falsifying clause j (0 for p, 1 for ¬p). A
    repeated literal sets its variable once; a clause containing p and ¬p
    cannot be falsified and gets no gadget. Clauses of any width embed the
    same way when require_3cnf is False.

    Raises:
        MalformedCnf: require_3cnf and some clause does not have 3 literals
    """
    if require_3cnf:
        for j, clause in enumerate(cnf.clauses, start=1):
            if len(clause) != 3:
                raise MalformedCnf(f"clause {j} has {len(clause)} literal(s), expected 3")
    m = len(cnf.clauses)
    sig = binary_signature([_x(i) for i in range(1, cnf.num_vars + 1)] + [f"Y{j}" for j in range(1, m + 1)])
    if m == 0:
        return Box(Intervention(()), TrueAt(EMPTY_CONTEXT)), sig

    all_true = conj(*(Atom(f"Y{j}", EMPTY_CONTEXT, "1") for j in range(1, m + 1)))
    parts: List[Formula] = [Box(Intervention(()), all_true)]
    for j, clause in enumerate(cnf.clauses, start=1):
        settings: Dict[int, str] = {}
        tautological = False
        for literal in clause:
            value = "0" if literal > 0 else "1"
            previous = settings.setdefault(abs(literal), value)
            if previous != value:
                tautological = True
        if tautological:
            logger.debug(f"📊 clause {j} is a tautology; no gadget")
            continue
        iv = Intervention(tuple((_x(i), v) for i, v in sorted(settings.items())))
        parts.append(Box(iv, Atom(f"Y{j}", EMPTY_CONTEXT, "0")))
    return conj(*parts), sig


def prop_to_luniq(prop: PropFormula, num_vars: int = None) -> Tuple[Formula, Signature]:
    """Replace every p_i by [](X_i()=1) over binary X_1..X_n with no exogenous variables."""
    n = prop_vars(prop) if num_vars is None else num_vars
    sig = binary_signature([_x(i) for i in range(1, n + 1)])

    def convert(p: PropFormula) -> Formula:
        if isinstance(p, Var):
            return Box(Intervention(()), Atom(_x(p.index), EMPTY_CONTEXT, "1"))
        if isinstance(p, Neg):
            return Not(convert(p.operand))
        operands = tuple(convert(op) for op in p.operands)
        if len(operands) == 1:
            return operands[0]
        return And(operands) if isinstance(p, Conj) else Or(operands)

    return convert(prop), sig


# ================== DIMACS ==================
def load_dimacs(text: str) -> CnfInstance:
    """Parse DIMACS CNF: `c` comments, one `p cnf V C` header, clauses ending in 0."""
    header = None
    clauses: List[Clause] = []
    current: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise MalformedCnf(f"line {number}: bad problem line {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise MalformedCnf(f"line {number}: bad problem line {line!r}") from None
            continue
        if header is None:
            raise MalformedCnf(f"line {number}: clause before the 'p cnf' header")
        for token in line.split():
            try:
                literal = int(token)
            except ValueError:
                raise MalformedCnf(f"line {number}: {token!r} is not a literal") from None
            if literal == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(literal)
    if header is None:
        raise MalformedCnf("missing 'p cnf' header")
    if current:
        logger.warning("⚠️ Last clause is not terminated by 0; accepting it")
        clauses.append(tuple(current))
    num_vars, num_clauses = header
    if len(clauses) != num_clauses:
        raise MalformedCnf(f"header declares {num_clauses} clause(s), found {len(clauses)}")
    return CnfInstance(num_vars, tuple(clauses))


def read_dimacs(path: Union[str, Path]) -> CnfInstance:
    return load_dimacs(Path(path).read_text(encoding="utf-8"))


def dump_dimacs(cnf: CnfInstance) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines += [" ".join(str(l) for l in clause + (0,)) for clause in cnf.clauses]
    return "\n".join(lines) + "\n"
