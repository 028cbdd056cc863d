"""
causal/model_io.py

Loader and writer for the line-oriented model / signature file format:

    exogenous U : 0 1
    endogenous X : -1 0 1
    eq X(U, Y):
      (0, -1) -> -1
      ...
    eq Z() = 1

An `eq` header may list any subset of U ∪ (V − {X}); the mechanism is then
constant in the unlisted inputs. Rows must cover the listed inputs exactly.
"""

import logging
import re
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from src.causal.classes import sensitive_inputs
from src.causal.errors import CausalError, ModelFormatError
from src.causal.model import CausalModel, MechanismTable, mechanism_inputs
from src.causal.signature import Signature, Variable

logger = logging.getLogger(__name__)

DECL_PATTERN = re.compile(r"(exogenous|endogenous)\s+(\S+)\s*:\s*(.*)$")
EQ_PATTERN = re.compile(r"eq\s+(\S+?)\s*\(([^)]*)\)\s*(?::|=\s*(\S+))\s*$")
ROW_PATTERN = re.compile(r"\(([^)]*)\)\s*->\s*(\S+)$")


class _Equation:
    def __init__(self, variable: str, inputs: Tuple[str, ...], line: int, constant: Optional[str]):
        self.variable = variable
        self.inputs = inputs
        self.line = line
        self.constant = constant
        self.rows: Dict[Tuple[str, ...], Tuple[str, int]] = {}


def _split_values(text: str) -> Tuple[str, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(part.strip() for part in text.split(","))


def _parse(text: str, source: str) -> Tuple[Signature, List[_Equation]]:
    exogenous: List[Variable] = []
    endogenous: List[Variable] = []
    equations: List[_Equation] = []
    current: Optional[_Equation] = None

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        decl = DECL_PATTERN.match(line)
        if decl:
            kind, name, values = decl.groups()
            try:
                variable = Variable(name, tuple(values.split()))
            except CausalError as e:
                raise ModelFormatError(str(e), number, source) from None
            (exogenous if kind == "exogenous" else endogenous).append(variable)
            current = None
            continue

        eq = EQ_PATTERN.match(line)
        if eq:
            name, inputs, constant = eq.groups()
            names = _split_values(inputs)
            current = _Equation(name, names, number, constant)
            equations.append(current)
            if constant is not None:
                current = None
            continue

        row = ROW_PATTERN.match(line)
        if row:
            if current is None:
                raise ModelFormatError("table row outside an 'eq NAME(...):' block", number, source)
            key = _split_values(row.group(1))
            if key in current.rows:
                raise ModelFormatError(f"duplicate row {row.group(1).strip()!r} for {current.variable}", number, source)
            current.rows[key] = (row.group(2), number)
            continue

        raise ModelFormatError(f"cannot parse line: {raw.strip()!r}", number, source)

    try:
        sig = Signature(tuple(exogenous), tuple(endogenous))
    except CausalError as e:
        raise ModelFormatError(str(e), None, source) from None
    return sig, equations


def _build_mechanism(sig: Signature, eq: _Equation, source: str) -> MechanismTable:
    name = eq.variable
    if not sig.is_endogenous(name):
        raise ModelFormatError(f"'eq {name}' does not name an endogenous variable", eq.line, source)
    if len(set(eq.inputs)) != len(eq.inputs):
        raise ModelFormatError(f"duplicate input in 'eq {name}'", eq.line, source)
    for inp in eq.inputs:
        if not sig.has_variable(inp) or inp == name:
            raise ModelFormatError(f"invalid input {inp!r} for {name}", eq.line, source)
    out_range = sig.range_of(name)

    if eq.constant is not None:
        if eq.rows:
            raise ModelFormatError(f"constant equation for {name} cannot have rows", eq.line, source)
        if eq.constant not in out_range:
            raise ModelFormatError(f"output {eq.constant!r} out of range for {name}", eq.line, source)
        partial = {key: eq.constant for key in product(*(sig.range_of(i) for i in eq.inputs))}
    else:
        partial = {}
        for key in product(*(sig.range_of(i) for i in eq.inputs)):
            if key not in eq.rows:
                raise ModelFormatError(f"missing row ({', '.join(key)}) for {name}", eq.line, source)
            output, line = eq.rows[key]
            if output not in out_range:
                raise ModelFormatError(f"output {output!r} out of range for {name}", line, source)
            partial[key] = output
        for key, (_, line) in eq.rows.items():
            if key not in partial:
                raise ModelFormatError(f"extra row ({', '.join(key)}) for {name}", line, source)

    inputs = mechanism_inputs(sig, name)
    positions = [inputs.index(i) for i in eq.inputs]
    outputs = tuple(
        partial[tuple(key[p] for p in positions)] for key in product(*(sig.range_of(i) for i in inputs))
    )
    return MechanismTable(name, inputs, outputs)


def load_signature(text: str, source: str = "<signature>") -> Signature:
    """Signature of a .sig or .model text; equations, if present, are ignored."""
    sig, _ = _parse(text, source)
    return sig


def load_model(text: str, source: str = "<model>") -> CausalModel:
    sig, equations = _parse(text, source)
    by_name: Dict[str, _Equation] = {}
    for eq in equations:
        if eq.variable in by_name:
            raise ModelFormatError(f"second equation for {eq.variable}", eq.line, source)
        by_name[eq.variable] = eq
    mechanisms = []
    for name in sig.endo_names:
        if name not in by_name:
            raise ModelFormatError(f"no equation for endogenous variable {name}", None, source)
        mechanisms.append(_build_mechanism(sig, by_name.pop(name), source))
    if by_name:
        eq = next(iter(by_name.values()))
        raise ModelFormatError(f"'eq {eq.variable}' does not name an endogenous variable", eq.line, source)
    return CausalModel(sig, tuple(mechanisms))


def read_model(path: Union[str, Path]) -> CausalModel:
    path = Path(path)
    return load_model(path.read_text(encoding="utf-8"), str(path))


def read_signature(path: Union[str, Path]) -> Signature:
    path = Path(path)
    return load_signature(path.read_text(encoding="utf-8"), str(path))


def dump_signature(sig: Signature) -> str:
    return "\n".join(sig.describe()) + "\n"


def dump_model(model: CausalModel) -> str:
    """Model text listing, per equation, only the inputs it is sensitive to."""
    sig = model.signature
    lines = sig.describe()
    for mech in model.mechanisms:
        relevant = sensitive_inputs(model, mech.variable)
        if not relevant:
            lines.append(f"eq {mech.variable}() = {mech.outputs[0]}")
            continue
        lines.append(f"eq {mech.variable}({', '.join(relevant)}):")
        table = mech.table(sig)
        positions = {name: i for i, name in enumerate(mech.inputs)}
        base = [sig.range_of(n)[0] for n in mech.inputs]
        for key in product(*(sig.range_of(n) for n in relevant)):
            full = list(base)
            for name, value in zip(relevant, key):
                full[positions[name]] = value
            lines.append(f"  ({', '.join(key)}) -> {table[tuple(full)]}")
    return "\n".join(lines) + "\n"


def write_model(model: CausalModel, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dump_model(model), encoding="utf-8")
    logger.info(f"✅ Wrote model to {path}")
    return path
