"""
tools/soundness_checker.py

Exhaustive soundness checks: every ground instance of a scheme evaluated on
every model of a class over a small signature.
"""

import logging
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from pqdm.threads import pqdm

from src import config
from src.causal.classes import ModelClass, enumerate_models, in_class
from src.causal.model import CausalModel
from src.causal.model_io import dump_model
from src.causal.signature import Signature
from src.logic.ast import Basic, Formula, Iff, Implies, Not, And, Or, walk
from src.logic.printer import print_formula
from src.logic.transform import validate_formula
from src.tools.axiom_generator import AxiomId, AxiomInstance, axiom_system, generate_instances
from src.tools.model_checker import ModelChecker

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Counterexample:
    model: CausalModel
    instance: AxiomInstance


@dataclass(frozen=True)
class SoundnessReport:
    axiom: AxiomId
    model_class: ModelClass
    models: int
    instances: int
    counterexample: Optional[Counterexample] = None
    counterexample_path: Optional[Path] = None

    @property
    def holds_on_all(self) -> bool:
        return self.counterexample is None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds_on_all else "FAILS"


def _first_failure(model: CausalModel, formulas: Sequence[Formula], budget: int) -> int:
    """Index of the first formula false on the model, or -1."""
    checker = ModelChecker(model, budget)
    for index, formula in enumerate(formulas):
        if not checker.evaluate(formula, validate=False):
            return index
    return -1


def _write_counterexample(out_dir: Path, axiom: AxiomId, model_class: ModelClass, found: Counterexample) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = str(axiom).replace("(", "_").replace(")", "").replace("<", "-")
    path = out_dir / f"{stem}_{model_class.value}.model"
    bindings = ", ".join(f"{k}={v}" for k, v in found.instance.bindings)
    header = (
        f"# counterexample to {axiom} in {model_class.value}\n"
        f"# instance: {print_formula(found.instance.formula)}\n"
        f"# bindings: {bindings}\n"
    )
    path.write_text(header + dump_model(found.model), encoding="utf-8")
    logger.info(f"✅ Wrote counterexample to {path}")
    return path


def check_soundness(
    axiom: Union[AxiomId, str],
    model_class: Union[ModelClass, str],
    sig: Signature,
    budget: Optional[int] = None,
    models: Optional[Iterable[CausalModel]] = None,
    parallel: Optional[int] = None,
    progress: bool = False,
    out_dir: Optional[Union[str, Path]] = None,
) -> SoundnessReport:
    """Evaluate every instance of the scheme on every model of the class.

    Args:
        models: Explicit corpus to use instead of enumerating the whole
            class; models outside the class are skipped
        parallel: Number of pqdm worker threads (defaults to CAUSAL_PARALLEL)
        out_dir: Directory for the counterexample model file, if any

    Returns:
        A report whose counterexample is the first failing (model, instance)
        in enumeration order
    """
    axiom = AxiomId.parse(axiom) if isinstance(axiom, str) else axiom
    model_class = ModelClass.parse(model_class) if isinstance(model_class, str) else model_class
    budget = config.DEFAULT_BUDGET if budget is None else budget
    parallel = config.DEFAULT_PARALLEL if parallel is None else parallel

    instances = list(generate_instances(axiom, sig, budget))
    for instance in instances:
        validate_formula(instance.formula, sig)
    formulas = [i.formula for i in instances]

    if models is None:
        corpus = list(enumerate_models(sig, model_class, budget, progress=progress))
    else:
        corpus = []
        for model in models:
            if model.signature != sig:
                raise ValueError("corpus model over a different signature")
            if in_class(model, model_class, budget):
                corpus.append(model)
            else:
                logger.warning(f"⚠️ Skipping corpus model outside {model_class.value}")
    logger.info(f"🔍 {axiom} on {len(corpus)} {model_class.value} model(s) × {len(instances)} instance(s)")

    if parallel > 1 and len(corpus) > 1:
        failures = pqdm(
            [(m, formulas, budget) for m in corpus],
            _first_failure,
            n_jobs=parallel,
            argument_type="args",
            exception_behaviour="immediate",
            disable=not progress,
            desc=str(axiom),
        )
    else:
        failures = []
        for model in corpus:
            failures.append(_first_failure(model, formulas, budget))
            if failures[-1] >= 0:
                break

    counterexample = None
    for model, index in zip(corpus, failures):
        if index >= 0:
            counterexample = Counterexample(model, instances[index])
            break

    path = None
    if counterexample is not None:
        logger.info(f"❌ {axiom} fails in {model_class.value}: {print_formula(counterexample.instance.formula)}")
        if out_dir is not None:
            path = _write_counterexample(Path(out_dir), axiom, model_class, counterexample)
    else:
        logger.info(f"✅ {axiom} holds on every {model_class.value} model")
    return SoundnessReport(axiom, model_class, len(corpus), len(instances), counterexample, path)


def check_system(
    name: str,
    model_class: Union[ModelClass, str],
    sig: Signature,
    k: int = 2,
    order: Optional[Sequence[str]] = None,
    **options,
) -> List[SoundnessReport]:
    """check_soundness for every scheme of a named axiom system."""
    model_class = ModelClass.parse(model_class) if isinstance(model_class, str) else model_class
    corpus = options.pop("models", None)
    if corpus is None:
        corpus = list(enumerate_models(sig, model_class, options.get("budget")))
    else:
        corpus = list(corpus)
    return [
        check_soundness(axiom, model_class, sig, models=corpus, **options)
        for axiom in axiom_system(name, k=k, order=order)
    ]


def render_report(reports: Sequence[SoundnessReport]) -> str:
    """Plain-text table, one row per report."""
    header = ("axiom", "class", "models", "instances", "verdict", "counterexample")
    rows = [
        (
            str(r.axiom),
            r.model_class.value,
            str(r.models),
            str(r.instances),
            r.verdict,
            str(r.counterexample_path) if r.counterexample_path else ("-" if r.holds_on_all else "(not written)"),
        )
        for r in reports
    ]
    widths = [max(len(row[i]) for row in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in [header] + rows]
    return "\n".join(lines) + "\n"


# ================== PROPOSITIONAL LAYER ==================
def _skeleton_atoms(f: Formula) -> List[Formula]:
    atoms = {}
    for node in walk(f):
        if isinstance(node, Basic):
            atoms.setdefault(node, None)
    return list(atoms)


def _truth(f: Formula, valuation: dict) -> bool:
    if isinstance(f, Basic):
        return valuation[f]
    if isinstance(f, Not):
        return not _truth(f.operand, valuation)
    if isinstance(f, And):
        return all(_truth(op, valuation) for op in f.operands)
    if isinstance(f, Or):
        return any(_truth(op, valuation) for op in f.operands)
    if isinstance(f, Implies):
        return (not _truth(f.left, valuation)) or _truth(f.right, valuation)
    if isinstance(f, Iff):
        return _truth(f.left, valuation) == _truth(f.right, valuation)
    raise TypeError(f"not an outer formula: {f!r}")


def is_propositional_tautology(f: Formula) -> bool:
    """True iff f is a tautology when every box/diamond is read as an opaque proposition."""
    atoms = _skeleton_atoms(f)
    return all(_truth(f, dict(zip(atoms, bits))) for bits in product((False, True), repeat=len(atoms)))


# ================== ORDER CONSEQUENCE ==================
def ord_entails(
    premises: Sequence[Formula],
    conclusion: Formula,
    order: Sequence[str],
    sig: Signature,
    budget: Optional[int] = None,
) -> Tuple[bool, Optional[CausalModel]]:
    """Whether premises plus Ord(order) entail the conclusion on T_uniq(sig).

    Returns (entailed, countermodel); the countermodel is the first unique
    solution model satisfying the premises and Ord(order) but not the
    conclusion.
    """
    budget = config.DEFAULT_BUDGET if budget is None else budget
    ord_instances = [i.formula for i in generate_instances(AxiomId("ORD", order=tuple(order)), sig, budget)]
    for f in list(premises) + [conclusion]:
        validate_formula(f, sig)
    for model in enumerate_models(sig, ModelClass.UNIQ, budget):
        checker = ModelChecker(model, budget)
        if not all(checker.evaluate(f, validate=False) for f in ord_instances):
            continue
        if not all(checker.evaluate(f, validate=False) for f in premises):
            continue
        if not checker.evaluate(conclusion, validate=False):
            return False, model
    return True, None
