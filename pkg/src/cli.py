"""
cli.py

Command-line front end: `causal <command> ...`

Exit codes: 0 when the query was answered (whatever the verdict),
1 on input errors, 2 when a budget was exceeded.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from src import config
from src.causal.classes import ModelClass, is_recursive, is_unique_solutions
from src.causal.errors import BudgetExceeded, CausalError, FormulaSyntaxError, InvalidIntervention
from src.causal.model import solve
from src.causal.model_io import dump_model, dump_signature, read_model, read_signature, write_model
from src.causal.signature import Context, Intervention, Signature
from src.logic.parser import parse
from src.logic.printer import print_formula
from src.logic.transform import classify_language
from src.tools.axiom_generator import AxiomId, axiom_system
from src.tools.enum_sat_solver import sat, valid
from src.tools.model_checker import affects, evaluate
from src.tools.model_projector import project_model_rec, project_model_uniq, transform_finite1a
from src.tools.reductions import cnf_to_lgp, read_dimacs
from src.tools.signature_reducer import reduce_finite1, reduce_finite1a
from src.tools.soundness_checker import check_soundness, render_report
from src.utils.logging_setup import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


@dataclass(frozen=True)
class CommandResult:
    code: int
    stdout: str = ""
    stderr: str = ""


# ================== INPUT HELPERS ==================
def read_formula_text(text: str) -> str:
    """Inline formula, or the contents of a file given as @path."""
    if text.startswith("@"):
        return Path(text[1:]).read_text(encoding="utf-8").strip()
    return text


def parse_formula(text: str, sig: Signature):
    source = text[1:] if text.startswith("@") else None
    try:
        return parse(read_formula_text(text), sig)
    except FormulaSyntaxError as e:
        if source:
            raise FormulaSyntaxError(f"{source}: {e.message}", e.position, e.expected) from None
        raise


def parse_intervention(text: str, sig: Signature) -> Intervention:
    """"X<-1;Y<-0" → Intervention; empty text is the empty intervention."""
    settings = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        if "<-" not in part:
            raise InvalidIntervention(f"bad setting {part!r}, expected NAME<-VALUE")
        name, value = (s.strip() for s in part.split("<-", 1))
        settings.append((name, value))
    iv = Intervention(tuple(settings))
    sig.check_intervention(iv)
    return iv


def parse_context(text: str, sig: Signature) -> Context:
    u = Context(tuple(v.strip() for v in text.split(",")) if text.strip() else ())
    sig.check_context(u)
    return u


# ================== COMMANDS ==================
def cmd_parse(args) -> str:
    sig = read_signature(args.signature)
    f = parse_formula(args.formula, sig)
    return f"{print_formula(f)}\nclass: {classify_language(f).value}\n"


def cmd_solve(args) -> str:
    model = read_model(args.model)
    sig = model.signature
    iv = parse_intervention(args.do, sig)
    u = parse_context(args.context, sig)
    return str(solve(model, iv, u, args.budget)) + "\n"


def cmd_check(args) -> str:
    model = read_model(args.model)
    f = parse_formula(args.formula, model.signature)
    return "true\n" if evaluate(model, f, args.budget) else "false\n"


def classify_text(model, budget: int) -> str:
    order = is_recursive(model)
    if order is not None:
        return f"REC (order: {' < '.join(order)})"
    if is_unique_solutions(model, budget):
        return "UNIQ (not REC)"
    return "ALL (not UNIQ)"


def cmd_classify(args) -> str:
    return classify_text(read_model(args.model), args.budget) + "\n"


def cmd_affects(args) -> str:
    model = read_model(args.model)
    for name in (args.cause, args.effect):
        if not model.signature.is_endogenous(name):
            raise InvalidIntervention(f"{name!r} is not an endogenous variable")
    witness = affects(model, args.cause, args.effect, require_solutions=not args.literal, budget=args.budget)
    if witness is None:
        return f"{args.cause} does not affect {args.effect}\n"
    return witness.describe(args.cause, args.effect) + "\n"


def _decide(args, validity: bool) -> str:
    sig = read_signature(args.sig)
    f = parse_formula(args.formula, sig)
    options = {"reduction": args.reduction, "parallel": args.parallel}
    cls = ModelClass.parse(args.model_class)
    if validity:
        result = valid(f, sig, cls, args.budget, **options)
        lines = ["VALID" if result.valid else "INVALID"]
        model = result.countermodel
    else:
        witness = sat(f, sig, cls, args.budget, **options)
        lines = [witness.verdict.value]
        model = witness.model
    if model is not None and args.out:
        lines.append(f"{'countermodel' if validity else 'witness'}: {write_model(model, args.out)}")
    elif model is not None and args.show:
        lines.append(dump_model(model).rstrip("\n"))
    return "\n".join(lines) + "\n"


def cmd_sat(args) -> str:
    return _decide(args, validity=False)


def cmd_valid(args) -> str:
    return _decide(args, validity=True)


def cmd_axioms(args) -> str:
    sig = read_signature(args.sig)
    if args.system:
        axioms = axiom_system(args.system, k=args.k, order=args.order.split("<") if args.order else None)
    else:
        axioms = [AxiomId.parse(a) for a in args.axiom or []]
    if not axioms:
        raise CausalError("give at least one --axiom or a --system")
    reports = [
        check_soundness(a, args.model_class, sig, args.budget, parallel=args.parallel, out_dir=args.out_dir)
        for a in axioms
    ]
    return render_report(reports)


def cmd_reduce(args) -> str:
    sig = read_signature(args.sig)
    f = parse_formula(args.formula, sig)
    reduction = reduce_finite1a(f, sig) if args.plus else reduce_finite1(f, sig)
    return f"# formula: {print_formula(reduction.formula)}\n" + dump_signature(reduction.reduced)


def cmd_cnf2gp(args) -> str:
    f, sig = cnf_to_lgp(read_dimacs(args.cnf), require_3cnf=not args.any_width)
    if args.sig_out:
        Path(args.sig_out).write_text(dump_signature(sig), encoding="utf-8")
    return f"# formula ({classify_language(f).value}): {print_formula(f)}\n" + dump_signature(sig)


def cmd_project(args) -> str:
    model = read_model(args.model)
    if args.mode == "from-reduced":
        if not args.sig:
            raise CausalError("--mode from-reduced needs --sig with the original signature")
        original = read_signature(args.sig)
        f = parse_formula(args.formula, original)
        result = transform_finite1a(model, f, "FROM_REDUCED", original, args.budget)
    else:
        f = parse_formula(args.formula, model.signature)
        if args.mode == "rec":
            result = project_model_rec(model, f)
        elif args.mode == "uniq":
            result = project_model_uniq(model, f, args.budget)
        else:
            result = transform_finite1a(model, f, "TO_REDUCED", budget=args.budget)
    if args.out:
        write_model(result, args.out)
    return dump_model(result)


# ================== PARSER ==================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="causal", description="Exact causal reasoning over finite structural-equation models")
    parser.add_argument("--budget", type=int, default=config.DEFAULT_BUDGET, help="work budget (default: %(default)s)")
    parser.add_argument("--parallel", type=int, default=config.DEFAULT_PARALLEL, help="worker threads")
    parser.add_argument("-v", "--verbose", action="store_true", help="INFO logs on stderr")
    parser.add_argument("--log-dir", default=config.LOG_DIR, help="also write logs to this directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="print the canonical form and language class of a formula")
    p.add_argument("signature", help=".sig or .model file")
    p.add_argument("formula", help="formula text or @file")
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("solve", help="solutions of a submodel")
    p.add_argument("model")
    p.add_argument("--do", default="", help='intervention, e.g. "X<-1;Y<-0"')
    p.add_argument("--context", default="", help='context values, e.g. "0,1"')
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("check", help="evaluate a formula on a model")
    p.add_argument("model")
    p.add_argument("formula")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("classify", help="REC / UNIQ / ALL membership")
    p.add_argument("model")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("affects", help="does CAUSE affect EFFECT")
    p.add_argument("model")
    p.add_argument("cause")
    p.add_argument("effect")
    p.add_argument("--literal", action="store_true", help="count vacuous boxes (no solutions) as witnesses")
    p.set_defaults(handler=cmd_affects)

    for name, handler, help_text in (("sat", cmd_sat, "satisfiability"), ("valid", cmd_valid, "validity")):
        p = sub.add_parser(name, help=f"{help_text} in a model class")
        p.add_argument("formula")
        p.add_argument("--sig", required=True, help="signature file")
        p.add_argument("--class", dest="model_class", default="ALL", choices=["rec", "uniq", "all", "REC", "UNIQ", "ALL"])
        p.add_argument("--reduction", default="auto", choices=["auto", "finite1", "none"])
        p.add_argument("--out", help="write the witness / countermodel here")
        p.add_argument("--show", action="store_true", help="print the witness / countermodel")
        p.set_defaults(handler=handler)

    p = sub.add_parser("axioms", help="soundness report for axiom schemes")
    p.add_argument("--sig", required=True)
    p.add_argument("--class", dest="model_class", default="ALL", choices=["rec", "uniq", "all", "REC", "UNIQ", "ALL"])
    p.add_argument("--axiom", action="append", help="scheme id, e.g. C3, C6(2), Ord(X<Y); repeatable")
    p.add_argument("--system", help="AX_uniq, AX_rec, AX+, AX+_uniq, AX+_rec or A_C")
    p.add_argument("--k", type=int, default=2, help="longest chain for C6/D6 in --system")
    p.add_argument("--order", help='variable order for A_C, e.g. "X<Y"')
    p.add_argument("--out-dir", help="write counterexample models here")
    p.set_defaults(handler=cmd_axioms)

    p = sub.add_parser("reduce", help="reduced signature of a formula")
    p.add_argument("formula")
    p.add_argument("--sig", required=True)
    p.add_argument("--plus", action="store_true", help="S_φ⁺ instead of S_φ")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("cnf2gp", help="DIMACS CNF to a causal formula")
    p.add_argument("cnf")
    p.add_argument("--sig-out", help="also write the signature to this file")
    p.add_argument("--any-width", action="store_true", help="accept clauses that do not have 3 literals")
    p.set_defaults(handler=cmd_cnf2gp)

    p = sub.add_parser("project", help="model transforms between S and its reductions")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--mode", required=True, choices=["rec", "uniq", "to-reduced", "from-reduced"])
    p.add_argument("--sig", help="original signature (from-reduced)")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_project)
    return parser


def run_command(argv: Sequence[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        # argparse already printed usage or help
        return CommandResult(EXIT_INPUT if e.code else EXIT_OK)
    setup_logging("INFO" if args.verbose else None, args.log_dir)
    logger.info(f"🔍 causal {args.command}")
    handler: Callable = args.handler
    try:
        return CommandResult(EXIT_OK, handler(args))
    except BudgetExceeded as e:
        return CommandResult(EXIT_BUDGET, stderr=f"error: {e}\n")
    except (CausalError, OSError, ValueError) as e:
        return CommandResult(EXIT_INPUT, stderr=f"error: {e}\n")


def main(argv: Optional[List[str]] = None) -> int:
    result = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
