import random

import pytest
from hypothesis import given, strategies as st

from src.causal.classes import ModelClass, enumerate_models
from src.causal.errors import BudgetExceeded, ValidationError
from src.causal.fixtures import copycat, mod3, push_pull
from src.causal.model import CausalModel
from src.causal.signature import Context, Intervention
from src.logic.ast import Atom, Or
from src.logic.parser import parse
from src.tools.model_checker import (
    ModelChecker,
    affects,
    affects_disjuncts,
    box_lemmas,
    evaluate,
    expand_affects,
)
from tests.helpers import random_model
from tests.settings import STANDARD_SETTINGS


def check(model, text):
    return evaluate(model, parse(text, model.signature))


@pytest.fixture
def no_solution(two_binary):
    """X = Y, Y = ¬X: the empty intervention has no solution."""
    return CausalModel.from_functions(two_binary, {
        "X": lambda s: s["Y"],
        "Y": lambda s: "1" if s["X"] == "0" else "0",
    })


@pytest.fixture
def split_contexts(one_context):
    """Copycat under U=0, constants X=1, Y=0 under U=1."""
    return CausalModel.from_functions(one_context, {
        "X": lambda s: s["Y"] if s["U"] == "0" else "1",
        "Y": lambda s: s["X"] if s["U"] == "0" else "0",
    })


def test_box_and_diamond_over_several_solutions():
    model = copycat()
    assert check(model, "[](X()=0 | X()=1)")
    assert not check(model, "[](X()=0) | [](X()=1)")
    assert check(model, "<>(X()=0) & <>(X()=1)")
    assert not check(model, "<>(X()=0 & X()=1)")
    assert check(model, "[](X()=0 -> Y()=0)")
    assert check(model, "[X<-1](Y()=1)")


def test_vacuous_box_and_false_diamond(no_solution):
    assert check(no_solution, "[](X()=0) & [](X()=1)")
    assert check(no_solution, "[](false())")
    assert not check(no_solution, "<>(true())")
    assert check(no_solution, "[X<-0](Y()=1)")


def test_single_solution_fixtures():
    assert check(push_pull(), "[](X()=0 & Y()=0)")
    assert check(push_pull(), "[X<-1](Y()=-1)")
    assert check(mod3(), "[X0<-1](X1()=2 & X2()=0)")


def test_global_choice_across_contexts(split_contexts):
    model = split_contexts
    # U=0 has solutions (0,0) and (1,1); U=1 has the single solution (1,0)
    assert check(model, "[](X(1)=1 & Y(1)=0)")
    assert not check(model, "[](X(0)=1 & X(1)=1)")
    assert check(model, "<>(X(0)=1 & X(1)=1)")
    assert check(model, "[](X(0)=0 -> Y(0)=0)")


def test_vacuity_is_global_over_mentioned_contexts(one_context):
    model = CausalModel.from_functions(one_context, {
        "X": lambda s: s["Y"] if s["U"] == "0" else "1",
        "Y": lambda s: ("1" if s["X"] == "0" else "0") if s["U"] == "0" else "1",
    })
    assert check(model, "[](X(0)=0 & X(1)=0)")
    assert not check(model, "[](X(1)=0)")
    assert not check(model, "<>(X(0)=1 | X(1)=1)")


def test_evaluate_validates(one_context):
    f = parse("[](X(1)=0)", one_context)
    with pytest.raises(ValidationError):
        evaluate(copycat(), f)


def test_checker_exposes_solutions():
    checker = ModelChecker(copycat())
    assert checker.solutions(Intervention.of(), Context(())) == ((0, 0), (1, 1))


def test_affects_on_mod3():
    model = mod3()
    for cause, effect in [("X0", "X1"), ("X1", "X2"), ("X2", "X0")]:
        assert affects(model, cause, effect) is not None
    for cause, effect in [("X1", "X0"), ("X2", "X1"), ("X0", "X2")]:
        assert affects(model, cause, effect) is None


def test_affects_witness_description():
    witness = affects(push_pull(), "X", "Y")
    assert witness.setting == Intervention.of()
    assert (witness.cause_value, witness.before, witness.after) == ("-1", "0", "1")
    assert witness.describe("X", "Y") == "X affects Y: [] X<--1 u=() : Y 0 -> 1"


def test_affects_requires_solutions_by_default(no_solution):
    assert affects(no_solution, "X", "Y") is None
    assert affects(no_solution, "X", "Y", require_solutions=False) is not None


def test_affects_needs_distinct_variables():
    with pytest.raises(ValueError):
        affects(copycat(), "X", "X")


def test_expanded_affects_size(one_context, two_binary):
    expansion = expand_affects(two_binary, "X", "Y")
    assert isinstance(expansion, Or)
    assert len(expansion.operands) == affects_disjuncts(two_binary, "X", "Y") == 4
    assert affects_disjuncts(one_context, "X", "Y") == 8
    with pytest.raises(BudgetExceeded):
        expand_affects(one_context, "X", "Y", budget=5)


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@STANDARD_SETTINGS
def test_expanded_affects_matches_direct_check(seed, one_context):
    model = random_model(one_context, random.Random(seed))
    for y, z in [("X", "Y"), ("Y", "X")]:
        direct = affects(model, y, z) is not None
        literal = affects(model, y, z, require_solutions=False) is not None
        assert evaluate(model, expand_affects(one_context, y, z, guarded=True)) == direct
        assert evaluate(model, expand_affects(one_context, y, z, guarded=False)) == literal


def test_box_lemmas_hold_on_unique_solution_models(two_binary):
    now = Context(())
    lemmas = box_lemmas(Intervention.of({"X": "1"}), Atom("Y", now, "0"), Atom("Y", now, "1"))
    for model in enumerate_models(two_binary, ModelClass.UNIQ):
        assert all(evaluate(model, f) for f in lemmas.values())


def test_box_lemmas_fail_on_copycat():
    now = Context(())
    lemmas = box_lemmas(Intervention.of(), Atom("X", now, "0"), Atom("X", now, "1"))
    assert not evaluate(copycat(), lemmas["or"])
    assert evaluate(copycat(), lemmas["and"])
    assert not evaluate(copycat(), lemmas["not"])
