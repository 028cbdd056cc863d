import random

import pytest
from hypothesis import given, strategies as st

from src.causal.classes import ModelClass, is_recursive
from src.causal.errors import BudgetExceeded, ValidationError
from src.causal.fixtures import push_pull, xor3
from src.causal.signature import Context, Intervention
from src.logic.ast import And
from src.logic.parser import parse
from src.tools.enum_sat_solver import sat_enum
from src.tools.model_checker import evaluate, expand_affects
from src.tools.rec_sat_solver import RelevantPair, Verdict, relevant_pairs, sat_rec
from tests.helpers import random_formula
from tests.settings import ORACLE_SETTINGS


def test_relevant_pairs_are_canonical_and_deduplicated(two_binary):
    f = parse("[Y<-1;X<-0](X()=0) & [](Y()=1 | X()=0) & [X<-0;Y<-1](Y()=0)", two_binary)
    pairs = relevant_pairs(f, two_binary)
    assert pairs == (
        RelevantPair(Intervention((("X", "0"), ("Y", "1"))), Context(())),
        RelevantPair(Intervention(()), Context(())),
    )
    assert str(pairs[0]) == "[X<-0;Y<-1]()"
    assert relevant_pairs(f) == pairs


def test_relevant_pairs_per_context(one_context):
    f = parse("<>(X(0)=1 & Y(1)=0)", one_context)
    assert [p.u for p in relevant_pairs(f, one_context)] == [Context(("0",)), Context(("1",))]


def test_contradictory_boxes_are_unsatisfiable(two_binary):
    witness = sat_rec(parse("[](X()=0) & [](X()=1)", two_binary), two_binary)
    assert witness.verdict is Verdict.UNSAT
    assert witness.model is None


def test_witness_is_recursive_and_verified(two_binary):
    f = parse("[](X()=0) & [X<-1](Y()=1) & [X<-0](Y()=0)", two_binary)
    witness = sat_rec(f, two_binary)
    assert witness.satisfiable
    assert evaluate(witness.model, f)
    assert is_recursive(witness.model) is not None
    assert witness.order.index("X") < witness.order.index("Y")
    now = Context(())
    solution = witness.pair_solutions[RelevantPair(Intervention((("X", "1"),)), now)]
    assert solution["Y"] == "1"


def test_witness_is_over_the_original_signature(three_binary):
    f = parse("[Z<-1](X()=1) & [Z<-0](X()=0)", three_binary)
    witness = sat_rec(f, three_binary)
    assert witness.model.signature == three_binary
    assert evaluate(witness.model, f)


def test_mutual_influence_needs_a_cycle():
    sig = push_pull().signature
    f = And((expand_affects(sig, "X", "Y"), expand_affects(sig, "Y", "X")))
    assert evaluate(push_pull(), f)
    assert not sat_rec(f, sig).satisfiable
    assert sat_enum(f, sig, ModelClass.UNIQ).satisfiable


def test_two_solutions_cannot_come_from_a_recursive_model():
    sig = xor3().signature
    f = parse("<X<-0>(Y()=0) & <X<-0>(Y()=1)", sig)
    assert not sat_rec(f, sig).satisfiable


def test_search_budget(two_binary):
    f = parse("[](X()=0) & [X<-1](Y()=1)", two_binary)
    with pytest.raises(BudgetExceeded):
        sat_rec(f, two_binary, budget=1)


def test_formula_must_fit_the_signature(two_binary, one_context):
    with pytest.raises(ValidationError):
        sat_rec(parse("[](X(0)=1)", one_context), two_binary)


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@ORACLE_SETTINGS
def test_search_agrees_with_enumeration(seed, one_context):
    f = random_formula(one_context, random.Random(seed), inner_depth=2)
    expected = sat_enum(f, one_context, ModelClass.REC, reduction="none").satisfiable
    witness = sat_rec(f, one_context)
    assert witness.satisfiable == expected
    if witness.satisfiable:
        assert evaluate(witness.model, f)
        assert is_recursive(witness.model) is not None


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@ORACLE_SETTINGS
def test_search_agrees_with_enumeration_over_three_variables(seed, three_binary):
    f = random_formula(three_binary, random.Random(seed))
    expected = sat_enum(f, three_binary, ModelClass.REC, reduction="none").satisfiable
    witness = sat_rec(f, three_binary)
    assert witness.satisfiable == expected
    if witness.satisfiable:
        assert evaluate(witness.model, f)
        assert is_recursive(witness.model) is not None
