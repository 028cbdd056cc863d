import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from src.causal.errors import BudgetExceeded, ValidationError
from src.causal.fixtures import chain, constant_model, copycat, mod3, push_pull, xor3
from src.causal.model import CausalModel, MechanismTable, solve, solve_in_order
from src.causal.signature import Context, Intervention
from tests.helpers import random_intervention, random_model
from tests.settings import STANDARD_SETTINGS

EMPTY = Intervention.of()


def solutions(model, iv=EMPTY, u=Context(())):
    return [s.as_dict() for s in solve(model, iv, u)]


def test_push_pull_has_a_unique_solution():
    model = push_pull()
    assert solutions(model) == [{"X": "0", "Y": "0"}]
    assert solutions(model, Intervention.of({"X": "1"})) == [{"X": "1", "Y": "-1"}]


def test_copycat_has_two_solutions():
    assert solutions(copycat()) == [{"X": "0", "Y": "0"}, {"X": "1", "Y": "1"}]


def test_xor3_solution_counts():
    model = xor3()
    assert len(solve(model, EMPTY, Context(()))) == 4
    assert len(solve(model, Intervention.of({"X": "1"}), Context(()))) == 2
    assert solutions(model, Intervention.of({"X": "1", "Y": "0"})) == [{"X": "1", "Y": "0", "Z": "1"}]


def test_mod3_interventions():
    model = mod3()
    assert solutions(model) == [{"X0": "0", "X1": "0", "X2": "0"}]
    assert solutions(model, Intervention.of({"X0": "1"})) == [{"X0": "1", "X1": "2", "X2": "0"}]


def test_no_solution_model(two_binary):
    model = CausalModel.from_functions(two_binary, {
        "X": lambda s: s["Y"],
        "Y": lambda s: "1" if s["X"] == "0" else "0",
    })
    result = solve(model, EMPTY, Context(()))
    assert len(result) == 0
    assert str(result) == "(no solutions)"


def test_full_intervention_fixes_everything():
    iv = Intervention.of({"X": "1", "Y": "0", "Z": "1"})
    assert solutions(xor3(), iv) == [{"X": "1", "Y": "0", "Z": "1"}]


def test_exogenous_context_feeds_mechanisms(one_context):
    model = chain(one_context)
    assert solutions(model, u=Context(("1",))) == [{"X": "1", "Y": "1"}]
    assert solutions(model, u=Context(("0",))) == [{"X": "0", "Y": "0"}]


def test_solve_in_order_matches_solve(three_binary):
    model = chain(three_binary)
    iv = Intervention.of({"Y": "1"})
    expected = solve(model, iv, Context(())).solutions[0]
    assert solve_in_order(model, ("X", "Y", "Z"), iv, Context(())) == expected


def test_solve_budget():
    with pytest.raises(BudgetExceeded):
        solve(xor3(), EMPTY, Context(()), budget=4)


def test_mechanism_validation(two_binary):
    good = constant_model(two_binary)
    with pytest.raises(ValidationError):
        CausalModel(two_binary, good.mechanisms[:1])
    short = MechanismTable("X", ("Y",), ("0",))
    with pytest.raises(ValidationError):
        CausalModel(two_binary, (short, good.mechanisms[1]))
    outside = MechanismTable("X", ("Y",), ("0", "7"))
    with pytest.raises(ValidationError):
        CausalModel(two_binary, (outside, good.mechanisms[1]))


def test_apply_reads_inputs_by_name():
    model = push_pull()
    assert model.apply("Y", {"X": "1"}) == "-1"
    assert model.apply("X", {"Y": "-1"}) == "-1"


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@STANDARD_SETTINGS
def test_solutions_are_exactly_the_fixed_points(seed, one_context):
    rng = random.Random(seed)
    model = random_model(one_context, rng)
    iv = random_intervention(one_context, rng)
    u = rng.choice(list(one_context.contexts()))
    fixed = iv.as_dict()

    expected = []
    for values in product(*(one_context.range_of(n) for n in one_context.endo_names)):
        state = dict(zip(one_context.endo_names, values))
        state.update(zip(one_context.exo_names, u.values))
        if any(state[n] != v for n, v in fixed.items()):
            continue
        if all(model.apply(n, state) == state[n] for n in one_context.endo_names if n not in fixed):
            expected.append({n: state[n] for n in one_context.endo_names})

    assert solutions(model, iv, u) == expected
