import logging
import random

import pytest
from hypothesis import given, strategies as st

from src.causal.classes import is_recursive
from src.causal.errors import MalformedCnf
from src.logic.printer import print_formula
from src.tools.enum_sat_solver import sat_enum
from src.tools.model_checker import evaluate
from src.tools.rec_sat_solver import sat_rec
from src.tools.reductions import (
    CnfInstance,
    Conj,
    Disj,
    Neg,
    Var,
    cnf_satisfiable,
    cnf_to_lgp,
    dump_dimacs,
    load_dimacs,
    prop_satisfiable,
    prop_to_luniq,
    read_dimacs,
)
from tests.settings import ORACLE_SETTINGS, QUICK_SETTINGS

SAMPLE = CnfInstance(3, ((1, 2, -3), (-1, 3, 2), (-2, -3, 1)))


def random_cnf(rng: random.Random, width: int = None) -> CnfInstance:
    n = rng.randint(1, 3)
    clauses = []
    for _ in range(rng.randint(1, 4)):
        k = rng.randint(1, 3) if width is None else width
        clauses.append(tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(k)))
    return CnfInstance(n, tuple(clauses))


def random_prop(rng: random.Random, n: int, depth: int = 3):
    if depth == 0 or rng.random() < 0.3:
        return Var(rng.randint(1, n))
    kind = rng.choice(("neg", "conj", "disj"))
    if kind == "neg":
        return Neg(random_prop(rng, n, depth - 1))
    operands = tuple(random_prop(rng, n, depth - 1) for _ in range(rng.randint(1, 3)))
    return Conj(operands) if kind == "conj" else Disj(operands)


# ================== DIMACS ==================
def test_read_sample(fixtures_dir):
    cnf = read_dimacs(fixtures_dir / "sample.cnf")
    assert cnf == SAMPLE
    assert cnf.is_3cnf
    assert load_dimacs(dump_dimacs(cnf)) == cnf
    assert len(read_dimacs(fixtures_dir / "unsat.cnf").clauses) == 8


def test_dump_format():
    assert dump_dimacs(CnfInstance(2, ((1, -2), (2,)))) == "p cnf 2 2\n1 -2 0\n2 0\n"


def test_clauses_may_span_lines_and_stop_at_percent():
    cnf = load_dimacs("c split\np cnf 3 2\n1 2\n-3 0 2\n0\n%\n0\n")
    assert cnf.clauses == ((1, 2, -3), (2,))


def test_unterminated_last_clause_is_accepted(caplog):
    with caplog.at_level(logging.WARNING):
        cnf = load_dimacs("p cnf 2 1\n1 -2\n")
    assert cnf.clauses == ((1, -2),)
    assert "not terminated" in caplog.text


@pytest.mark.parametrize(
    "text, message",
    [
        ("1 2 0\n", "line 1: clause before the 'p cnf' header"),
        ("c only a comment\n", "missing 'p cnf' header"),
        ("p cnf 2\n", "line 1: bad problem line 'p cnf 2'"),
        ("p dnf 2 1\n1 0\n", "line 1: bad problem line 'p dnf 2 1'"),
        ("p cnf 2 1\np cnf 2 1\n", "line 2: bad problem line 'p cnf 2 1'"),
        ("p cnf 2 1\n1 x 0\n", "line 2: 'x' is not a literal"),
        ("p cnf 2 2\n1 0\n", "header declares 2 clause(s), found 1"),
        ("p cnf 2 1\n1 3 0\n", "clause 1: literal 3 outside 1..2"),
    ],
)
def test_malformed_dimacs(text, message):
    with pytest.raises(MalformedCnf) as caught:
        load_dimacs(text)
    assert str(caught.value) == message


# ================== EMBEDDINGS ==================
def test_cnf_gadgets_print():
    f, sig = cnf_to_lgp(SAMPLE)
    assert sig.endo_names == ("X1", "X2", "X3", "Y1", "Y2", "Y3")
    assert print_formula(f) == (
        "[](Y1()=1 & Y2()=1 & Y3()=1)"
        " & [X1<-0;X2<-0;X3<-1](Y1()=0)"
        " & [X1<-1;X2<-0;X3<-0](Y2()=0)"
        " & [X1<-0;X2<-1;X3<-1](Y3()=0)"
    )


def test_degenerate_clauses():
    f, _ = cnf_to_lgp(CnfInstance(2, ((1, -1, 2), (2, 2, 2))))
    assert print_formula(f) == "[](Y1()=1 & Y2()=1) & [X2<-0](Y2()=0)"
    f, _ = cnf_to_lgp(CnfInstance(2, ((1, -1), (2,))), require_3cnf=False)
    assert print_formula(f) == "[](Y1()=1 & Y2()=1) & [X2<-0](Y2()=0)"
    empty, sig = cnf_to_lgp(CnfInstance(1, ()))
    assert print_formula(empty) == "[](true())"
    assert sig.endo_names == ("X1",)


def test_sample_is_satisfiable_in_rec():
    f, sig = cnf_to_lgp(SAMPLE)
    witness = sat_rec(f, sig)
    assert witness.satisfiable
    assert evaluate(witness.model, f)
    assert is_recursive(witness.model) is not None


def test_all_sign_patterns_are_unsatisfiable(fixtures_dir):
    cnf = read_dimacs(fixtures_dir / "unsat.cnf")
    assert not cnf_satisfiable(cnf)
    f, sig = cnf_to_lgp(cnf)
    assert not sat_rec(f, sig).satisfiable


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@ORACLE_SETTINGS
def test_cnf_embedding_matches_truth_tables(seed):
    rng = random.Random(seed)
    cnf = random_cnf(rng, width=3)
    f, sig = cnf_to_lgp(cnf)
    assert sat_rec(f, sig).satisfiable == cnf_satisfiable(cnf)
    mixed = random_cnf(rng)
    f, sig = cnf_to_lgp(mixed, require_3cnf=False)
    assert sat_rec(f, sig).satisfiable == cnf_satisfiable(mixed)


@pytest.mark.parametrize("clauses, width", [(((1, 2, 3), (1, -2)), 2), (((1,),), 1), (((1, 2, -1, 2),), 4)])
def test_embedding_expects_three_literals_per_clause(clauses, width):
    cnf = CnfInstance(3, clauses)
    with pytest.raises(MalformedCnf) as caught:
        cnf_to_lgp(cnf)
    assert f"has {width} literal(s), expected 3" in str(caught.value)
    cnf_to_lgp(cnf, require_3cnf=False)


def test_prop_embedding_prints():
    f, sig = prop_to_luniq(Conj((Var(1), Neg(Disj((Var(2), Var(3)))))))
    assert sig.endo_names == ("X1", "X2", "X3")
    assert print_formula(f) == "[](X1()=1) & !([](X2()=1) | [](X3()=1))"
    padded, sig = prop_to_luniq(Var(1), num_vars=2)
    assert print_formula(padded) == "[](X1()=1)"
    assert sig.endo_names == ("X1", "X2")


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@ORACLE_SETTINGS
def test_prop_embedding_in_rec_matches_truth_tables(seed):
    prop = random_prop(random.Random(seed), n=3)
    f, sig = prop_to_luniq(prop, num_vars=3)
    assert sat_rec(f, sig).satisfiable == prop_satisfiable(prop, 3)


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@QUICK_SETTINGS
def test_prop_embedding_in_uniq_matches_truth_tables(seed):
    prop = random_prop(random.Random(seed), n=2)
    f, sig = prop_to_luniq(prop, num_vars=2)
    assert sat_enum(f, sig, "UNIQ").satisfiable == prop_satisfiable(prop, 2)
