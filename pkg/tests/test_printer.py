import random

import pytest
from hypothesis import given, strategies as st

from src.logic.parser import parse
from src.logic.printer import print_formula
from tests.helpers import random_formula
from tests.settings import STANDARD_SETTINGS


@pytest.mark.parametrize(
    "text",
    [
        "[X<-1](Y()=0)",
        "[](X()=0) & [](Y()=1)",
        "<X<-0;Y<-1>(X()=0 | !(Y()=1) & true())",
        "[](!(X()=0))",
        "![](X()=0)",
        "([](X()=0) | [](X()=1)) & [](Y()=0)",
        "[](X()=0) | [](X()=1) & [](Y()=0)",
        "[](X()=0) -> [](X()=1) -> [](Y()=0)",
        "([](X()=0) -> [](X()=1)) -> [](Y()=0)",
        "[](X()=0) <-> [](X()=1) <-> [](Y()=0)",
        "[](X()=0) <-> ([](X()=1) <-> [](Y()=0))",
        "[](false())",
    ],
)
def test_canonical_text_is_a_fixed_point(text, two_binary):
    assert print_formula(parse(text, two_binary)) == text


def test_not_equal_prints_as_negated_atom(two_binary):
    assert print_formula(parse("[](X()!=1)", two_binary)) == "[](!(X()=1))"


def test_contexts_print_positionally(one_context):
    assert print_formula(parse("[ ](X( 1 )=0 & Y(0)=1)", one_context)) == "[](X(1)=0 & Y(0)=1)"


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@STANDARD_SETTINGS
def test_parse_inverts_print(seed, one_context):
    f = random_formula(one_context, random.Random(seed), depth=3, inner_depth=2)
    assert parse(print_formula(f), one_context) == f
