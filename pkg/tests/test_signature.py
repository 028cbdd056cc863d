import pytest

from src.causal.errors import DuplicateInterventionTarget, InvalidContext, InvalidIntervention, SignatureError
from src.causal.fixtures import binary_signature
from src.causal.signature import Context, Intervention, Signature, Variable, sig_size


def test_variable_rejects_short_or_duplicate_ranges():
    with pytest.raises(SignatureError):
        Variable("X", ("0",))
    with pytest.raises(SignatureError):
        Variable("X", ("0", "0"))
    with pytest.raises(SignatureError):
        Variable("true", ("0", "1"))
    with pytest.raises(SignatureError):
        Variable("X", ("0", "a b"))


def test_signature_rejects_duplicate_names():
    with pytest.raises(SignatureError):
        Signature.of({"X": ("0", "1")}, {"X": ("0", "1")})


def test_contexts_are_lexicographic():
    sig = Signature.of({"U": ("0", "1"), "W": ("a", "b", "c")}, {"X": ("0", "1")})
    contexts = list(sig.contexts())
    assert sig.num_contexts == 6
    assert contexts[0] == Context(("0", "a"))
    assert contexts[1] == Context(("0", "b"))
    assert contexts[-1] == Context(("1", "c"))


def test_no_exogenous_means_one_empty_context(two_binary):
    assert list(two_binary.contexts()) == [Context(())]
    assert two_binary.num_contexts == 1


def test_check_context(one_context):
    one_context.check_context(Context(("1",)))
    with pytest.raises(InvalidContext):
        one_context.check_context(Context(()))
    with pytest.raises(InvalidContext):
        one_context.check_context(Context(("2",)))


def test_intervention_text_and_canonical_order(three_binary):
    iv = Intervention.of([("Z", "1"), ("X", "0")])
    assert str(iv) == "Z<-1;X<-0"
    assert str(iv.canonical(three_binary)) == "X<-0;Z<-1"
    assert str(Intervention.of()) == ""
    assert Intervention.of({"Y": "1"}).extend("X", "0").as_dict() == {"Y": "1", "X": "0"}


def test_intervention_rejects_repeated_target():
    with pytest.raises(DuplicateInterventionTarget):
        Intervention.of([("X", "0"), ("X", "1")])


def test_check_intervention(two_binary):
    two_binary.check_intervention(Intervention.of({"X": "1"}))
    with pytest.raises(InvalidIntervention):
        two_binary.check_intervention(Intervention.of({"Q": "1"}))
    with pytest.raises(InvalidIntervention):
        two_binary.check_intervention(Intervention.of({"X": "2"}))


def test_interventions_enumerates_every_assignment(three_binary):
    settings = [str(iv) for iv in three_binary.interventions(["X", "Z"])]
    assert settings == ["X<-0;Z<-0", "X<-0;Z<-1", "X<-1;Z<-0", "X<-1;Z<-1"]
    assert [str(iv) for iv in three_binary.interventions([])] == [""]


def test_sig_size_and_describe():
    sig = binary_signature(["X", "Y", "Z"], exogenous=["U"])
    assert sig_size(sig) == 8
    assert sig.describe() == [
        "exogenous U : 0 1",
        "endogenous X : 0 1",
        "endogenous Y : 0 1",
        "endogenous Z : 0 1",
    ]
