"""
causal/fixtures.py

Small named models used throughout the worked examples and the tests
"""

from typing import Dict, Sequence

from src.causal.model import CausalModel
from src.causal.signature import Signature

BINARY = ("0", "1")
TERNARY = ("0", "1", "2")
SIGNED = ("-1", "0", "1")


def binary_signature(endogenous: Sequence[str], exogenous: Sequence[str] = ()) -> Signature:
    return Signature.of([(n, BINARY) for n in exogenous], [(n, BINARY) for n in endogenous])


def push_pull() -> CausalModel:
    """X = Y and Y = −X over {-1, 0, 1}."""
    sig = Signature.of({}, {"X": SIGNED, "Y": SIGNED})
    negate = {"-1": "1", "0": "0", "1": "-1"}
    return CausalModel.from_functions(sig, {
        "X": lambda s: s["Y"],
        "Y": lambda s: negate[s["X"]],
    })


def copycat() -> CausalModel:
    """X = Y and Y = X over binary ranges; both (0,0) and (1,1) solve it."""
    sig = binary_signature(["X", "Y"])
    return CausalModel.from_functions(sig, {"X": lambda s: s["Y"], "Y": lambda s: s["X"]})


def mod3() -> CausalModel:
    """X_i = 2 if X_{i-1 mod 3} = 1 else 0, over {0, 1, 2}.

    Unique solutions everywhere, not recursive, and X0 ⇝ X1 ⇝ X2 ⇝ X0.
    Each X_i reads its predecessor so the influence cycle runs in that
    direction (DESIGN.md, "mod3 influence edges").
    """
    names = ["X0", "X1", "X2"]
    sig = Signature.of({}, {n: TERNARY for n in names})
    functions = {
        name: (lambda source: (lambda s: "2" if s[source] == "1" else "0"))(names[(i - 1) % 3])
        for i, name in enumerate(names)
    }
    return CausalModel.from_functions(sig, functions)


def xor3() -> CausalModel:
    """Each of X, Y, Z is the sum mod 2 of the other two."""
    sig = binary_signature(["X", "Y", "Z"])

    def xor(a: str, b: str) -> str:
        return str((int(a) + int(b)) % 2)

    return CausalModel.from_functions(sig, {
        "X": lambda s: xor(s["Y"], s["Z"]),
        "Y": lambda s: xor(s["X"], s["Z"]),
        "Z": lambda s: xor(s["X"], s["Y"]),
    })


def constant_model(sig: Signature, values: Dict[str, str] = None) -> CausalModel:
    """Every mechanism constant; defaults to the first value of each range."""
    values = values or {}
    return CausalModel.from_functions(
        sig, {n: (lambda v: (lambda s: v))(values.get(n, sig.range_of(n)[0])) for n in sig.endo_names}
    )


def chain(sig: Signature) -> CausalModel:
    """Each endogenous variable copies its predecessor; the first copies the
    first exogenous variable when there is one, otherwise it is constant."""
    names = sig.endo_names
    functions = {}
    for i, name in enumerate(names):
        if i > 0:
            functions[name] = (lambda prev: (lambda s: s[prev]))(names[i - 1])
        elif sig.exo_names:
            first = sig.exo_names[0]
            functions[name] = lambda s: s[first]
        else:
            functions[name] = (lambda v: (lambda s: v))(sig.range_of(name)[0])
    return CausalModel.from_functions(sig, functions)


FIXTURES = {
    "push-pull": push_pull,
    "copycat": copycat,
    "mod3": mod3,
    "xor3": xor3,
}
