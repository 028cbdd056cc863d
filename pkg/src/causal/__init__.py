from src.causal.classes import ModelClass, enumerate_models, in_class, is_recursive, is_unique_solutions
from src.causal.errors import BudgetExceeded, CausalError
from src.causal.model import CausalModel, EndoAssignment, MechanismTable, SolutionSet, solve
from src.causal.model_io import dump_model, load_model, load_signature, read_model, read_signature
from src.causal.signature import Context, Intervention, Signature, Variable, sig_size

__all__ = [
    "BudgetExceeded",
    "CausalError",
    "CausalModel",
    "Context",
    "EndoAssignment",
    "Intervention",
    "MechanismTable",
    "ModelClass",
    "Signature",
    "SolutionSet",
    "Variable",
    "dump_model",
    "enumerate_models",
    "in_class",
    "is_recursive",
    "is_unique_solutions",
    "load_model",
    "load_signature",
    "read_model",
    "read_signature",
    "sig_size",
    "solve",
]
