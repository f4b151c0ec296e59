"""Kernel and principal-type inference for an extended calculus of
constructions: impredicative Prop, a cumulative predicative Type
hierarchy, Pi types, and strong Sigma types.
"""

from .counterexamples import descending_chain, level_transfer_triple, self_application
from .cumulativity import (
    min_subtype_level,
    strict_subtype,
    subtype,
    subtype_at_level,
    universe_level,
)
from .inference import (
    CUMULATIVITY_VIOLATION,
    INVALID_CONTEXT,
    NOT_A_FUNCTION,
    NOT_A_PAIR,
    NOT_A_UNIVERSE,
    UNBOUND_VARIABLE,
    InferOutcome,
    Trace,
    TypeCheckError,
    check_context,
    check_type,
    infer_type,
    infer_universe,
)
from .kernel import (
    AlgDerivation,
    Derivation,
    DerivationError,
    principal_of,
    to_full,
    trace_to_derivation,
    type_typing,
    universe_derivation,
    verify,
)
from .reduction import DEFAULT_FUEL, Fuel, FuelExhausted, conv, normalize, step, whnf
from .stratify import StratClass, StratKind, classify, measure
from .surface import ParseError, parse_context, parse_term, print_term
from .terms import (
    PROP,
    App,
    Context,
    Judgment,
    Lam,
    Pair,
    Pi,
    Proj1,
    Proj2,
    Prop,
    Sigma,
    Term,
    Type,
    Var,
    alpha_eq,
    free_vars,
    fresh_name,
    subst,
)

__all__ = [
    "App",
    "AlgDerivation",
    "CUMULATIVITY_VIOLATION",
    "Context",
    "DEFAULT_FUEL",
    "Derivation",
    "DerivationError",
    "Fuel",
    "FuelExhausted",
    "INVALID_CONTEXT",
    "InferOutcome",
    "Judgment",
    "Lam",
    "NOT_A_FUNCTION",
    "NOT_A_PAIR",
    "NOT_A_UNIVERSE",
    "PROP",
    "Pair",
    "ParseError",
    "Pi",
    "Proj1",
    "Proj2",
    "Prop",
    "Sigma",
    "StratClass",
    "StratKind",
    "Term",
    "Trace",
    "Type",
    "TypeCheckError",
    "UNBOUND_VARIABLE",
    "Var",
    "alpha_eq",
    "check_context",
    "check_type",
    "classify",
    "conv",
    "descending_chain",
    "free_vars",
    "fresh_name",
    "infer_type",
    "infer_universe",
    "level_transfer_triple",
    "measure",
    "min_subtype_level",
    "normalize",
    "parse_context",
    "parse_term",
    "principal_of",
    "print_term",
    "self_application",
    "step",
    "strict_subtype",
    "subst",
    "subtype",
    "subtype_at_level",
    "to_full",
    "trace_to_derivation",
    "type_typing",
    "universe_derivation",
    "universe_level",
    "verify",
    "whnf",
]
