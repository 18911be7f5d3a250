"""Finite structures: echelon types, transport, species of structures.

Everything is exact and finite.  Values are interned and canonically
ordered, types are built from projections by power set and product,
and structures are transported along bijections of the base sets.
Species bundle a typification with a first-order axiom; the package
can enumerate their models, search for isomorphisms, and verify
transportability by bounded exhaustion.
"""

from .values import (
    Atom,
    Int,
    Pair,
    SetV,
    Value,
    cartesian,
    is_subset,
    mk_set,
    powerset,
    render_value,
    set_union,
    value_cmp,
)
from .errors import (
    ApplyUndefined,
    ArityError,
    ArityMismatch,
    CaptureDetected,
    CardinalityMismatch,
    DomainMismatch,
    EvaluationError,
    NotASubset,
    NotAStructureOfType,
    NotBijective,
    ParseError,
    SizeExceeded,
    StructuraError,
    UnboundSymbol,
)
from .limits import Limits, get_limits, limited, set_limits
from .maps import FiniteMap, compose, enumerate_bijections, finite_map, identity_map, invert
from .echelon import (
    EchelonType,
    Pow,
    Prod,
    Proj,
    contains_structure,
    estimated_size,
    realization,
    realize,
)
from .extension import apply_extension, echelon_extend, pow_extend, prod_extend
from .transport import Typification, transport, transport_back
from .logic import (
    And,
    App,
    Const,
    Eq,
    Exists,
    ForAll,
    Formula,
    Fst,
    Iff,
    Implies,
    Member,
    Not,
    Or,
    PairT,
    PowT,
    ProdT,
    PropertySpec,
    SetRef,
    Snd,
    StructRef,
    Term,
    TrueF,
    Var,
    builtin_properties,
    evaluate,
    free_symbols,
    rename_formula,
)
from .species import (
    Counterexample,
    Model,
    Species,
    SweepStats,
    Verdict,
    are_isomorphic,
    builtin_species,
    canonical_carrier,
    canonical_mains,
    check_model,
    check_transportability,
    enumerate_models,
)
from .dsl import (
    parse_formula,
    parse_species,
    parse_type,
    parse_value,
    pretty_formula,
    pretty_species,
    pretty_term,
    pretty_type,
    pretty_value,
)

__version__ = "0.1.0"

__all__ = [
    "And", "App", "ApplyUndefined", "ArityError", "ArityMismatch", "Atom",
    "CaptureDetected", "CardinalityMismatch", "Const", "Counterexample",
    "DomainMismatch", "EchelonType", "Eq", "EvaluationError", "Exists",
    "FiniteMap", "ForAll", "Formula", "Fst", "Iff", "Implies", "Int",
    "Limits", "Member", "Model", "Not", "NotASubset", "NotAStructureOfType",
    "NotBijective", "Or", "Pair", "PairT", "ParseError", "Pow", "PowT",
    "Prod", "ProdT", "Proj", "PropertySpec", "SetRef", "SetV",
    "SizeExceeded", "Snd", "Species", "StructRef", "StructuraError",
    "SweepStats", "Term", "TrueF", "Typification", "UnboundSymbol", "Value",
    "Var", "Verdict",
    "apply_extension", "are_isomorphic", "builtin_properties",
    "builtin_species", "canonical_carrier", "canonical_mains", "cartesian",
    "check_model", "check_transportability", "compose", "contains_structure",
    "echelon_extend", "enumerate_bijections", "enumerate_models",
    "estimated_size", "evaluate", "finite_map", "free_symbols", "get_limits",
    "identity_map", "invert", "is_subset", "limited", "mk_set", "parse_formula",
    "parse_species", "parse_type", "parse_value", "pow_extend", "powerset",
    "pretty_formula", "pretty_species", "pretty_term", "pretty_type",
    "pretty_value", "prod_extend", "realization", "realize", "render_value",
    "rename_formula", "set_limits", "set_union", "transport",
    "transport_back", "value_cmp",
]
