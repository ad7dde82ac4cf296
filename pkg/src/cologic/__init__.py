"""Finite model theory for contact algebras.

The package works entirely at desk scale: finite reflexive graphs stand in
for pre-spaces, their powerset contact algebras stand in for the regular
closed sets of a compactum, and the classical lemmas about covers,
refinements and types become exhaustive finite checks.
"""

from cologic.algebra import (
    ContactAlgebra,
    EmptyPreSpaceError,
    contact_from_graph,
    delta,
    quotient_by_blocks,
    stone_prespace,
    ultrafilters,
    verify_contact_axioms,
)
from cologic.covers import (
    Arrangement,
    CoveringWalkError,
    arrangement_of,
    common_refinement,
    consolidate,
    enumerate_covering_walks,
    enumerate_good_tuples,
    follows,
    is_chain,
    is_covering_walk,
    is_good_tuple,
    nerve,
    refinements_following,
    walk_induced_surjection,
)
from cologic.formulas import (
    Bottom,
    Exists,
    Formula,
    GraphAtom,
    Not,
    Or,
    ParseError,
    parse,
    print_formula,
)
from cologic.fraisse import (
    FraisseSequence,
    amalgamate,
    build_fraisse_sequence,
    chain_following_pattern,
    chain_refinement,
    chain_type_report,
    common_refinement_linear,
    enumerate_patterns,
    example_gn,
    example_gn_epi,
    extension_property_audit,
    is_is_epi,
    is_pattern_epi,
)
from cologic.graphs import FiniteGraph, GraphFormatError, linear_graph
from cologic.limits import SizeGuardError, max_atoms
from cologic.semantics import (
    back_and_forth,
    check_sentence,
    ef_equivalent,
    find_model,
    generated_substructure_check,
    nerve_generates_type,
    satisfies,
    type_fingerprint,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "Bottom",
    "ContactAlgebra",
    "CoveringWalkError",
    "EmptyPreSpaceError",
    "Exists",
    "FiniteGraph",
    "Formula",
    "FraisseSequence",
    "GraphAtom",
    "GraphFormatError",
    "Not",
    "Or",
    "ParseError",
    "SizeGuardError",
    "amalgamate",
    "arrangement_of",
    "back_and_forth",
    "build_fraisse_sequence",
    "chain_following_pattern",
    "chain_refinement",
    "chain_type_report",
    "check_sentence",
    "common_refinement",
    "common_refinement_linear",
    "consolidate",
    "contact_from_graph",
    "delta",
    "ef_equivalent",
    "enumerate_covering_walks",
    "enumerate_good_tuples",
    "enumerate_patterns",
    "example_gn",
    "example_gn_epi",
    "extension_property_audit",
    "find_model",
    "follows",
    "generated_substructure_check",
    "is_chain",
    "is_covering_walk",
    "is_good_tuple",
    "is_is_epi",
    "is_pattern_epi",
    "linear_graph",
    "max_atoms",
    "nerve",
    "nerve_generates_type",
    "parse",
    "print_formula",
    "quotient_by_blocks",
    "refinements_following",
    "satisfies",
    "stone_prespace",
    "type_fingerprint",
    "ultrafilters",
    "verify_contact_axioms",
    "walk_induced_surjection",
]
