"""Exact computations with resolution graphs, splice diagrams and splice-quotient singularities."""

from .congruence import (
    assemble_splice_quotient,
    check_congruence_conditions,
    classify,
    classify_diagram,
    classify_graph,
    verify_congruence_certificate,
)
from .equations import (
    admissible_monomials,
    brieskorn_uac,
    format_equations,
    generate_splice_equations,
    hamm_matrix,
)
from .errors import ConditionError, ConsistencyError, DomainError, ParseError, SpliceKitError
from .graph import (
    PlumbingGraph,
    build_star_graph,
    cf_contract,
    cf_expand,
    intersection_matrix,
    parse_graph,
    validate_resolution_graph,
)
from .lattice import character_of_monomial, discriminant_group, dual_pairing, leaf_representation
from .splice import (
    SpliceDiagram,
    check_semigroup_conditions,
    edge_determinant,
    parse_splice,
    resolution_to_splice,
    semigroup_member,
    splice_cut,
    splice_join,
    validate_splice_diagram,
    weight_system,
)

__version__ = "0.1.0"
