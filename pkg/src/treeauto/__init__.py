"""Tree automorphisms as finite-state machines, and what groups of them do.

The core value type is Automorphism, a minimized canonical-form machine;
equal behavior means equal value.  Everything else builds on that: word
evaluation, activity growth, singular measures, nucleus closures, germs
at rays, level graphs with Folner candidates, and relator searches.
"""

from .activity import (
    ActivityClass,
    BoundedClosureReport,
    DirectionSet,
    classify_activity,
    directions,
    empirical_measure_sequence,
    is_bounded_closed_under_product,
    singular_measure,
    theta,
    theta_relative,
    theta_sequence,
)
from .catalog import (
    CatalogEntry,
    builtin,
    decode_integer,
    encode_integer,
    entry,
    integer_tree_crosscheck,
    tullio_integer_action,
)
from .core import (
    Automorphism,
    BoundaryPoint,
    BudgetExceeded,
    apply,
    apply_boundary,
    compose,
    evaluate_word,
    identity,
    invert,
    is_identity,
    minimize,
    section,
    vertex,
)
from .freeness import (
    FaithfulnessProbe,
    RelationReport,
    StabilizerSample,
    TrichotomyEvidence,
    find_relations,
    free_subgroup_certificate,
    germ_faithfulness_probe,
    kernel_witness_commutator,
    kernel_witness_power,
    stabilizer_search,
)
from .machine_io import MachineParseError, dump_machine, parse_machine, parse_machine_file
from .nucleus import (
    GermGroupReport,
    NucleusResult,
    SelfSimilarityReport,
    ball,
    germ_group,
    germ_is_trivial,
    is_self_similar,
    limit_states,
    nucleus,
    stabilizes,
)
from .schreier import (
    FolnerReport,
    SchreierGraph,
    folner_candidate,
    gamma_prime_components,
    isoperimetric_profile,
    orbit,
    schreier_graph,
    symmetrize,
)
from .words import Word, commutator

__all__ = [
    "ActivityClass",
    "Automorphism",
    "BoundaryPoint",
    "BoundedClosureReport",
    "BudgetExceeded",
    "CatalogEntry",
    "DirectionSet",
    "FaithfulnessProbe",
    "FolnerReport",
    "GermGroupReport",
    "MachineParseError",
    "NucleusResult",
    "RelationReport",
    "SchreierGraph",
    "SelfSimilarityReport",
    "StabilizerSample",
    "TrichotomyEvidence",
    "Word",
    "apply",
    "apply_boundary",
    "ball",
    "builtin",
    "classify_activity",
    "commutator",
    "compose",
    "decode_integer",
    "directions",
    "dump_machine",
    "empirical_measure_sequence",
    "encode_integer",
    "entry",
    "evaluate_word",
    "find_relations",
    "folner_candidate",
    "free_subgroup_certificate",
    "gamma_prime_components",
    "germ_faithfulness_probe",
    "germ_group",
    "germ_is_trivial",
    "identity",
    "integer_tree_crosscheck",
    "invert",
    "is_bounded_closed_under_product",
    "is_identity",
    "is_self_similar",
    "isoperimetric_profile",
    "kernel_witness_commutator",
    "kernel_witness_power",
    "limit_states",
    "minimize",
    "nucleus",
    "orbit",
    "parse_machine",
    "parse_machine_file",
    "schreier_graph",
    "section",
    "singular_measure",
    "stabilizer_search",
    "stabilizes",
    "symmetrize",
    "theta",
    "theta_relative",
    "theta_sequence",
    "tullio_integer_action",
    "vertex",
]
