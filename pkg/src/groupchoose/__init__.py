"""Exact solver and verification toolkit for group choosability and
edge-group choosability of graphs at desk scale."""

from .graphs import (
    Graph,
    GraphError,
    blocks,
    blocks_all_complete_or_cycle,
    chromatic_index,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    cycle_spectrum,
    degeneracy_order,
    find_2_alternating_cycle,
    has_minor,
    k23_plus,
    line_graph,
    min_degree_sum_edge,
    path_graph,
    star_graph,
)
from .graph6 import Graph6Error, decode_graph6, encode_graph6
from .generate import are_isomorphic, canonical_form, generate_connected_graphs
from .groups import (
    AbelianGroup,
    GroupElement,
    GroupError,
    enumerate_abelian_groups,
    k_subsets_containing_zero,
    make_group,
    parse_group,
)
from .plane import (
    Face,
    PlanarityError,
    PlaneGraph,
    clusters,
    embed_small,
    faces,
    find_k_net_or_hole,
    has_outerplanar_embedding,
    is_outerplanar,
    m_v,
    parse_rotation_system,
    format_rotation_system,
)
from .match import ConfigurationMatch
from .solver import (
    ALColorability,
    BudgetExceededError,
    ChoiceNumberResult,
    DGroupResult,
    HoldsByTheorem,
    ListAssignment,
    NoRefutationFound,
    ReducibilityResult,
    RefutedWithWitness,
    ShiftAssignment,
    SolverError,
    Verdict,
    VerifiedUpToBound,
    check_reducible,
    edge_group_choice_number_bounded,
    find_coloring,
    group_choice_number_bounded,
    is_AL_colorable,
    is_D_group_choosable_bounded,
    is_edge_k_group_choosable_bounded,
    is_k_group_choosable_bounded,
    kernelize_low_degree,
    normalize_shift,
)
from .detectors import (
    CATALOG,
    LEMMAS,
    ConfigSpec,
    find_config,
    find_config_bruteforce,
    validate_match,
    verify_unavoidability,
)
from .discharge import (
    ChargeLedger,
    DischargeReport,
    MatchingError,
    Transfer,
    apply_charge_rules,
    discharge_pipeline,
    two_master_matching,
    verify_discharging,
)

__version__ = "0.1.0"
