"""Rigid linkages, rigid-linkage forcing and eigenvalue multiplicity bounds
for matrices described by a graph."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    ClusteringAmbiguous,
    GraphError,
    IllegalMoveError,
    InputError,
    IsAPathError,
    NotRigidError,
    PreconditionError,
    PropertyViolation,
    RLLabError,
)
from .graph import Graph, boundary, components, induced_subgraph, is_induced_path, load_graph
from .linkage import (
    Linkage,
    enumerate_linkages,
    is_rigid,
    is_rigid_any_labeling,
    is_rigid_shortest,
    is_unique_linkage,
    is_vital,
    rigid_linkage_number,
    rigid_shortest_linkage_number,
    shortest_linkage_size,
)
from .forcing import (
    extract_chain_set,
    realize_rigid_linkage,
    rl_apply,
    rl_explore,
    rl_forcing_number,
    rl_moves,
    z_closure,
    zero_forcing_number,
)
from .structure import (
    TreeDecomposition,
    check_tw_bound,
    has_X_minor,
    is_two_parallel_paths,
    linkage_chords,
    treewidth_exact,
)
from .spectral import (
    SymMatrix,
    cycledet,
    enumerate_linear_subgraphs,
    rigid_minor_identity,
    sample_matrix,
    spectrum,
    tight_rl_spectrum_check,
    tk_relation_check,
    verify_multiplicity_bound,
    verify_nullity_bound,
    verify_q_bounds,
    weight_cycle_part,
)
from .families import build, cartesian_product, fixture_corpus
from .verify import verify_all
