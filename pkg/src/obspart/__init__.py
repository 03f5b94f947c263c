"""Structural observability analysis for sparse LTI systems.

Everything works on sparsity patterns alone: build a
:class:`StructuredSystem` from 1-based (row, column) entries of A and H,
then ask which measurements matter (:func:`classify_measurements`), which
sensor sites are interchangeable (:func:`equivalence_classes`), and how
few sensors suffice (:func:`minimal_placement`).  The ``numeric`` module
cross-checks every structural verdict on random realizations.
"""

from ._kernels import BACKEND, USE_NUMBA
from .errors import (
    DegenerateStructureError,
    InconsistencyError,
    InfeasiblePlacementError,
    MalformedInputError,
    NumericError,
    ObspartError,
    ParameterError,
    PreconditionError,
)
from .dot import export_dot
from .generate import random_partitionable_system, random_system
from .io import (
    SCHEMA_VERSION,
    load_matrix_market,
    load_system,
    render_report,
    report_dict,
    system_from_dict,
    system_to_dict,
    verify_dict,
)
from .matching import (
    AuxiliaryGraph,
    Contraction,
    Matching,
    build_auxiliary,
    contractions,
    maximum_matching,
    s_rank,
    system_contractions,
)
from .numeric import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    DEFAULT_TRIALS,
    NumericRealization,
    RankReport,
    generic_agreement,
    gramian_rank,
    modal_gramian_rank,
    pbh_check,
    rank_report,
    realize,
    verify_alpha_equivalence,
    verify_beta_equivalence,
)
from .partition import (
    ALPHA,
    BETA,
    GAMMA,
    PartitionReport,
    TheoremCheck,
    classify_measurements,
    equivalence_classes,
    forbid_states,
    is_necessary,
    minimal_placement,
    partition_report,
    theorem_check,
)
from .scc import (
    SccDecomposition,
    accessibility_check,
    block_form_certificate,
    decompose,
)
from .structure import (
    BipartiteGraph,
    StructuredSystem,
    SystemDigraph,
    build_bipartite,
    build_digraph,
    reverse_reachable,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "BETA",
    "GAMMA",
    "BACKEND",
    "USE_NUMBA",
    "DEFAULT_SEED",
    "DEFAULT_TOL",
    "DEFAULT_TRIALS",
    "SCHEMA_VERSION",
    "AuxiliaryGraph",
    "BipartiteGraph",
    "Contraction",
    "DegenerateStructureError",
    "InconsistencyError",
    "InfeasiblePlacementError",
    "MalformedInputError",
    "Matching",
    "NumericError",
    "NumericRealization",
    "ObspartError",
    "ParameterError",
    "PartitionReport",
    "PreconditionError",
    "RankReport",
    "SccDecomposition",
    "StructuredSystem",
    "SystemDigraph",
    "TheoremCheck",
    "accessibility_check",
    "block_form_certificate",
    "build_auxiliary",
    "build_bipartite",
    "build_digraph",
    "classify_measurements",
    "contractions",
    "decompose",
    "equivalence_classes",
    "export_dot",
    "forbid_states",
    "generic_agreement",
    "gramian_rank",
    "is_necessary",
    "load_matrix_market",
    "load_system",
    "maximum_matching",
    "minimal_placement",
    "modal_gramian_rank",
    "partition_report",
    "pbh_check",
    "random_partitionable_system",
    "random_system",
    "rank_report",
    "realize",
    "render_report",
    "report_dict",
    "reverse_reachable",
    "s_rank",
    "system_contractions",
    "system_from_dict",
    "system_to_dict",
    "theorem_check",
    "verify_alpha_equivalence",
    "verify_beta_equivalence",
    "verify_dict",
]
