"""Exact solvers and verifiers for compromise games on the line.

Players hold fixed rational beliefs on the real line and each expresses an
opinion; a player's cost is the largest distance from her opinion to her own
belief and to the opinions of the k players whose opinions lie closest to her
belief.  The package verifies pure and finite-support mixed Nash equilibria
exactly, solves the k=1 case completely via a segment DAG, brackets the
optimal social cost with closed-form lower bounds and a heuristic upper
bound, and ships a catalog of benchmark instances with known values.
"""

from ._accel import BACKEND as kernel_backend
from .bounds import (
    PoaBracket,
    SmallChainConditions,
    eta,
    opt_lower_bound_1,
    opt_lower_bound_k,
    pne_player_cost_cap,
    pne_player_cost_cap_1,
    poa_bracket,
    small_chain_conditions,
    star_window,
)
from .catalog import CatalogEntry, ReferenceVector, catalog, catalog_entry, verify_entry
from .game import (
    DynamicsResult,
    GameInstance,
    Interval,
    Neighborhood,
    PureVerdict,
    StructureReport,
    Violation,
    as_opinions,
    best_response,
    best_response_dynamics,
    interval,
    is_pure_nash,
    neighborhood,
    player_cost,
    social_cost,
    structure_report,
)
from .instance_io import InstanceDocument, InstanceFormatError, load_instance, write_instance
from .mixed import (
    MAX_REALIZATIONS,
    MixedVerdict,
    MixedViolation,
    as_randomized,
    best_deterministic_deviation,
    expected_player_cost,
    expected_social_cost,
    is_mixed_nash,
)
from .optimize import OptimizerConfig, candidate_opinions, optimize_social_cost
from .segments import (
    Segment,
    SegmentGraph,
    best_pne,
    brute_force_pne_oracle,
    build_segment,
    build_segment_graph,
    enumerate_pne,
    exists_pne,
    to_dot,
    worst_pne,
)

__version__ = "0.1.0"
