"""Exact cooperative lot-sizing games with backlogging."""

from .allocations import (
    BetaCertificate,
    NoCertificate,
    beta_certificate,
    cost_gaps,
    price_dominance_check,
    profile_prices,
    unitary_owen_point,
    unitary_prices,
)
from .errors import (
    CapExceeded,
    EmptyCoalition,
    EmptyCore,
    InconsistentPlan,
    LengthMismatch,
    MalformedLP,
    NegativeCost,
    NegativeDemand,
    NotInCore,
    NotInSurplusCore,
    ShapeMismatch,
    SIGameError,
    ValidationError,
)
from .games import (
    CoreReport,
    CostGame,
    PlanProfile,
    build_game,
    core_membership,
    core_vertex,
    dual_allocation,
    subgame,
)
from .instance import (
    CoalitionParams,
    SIInstance,
    coalition_params,
    coalitions,
    make_instance,
    mask_of,
    validate,
)
from .lotsizing import (
    OrderingPlan,
    PlanSolution,
    optimal_plans,
    solve_bruteforce,
    solve_dp,
    solve_lp_relaxation,
    unit_cost_matrix,
)
from .lp import LinearProgram, LPSolution, solve_lp
from .nucleolus import nucleolus
from .simulation import SimConfig, SuccessReport, generate_instance, run_table_experiment
from .surplus import (
    PISituation,
    build_pi_situation,
    core_via_surplus,
    minimum_unitary_prices,
    pi_owen_point,
    profile_game,
    surplus_game,
    surplus_of_core,
    surplus_zero_equivalence,
)

__version__ = "0.1.0"
