"""The exact simplex kernel and the dual prices of the lot-sizing relaxation."""

from pathlib import Path

from sigames import (
    LinearProgram,
    SIInstance,
    build_game,
    coalition_params,
    core_membership,
    dual_allocation,
    solve_dp,
    solve_lp,
    solve_lp_relaxation,
)
from sigames.instance import format_rational

DATA = Path(__file__).parent / "data"

# A small diet-style LP solved in exact rationals.  Duals are the change in
# the optimum per unit increase of each right-hand side.
lp = LinearProgram([2, 3])
lp.add([1, 1], ">=", 4)
lp.add([1, 3], ">=", 6)
sol = solve_lp(lp)
print("x", sol.x, "value", sol.objective, "duals", sol.duals)
print("dual objective", sol.dual_objective(lp))

# The facility-location relaxation of lot sizing has integral optima, so its
# value matches the dynamic program; its duals price each period's demand.
inst = SIInstance.from_json((DATA / "three_players.json").read_text())
params = coalition_params(inst, inst.grand)
relax = solve_lp_relaxation(params)
print("\nrelaxation", relax.value, " DP", solve_dp(params).cost)
print("dual prices", [format_rational(y) for y in relax.y])

# Pricing every player's demand at those duals gives a core allocation.
game, _ = build_game(inst)
x = dual_allocation(inst)
print("dual allocation", [format_rational(v) for v in x], "core:", bool(core_membership(game, x)))
