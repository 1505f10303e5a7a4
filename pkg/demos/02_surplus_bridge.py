"""From the surplus game back to core allocations of the lot-sizing game."""

from pathlib import Path

from sigames import (
    PlanProfile,
    SIInstance,
    build_game,
    build_pi_situation,
    core_membership,
    minimum_unitary_prices,
    nucleolus,
    pi_owen_point,
    profile_game,
    surplus_game,
    surplus_of_core,
)
from sigames.instance import format_rational

DATA = Path(__file__).parent / "data"


def show(values):
    return "(" + ", ".join(str(format_rational(v)) for v in values) + ")"


inst = SIInstance.from_json((DATA / "counterexample.json").read_text())
game, profile = build_game(inst)

# The lowest unitary price any coalition pays in each period.  Everything
# below depends on which optimal plan each coalition uses, so the profile is
# identified by a fingerprint.
print("profile", profile.fingerprint())
y_min = minimum_unitary_prices(profile)
print("minimum prices ", show(y_min))

# The surplus game charges each coalition what it pays above those prices.
sg = surplus_game(inst, profile)
print("surplus game   ", show(sg.values))

# Any surplus-core allocation becomes the extra period of a production-
# inventory situation without setups; its Owen point is an SI-core point.
alpha = nucleolus(sg)
pi = build_pi_situation(inst, profile, alpha)
print("surplus nucleolus", show(alpha))
print("PI prices      ", show(pi.prices), " big M", pi.big_m)
x = pi_owen_point(pi)
print("Owen point     ", show(x), "core:", bool(core_membership(game, x)))
print("nucleolus of c ", show(nucleolus(game)))
print("back to surplus", show(surplus_of_core(inst, profile, x)))

# The same chain on a fixed, hand-written profile (the plans need not be
# optimal; the game is then read off the plan costs).
fixed = PlanProfile.from_sigmas(inst, {1: (0, 1, 3), 2: (0, 1, 0), 3: (0, 2, 2)},
                                check_optimal=False)
sg = surplus_game(inst, fixed)
alpha = nucleolus(sg)
print("\nfixed plans    ", show(profile_game(fixed).values))
print("minimum prices ", show(minimum_unitary_prices(fixed)))
print("surplus game   ", show(sg.values), " nucleolus", show(alpha))
print("Owen point     ", show(pi_owen_point(build_pi_situation(inst, fixed, alpha))))
print(build_pi_situation(inst, fixed, alpha).to_json(indent=None))
