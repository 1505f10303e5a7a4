"""Three small situations: building the game, pricing demand and testing the core."""

from pathlib import Path

from sigames import (
    SIInstance,
    beta_certificate,
    build_game,
    core_membership,
    price_dominance_check,
    profile_prices,
    unitary_owen_point,
)
from sigames.instance import format_rational, label

DATA = Path(__file__).parent / "data"


def show(values):
    return "(" + ", ".join(str(format_rational(v)) for v in values) + ")"


# Three players, two periods.  Each coalition pools its demand and uses the
# cheapest member cost in every period; its value is the optimal lot-sizing
# cost with holding and backlogging.
inst = SIInstance.from_json((DATA / "three_players.json").read_text())
game, profile = build_game(inst)
for mask in range(1, 1 << inst.n):
    print(f"c{label(mask):8s} = {format_rational(game(mask)):>4}   plan {profile.plan(mask).sigma}")

# Unitary prices amortize each setup over the units it serves.  Pricing every
# player's demand at the grand coalition's prices gives the unitary Owen point.
print("grand prices   ", show(profile_prices(profile, inst.grand)))
theta = unitary_owen_point(inst, profile.grand_plan)
print("unitary point  ", show(theta), "core:", bool(core_membership(game, theta)))

# With two optimal grand-coalition plans the point depends on the plan.
inst = SIInstance.from_json((DATA / "two_plans.json").read_text())
game, profile = build_game(inst)
print("\ncanonical plan ", profile.grand_plan.sigma,
      "point", show(unitary_owen_point(inst, profile.grand_plan)))
print("prices dominate every coalition:", bool(price_dominance_check(profile)))
alt = profile.with_plan(inst.grand, (1, 2, 3))
print("alternate plan ", alt.grand_plan.sigma, "point", show(unitary_owen_point(inst, alt.grand_plan)))

# The weights certificate confirms the alternate point is in the core; each
# row sums to at most one.
for row in beta_certificate(alt).rows:
    print(f"  weights {label(row.mask):8s} {show(row.betas.values())} sum {format_rational(row.total)}")

# Two players with very uneven setup costs: the unitary point overcharges
# player 1, and the certificate names that coalition.
inst = SIInstance.from_json((DATA / "counterexample.json").read_text())
game, profile = build_game(inst)
theta = unitary_owen_point(inst, profile.grand_plan)
report = core_membership(game, theta)
print("\ngame           ", show(game.values))
print("unitary point  ", show(theta), "violations", [(label(m), str(v)) for m, v in report.violations])
cert = beta_certificate(profile)
print("certificate    ", bool(cert), "witness", label(cert.witness.mask), show(cert.witness.betas.values()))
