"""Minimum unitary prices, the surplus game and its bridge to
production-inventory (PI) situations.

Every quantity here depends on the plan profile through the minimum unitary
prices, so results should be reported together with
``PlanProfile.fingerprint()``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .allocations import profile_prices
from .errors import LengthMismatch, NotInCore, NotInSurplusCore, ValidationError
from .games import CostGame, PlanProfile, allocation_from_prices, core_membership
from .instance import SIInstance, coalitions, format_rational, player_demand, to_rational

_ZERO = Fraction(0)


def minimum_unitary_prices(profile: PlanProfile) -> tuple[Fraction, ...]:
    """Per period, the lowest unitary price over coalitions with demand there
    (zero when no coalition has demand in that period)."""
    T = profile.coalition(1).T
    best: list[Fraction | None] = [None] * T
    for mask in coalitions(profile.n):
        prices = profile_prices(profile, mask)
        demand = profile.coalition(mask).demand
        for t in range(T):
            if demand[t] and (best[t] is None or prices[t] < best[t]):
                best[t] = prices[t]
    return tuple(_ZERO if b is None else b for b in best)


def surplus_game(inst: SIInstance, profile: PlanProfile) -> CostGame:
    """``c(S)`` minus the coalition's demand priced at minimum unitary prices.

    ``c(S)`` is read off the profile's plans, which equals the SI-game value
    whenever the profile is optimal.
    """
    y_min = minimum_unitary_prices(profile)
    values = []
    for mask in coalitions(inst.n):
        d = player_demand(inst, mask)
        values.append(profile.plan(mask).cost - sum((a * b for a, b in zip(y_min, d)), _ZERO))
    return CostGame(inst.n, tuple(values), kind="surplus")


def profile_game(profile: PlanProfile) -> CostGame:
    """Game whose values are the plan costs of the profile."""
    return CostGame(profile.n, tuple(p.cost for p in profile.plans), kind="SI")


def _check_length(x, n):
    if len(x) != n:
        raise LengthMismatch(f"allocation has {len(x)} shares for {n} players")


@dataclass(frozen=True)
class PISituation:
    """A ``T + 1`` period production-inventory situation without setup costs.

    Every player faces the same unit production costs ``prices``; holding and
    backlog cost ``big_m`` per unit and period, which is large enough that
    each period's demand is produced in its own period.  Demands are exact
    rationals and may be negative in the extra period.
    """

    demand: tuple[tuple[Fraction, ...], ...]
    prices: tuple[Fraction, ...]
    big_m: Fraction

    @property
    def n(self) -> int:
        return len(self.demand)

    @property
    def T(self) -> int:
        return len(self.prices)

    def to_dict(self) -> dict:
        T = self.T
        row = [format_rational(p) for p in self.prices]
        m = [format_rational(self.big_m)] * T
        return {
            "n": self.n,
            "T": T,
            "players": [
                {"d": [format_rational(v) for v in d], "p": row, "h": m, "b": m,
                 "k": [0] * T}
                for d in self.demand
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, raw: dict) -> "PISituation":
        players = raw["players"]
        demand = tuple(tuple(to_rational(v) for v in p["d"]) for p in players)
        prices = tuple(to_rational(v) for v in players[0]["p"])
        big_m = to_rational(players[0]["h"][0])
        for p in players:
            if any(to_rational(v) != 0 for v in p["k"]):
                raise ValidationError("PI-situations have no setup costs")
        return cls(demand, prices, big_m)


def build_pi_situation(inst: SIInstance, profile: PlanProfile, alpha: Sequence) -> PISituation:
    """PI-situation with the original demands plus one extra period whose
    demand is ``alpha_i`` at unit price 1; the other periods are priced at the
    minimum unitary prices.

    Raises NotInSurplusCore unless ``alpha`` is in the surplus game's core.
    """
    _check_length(alpha, inst.n)
    alpha = tuple(to_rational(a) for a in alpha)
    report = core_membership(surplus_game(inst, profile), alpha)
    if not report:
        raise NotInSurplusCore("alpha is not in the core of the surplus game", report)
    y_min = minimum_unitary_prices(profile)
    demand = tuple(
        tuple(Fraction(d) for d in inst.demand[i]) + (alpha[i],) for i in range(inst.n)
    )
    return PISituation(demand, y_min + (Fraction(1),), 1 + inst.total_cost_mass())


def pi_owen_point(pi: PISituation) -> tuple[Fraction, ...]:
    """Owen point of a constructed PI-situation.

    Without setup costs and with transfers between periods priced out by
    ``big_m``, the shadow price of each period is its own production price,
    so each player pays its demand at those prices.
    """
    return tuple(
        sum((p * d for p, d in zip(pi.prices, row)), _ZERO) for row in pi.demand
    )


def core_via_surplus(inst: SIInstance, profile: PlanProfile, alpha: Sequence
                     ) -> tuple[Fraction, ...]:
    """Map a surplus-core allocation to an SI-core allocation."""
    return pi_owen_point(build_pi_situation(inst, profile, alpha))


def surplus_of_core(inst: SIInstance, profile: PlanProfile, x: Sequence,
                    game: CostGame | None = None) -> tuple[Fraction, ...]:
    """Inverse of :func:`core_via_surplus`: subtract each player's demand at
    minimum unitary prices.  Raises NotInCore unless ``x`` is a core point of
    ``game`` (by default the game of the profile's plan costs)."""
    _check_length(x, inst.n)
    x = tuple(to_rational(v) for v in x)
    report = core_membership(game or profile_game(profile), x)
    if not report:
        raise NotInCore("allocation is not in the core", report)
    base = allocation_from_prices(inst, minimum_unitary_prices(profile))
    return tuple(a - b for a, b in zip(x, base))


def surplus_zero_equivalence(inst: SIInstance, profile: PlanProfile) -> bool:
    """Whether ``c_surplus(N) == 0`` holds exactly when demand priced at
    minimum unitary prices is a core allocation.  Always true; a False
    return indicates a bug upstream."""
    zero_surplus = surplus_game(inst, profile)(inst.grand) == 0
    priced = allocation_from_prices(inst, minimum_unitary_prices(profile))
    in_core = core_membership(profile_game(profile), priced).is_member
    return zero_surplus == in_core
