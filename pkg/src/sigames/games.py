"""Cost TU-games: SI-game construction, core checks, the dual-price core
allocation and subgames.

Value tables are dense tuples indexed by ``mask - 1``.
"""

from __future__ import annotations

import csv
import hashlib
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CapExceeded, LengthMismatch, ValidationError
from .instance import (
    CoalitionParams,
    SIInstance,
    check_coalition,
    coalition_params,
    coalitions,
    format_rational,
    label,
    members,
    to_rational,
)
from .lotsizing import OrderingPlan, solve_bruteforce, solve_dp, solve_lp_relaxation
from .lp import LinearProgram, solve_lp

MAX_PLAYERS = 12

Allocation = tuple  # tuple[Fraction, ...], one share per player


@dataclass(frozen=True)
class CostGame:
    n: int
    values: tuple[Fraction, ...]
    kind: str = "external"

    def __post_init__(self):
        if len(self.values) != (1 << self.n) - 1:
            raise LengthMismatch(
                f"{self.n}-player game needs {(1 << self.n) - 1} values, got {len(self.values)}"
            )

    def __call__(self, mask: int) -> Fraction:
        if mask == 0:
            return Fraction(0)
        return self.values[mask - 1]

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    @classmethod
    def from_values(cls, n: int, values: Sequence, kind: str = "external") -> "CostGame":
        return cls(n, tuple(to_rational(v) for v in values), kind)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["coalition", "members", "value"])
        for mask in coalitions(self.n):
            writer.writerow(
                [mask, " ".join(str(i + 1) for i in members(mask, self.n)),
                 format_rational(self(mask))]
            )
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, kind: str = "external") -> "CostGame":
        rows = list(csv.DictReader(io.StringIO(text)))
        table = {int(r["coalition"]): to_rational(r["value"]) for r in rows}
        size = len(table)
        n = size.bit_length()
        if size != (1 << n) - 1 or set(table) != set(range(1, size + 1)):
            raise ValidationError("game CSV must list every nonempty coalition once")
        return cls(n, tuple(table[m] for m in range(1, size + 1)), kind)


@dataclass(frozen=True)
class PlanProfile:
    """One ordering plan (and the params it was built from) per coalition."""

    n: int
    plans: tuple[OrderingPlan, ...]
    params: tuple[CoalitionParams, ...] = field(repr=False)

    def plan(self, mask: int) -> OrderingPlan:
        return self.plans[mask - 1]

    def coalition(self, mask: int) -> CoalitionParams:
        return self.params[mask - 1]

    @property
    def grand_plan(self) -> OrderingPlan:
        return self.plans[-1]

    def fingerprint(self) -> str:
        """Short hash of every coalition's assignment."""
        h = hashlib.sha256()
        for plan in self.plans:
            h.update(",".join(map(str, plan.sigma)).encode() + b";")
        return h.hexdigest()[:16]

    def with_plan(self, mask: int, sigma) -> "PlanProfile":
        """Copy with coalition ``mask`` using the given assignment instead."""
        plans = list(self.plans)
        plans[mask - 1] = OrderingPlan.from_sigma(sigma, self.params[mask - 1])
        return PlanProfile(self.n, tuple(plans), self.params)

    @classmethod
    def from_sigmas(cls, inst: SIInstance, sigmas: dict, check_optimal: bool = True
                    ) -> "PlanProfile":
        """Profile from explicit assignments ``{mask: sigma}`` covering every coalition.

        With ``check_optimal`` each plan must attain its coalition's optimum.
        """
        params = tuple(coalition_params(inst, m) for m in coalitions(inst.n))
        plans = []
        for m in coalitions(inst.n):
            if m not in sigmas:
                raise ValidationError(f"no plan given for coalition {label(m)}")
            plan = OrderingPlan.from_sigma(sigmas[m], params[m - 1])
            if check_optimal and plan.cost != solve_dp(params[m - 1]).cost:
                raise ValidationError(f"plan {plan.sigma} is not optimal for {label(m)}")
            plans.append(plan)
        return cls(inst.n, tuple(plans), params)


def _solve_coalition(args):
    inst, mask, solver = args
    params = coalition_params(inst, mask)
    sol = solve_dp(params) if solver == "dp" else solve_bruteforce(params)
    return params, sol.plan


def build_game(inst: SIInstance, max_players: int = MAX_PLAYERS, solver: str = "dp",
               workers: int | None = None) -> tuple[CostGame, PlanProfile]:
    """The SI-game of ``inst`` together with the canonical plan of every coalition.

    ``workers > 1`` spreads the coalitions over a process pool; results are
    written back by coalition index so the output does not depend on it.
    """
    if inst.n > max_players:
        raise CapExceeded(f"game construction limited to {max_players} players, got {inst.n}")
    tasks = [(inst, m, solver) for m in coalitions(inst.n)]
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_solve_coalition, tasks, chunksize=16))
    else:
        results = [_solve_coalition(t) for t in tasks]
    params = tuple(r[0] for r in results)
    plans = tuple(r[1] for r in results)
    game = CostGame(inst.n, tuple(p.cost for p in plans), kind="SI")
    return game, PlanProfile(inst.n, plans, params)


@dataclass(frozen=True)
class CoreReport:
    efficiency_gap: Fraction
    violations: tuple[tuple[int, Fraction], ...]

    @property
    def is_member(self) -> bool:
        return self.efficiency_gap == 0 and not self.violations

    def __bool__(self) -> bool:
        return self.is_member


def core_membership(game: CostGame, x: Sequence) -> CoreReport:
    """Exact core test: ``x(N) = c(N)`` and ``x(S) <= c(S)`` for every ``S``.

    Violations are ``(mask, x(S) - c(S))`` for every proper coalition that
    pays more than its stand-alone cost.
    """
    if len(x) != game.n:
        raise LengthMismatch(f"allocation has {len(x)} shares for {game.n} players")
    x = [Fraction(v) for v in x]
    sums = [Fraction(0)] * (1 << game.n)
    for mask in coalitions(game.n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + x[low.bit_length() - 1]
    violations = []
    for mask in range(1, game.grand):
        excess = sums[mask] - game(mask)
        if excess > 0:
            violations.append((mask, excess))
    return CoreReport(sums[game.grand] - game(game.grand), tuple(violations))


def allocation_from_prices(inst: SIInstance, prices: Sequence) -> tuple[Fraction, ...]:
    """``x_i = sum_t prices[t] * d_t^i``."""
    return tuple(
        sum((Fraction(p) * d for p, d in zip(prices, row)), Fraction(0))
        for row in inst.demand
    )


def dual_allocation(inst: SIInstance) -> tuple[Fraction, ...]:
    """Core allocation priced by optimal duals of the grand coalition's LP."""
    relax = solve_lp_relaxation(coalition_params(inst, inst.grand))
    return allocation_from_prices(inst, relax.y)


def subgame(game: CostGame, mask: int) -> CostGame:
    """Restriction of ``game`` to the subsets of ``mask``, members renumbered."""
    check_coalition(mask, game.n)
    idx = members(mask, game.n)
    values = []
    for sub in coalitions(len(idx)):
        full = 0
        for k, i in enumerate(idx):
            if sub >> k & 1:
                full |= 1 << i
        values.append(game(full))
    return CostGame(len(idx), tuple(values), game.kind)


def core_vertex(game: CostGame, weights: Sequence) -> tuple[Fraction, ...] | None:
    """A core point minimizing ``weights . x`` (an extreme point), or None if
    the core is empty."""
    n = game.n
    lp = LinearProgram([Fraction(w) for w in weights], bounds=[(None, None)] * n)
    lp.add({i: 1 for i in range(n)}, "=", game(game.grand))
    for mask in range(1, game.grand):
        lp.add({i: 1 for i in members(mask, n)}, "<=", game(mask))
    sol = solve_lp(lp)
    return sol.x if sol.optimal else None


def allocation_to_csv(x: Sequence) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["player", "share"])
    for i, v in enumerate(x):
        writer.writerow([i + 1, format_rational(v)])
    return buf.getvalue()


def allocation_from_csv(text: str) -> tuple[Fraction, ...]:
    rows = list(csv.DictReader(io.StringIO(text)))
    shares = {int(r["player"]): to_rational(r["share"]) for r in rows}
    if set(shares) != set(range(1, len(shares) + 1)):
        raise ValidationError("allocation CSV must list players 1..n once each")
    return tuple(shares[i] for i in range(1, len(shares) + 1))

