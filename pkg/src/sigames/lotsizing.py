"""Single-coalition uncapacitated lot sizing with backlogging.

Three independent solvers share one model: every demand period is served by
one open production period, paying the unit cost matrix entry for the pair,
and every open period pays its setup cost.

* :func:`solve_bruteforce` enumerates every set of open periods.
* :func:`solve_dp` is a shortest path over consecutive blocks of demand
  periods, each block served by one production period (``O(T^4)``).
* :func:`solve_lp_relaxation` solves the facility-location LP relaxation with
  the exact simplex and returns its duals.

Ordering plans use 1-based periods, with ``0`` meaning "no production needed"
(exactly the zero-demand periods).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple

from .errors import CapExceeded, InconsistentPlan
from .instance import CoalitionParams
from .lp import LinearProgram, solve_lp

BRUTEFORCE_MAX_PERIODS = 20
PLAN_LIMIT = 10_000


def unit_cost_matrix(params: CoalitionParams) -> tuple[tuple[Fraction, ...], ...]:
    """``cost[t][tau]``: unit cost of producing in ``t`` for the demand of ``tau``.

    0-based indices.  Production plus the holding chain ``hold[t..tau-1]``
    when ``t < tau`` or the backlog chain ``backlog[tau..t-1]`` when ``t > tau``.
    """
    T = params.T
    cost = []
    for t in range(T):
        row = [Fraction(0)] * T
        row[t] = params.prod[t]
        acc = params.prod[t]
        for tau in range(t + 1, T):
            acc += params.hold[tau - 1]
            row[tau] = acc
        acc = params.prod[t]
        for tau in range(t - 1, -1, -1):
            acc += params.backlog[tau]
            row[tau] = acc
        cost.append(tuple(row))
    return tuple(cost)


@dataclass(frozen=True)
class OrderingPlan:
    """An assignment of demand periods to production periods.

    ``sigma[tau - 1]`` is the 1-based producing period for the demand of
    ``tau``, or 0 when that demand is zero.  The derived fields are filled by
    :meth:`from_sigma`.
    """

    sigma: tuple[int, ...]
    open_periods: tuple[int, ...]
    cost_plan: tuple[Fraction, ...]
    total_setup: Fraction
    cost: Fraction

    @classmethod
    def from_sigma(cls, sigma, params: CoalitionParams, matrix=None) -> "OrderingPlan":
        sigma = tuple(int(s) for s in sigma)
        T = params.T
        if len(sigma) != T:
            raise InconsistentPlan(f"plan has {len(sigma)} periods, expected {T}")
        for tau, s in enumerate(sigma):
            if not 0 <= s <= T:
                raise InconsistentPlan(f"period {tau + 1} assigned to invalid period {s}")
            if (s == 0) != (params.demand[tau] == 0):
                raise InconsistentPlan(
                    f"period {tau + 1}: assignment {s} inconsistent with demand "
                    f"{params.demand[tau]}"
                )
        matrix = matrix or unit_cost_matrix(params)
        open_periods = tuple(sorted({s for s in sigma if s}))
        cost_plan = tuple(
            matrix[s - 1][tau] if s else Fraction(0) for tau, s in enumerate(sigma)
        )
        total_setup = sum((params.setup[t - 1] for t in open_periods), Fraction(0))
        cost = total_setup + sum(
            (c * d for c, d in zip(cost_plan, params.demand)), Fraction(0)
        )
        return cls(sigma, open_periods, cost_plan, total_setup, cost)

    @property
    def delta(self) -> tuple[int, ...]:
        """Order indicator per period (1 if some demand is produced there)."""
        opened = set(self.open_periods)
        return tuple(int(t + 1 in opened) for t in range(len(self.sigma)))

    def served_by(self, t: int) -> tuple[int, ...]:
        """1-based periods whose demand is produced in 1-based period ``t``."""
        return tuple(tau + 1 for tau, s in enumerate(self.sigma) if s == t)


@dataclass(frozen=True)
class PlanSolution:
    cost: Fraction
    plan: OrderingPlan
    plans: tuple[OrderingPlan, ...] | None = None
    truncated: bool = False


def _canonical_assignment(open_set, params, matrix):
    """Each demand period goes to the smallest-index cheapest open period."""
    sigma = []
    for tau in range(params.T):
        if params.demand[tau] == 0:
            sigma.append(0)
            continue
        best = min(open_set, key=lambda t: (matrix[t][tau], t))
        sigma.append(best + 1)
    return sigma


def _open_set_cost(open_set, params, matrix):
    total = sum((params.setup[t] for t in open_set), Fraction(0))
    for tau in range(params.T):
        d = params.demand[tau]
        if d:
            total += d * min(matrix[t][tau] for t in open_set)
    return total


def _zero_solution(params):
    plan = OrderingPlan.from_sigma((0,) * params.T, params)
    return PlanSolution(plan.cost, plan, (plan,))


def solve_bruteforce(
    params: CoalitionParams,
    all_plans: bool = False,
    plan_limit: int = PLAN_LIMIT,
    max_periods: int = BRUTEFORCE_MAX_PERIODS,
) -> PlanSolution:
    """Exact optimum by enumerating every nonempty set of open periods.

    With ``all_plans`` the solution also lists every optimal ordering plan
    (all optimal open sets times all tied assignments that use every open
    period), capped at ``plan_limit`` with ``truncated`` set when the cap cuts
    the enumeration short.
    """
    T = params.T
    if T > max_periods:
        raise CapExceeded(f"brute force limited to {max_periods} periods, got {T}")
    if params.total_demand == 0:
        return _zero_solution(params)
    matrix = unit_cost_matrix(params)
    best, optimal_sets = None, []
    for size in range(1, T + 1):
        for open_set in combinations(range(T), size):
            c = _open_set_cost(open_set, params, matrix)
            if best is None or c < best:
                best, optimal_sets = c, [open_set]
            elif c == best:
                optimal_sets.append(open_set)
    # combinations() yields by size then lexicographically: first is canonical
    canonical = OrderingPlan.from_sigma(
        _canonical_assignment(optimal_sets[0], params, matrix), params, matrix
    )
    if not all_plans:
        return PlanSolution(best, canonical)

    plans, truncated = [], False
    for open_set in optimal_sets:
        choices = []
        for tau in range(T):
            if params.demand[tau] == 0:
                choices.append((0,))
                continue
            low = min(matrix[t][tau] for t in open_set)
            choices.append(tuple(t + 1 for t in open_set if matrix[t][tau] == low))
        wanted = {t + 1 for t in open_set}
        for sigma in product(*choices):
            if set(sigma) - {0} != wanted:
                continue
            if len(plans) >= plan_limit:
                truncated = True
                break
            plans.append(OrderingPlan.from_sigma(sigma, params, matrix))
        if truncated:
            break
    return PlanSolution(best, canonical, tuple(plans), truncated)


def optimal_plans(params: CoalitionParams, plan_limit: int = PLAN_LIMIT) -> PlanSolution:
    """All optimal ordering plans of one coalition (see :func:`solve_bruteforce`)."""
    return solve_bruteforce(params, all_plans=True, plan_limit=plan_limit)


def solve_dp(params: CoalitionParams) -> PlanSolution:
    """Optimal cost and canonical plan by dynamic programming.

    Some optimal assignment is non-crossing (the unit cost matrix is Monge on
    the line), so every open period serves one contiguous block of demand
    periods and blocks appear in the order of their production periods.  The
    DP walks over block boundaries with state ``(covered prefix, last open
    period)`` and labels ``(cost, number of open periods, open periods)``,
    compared lexicographically; the minimum label is the canonical open set.
    """
    T = params.T
    if params.total_demand == 0:
        return _zero_solution(params)
    matrix = unit_cost_matrix(params)
    # prefix[t][e] = sum_{tau < e} d_tau * cost[t][tau]
    prefix = []
    for t in range(T):
        acc, row = Fraction(0), [Fraction(0)]
        for tau in range(T):
            acc += params.demand[tau] * matrix[t][tau]
            row.append(acc)
        prefix.append(row)
    dem = [0]
    for d in params.demand:
        dem.append(dem[-1] + d)

    # states keyed by (e, last) with last = -1 before any open period
    labels = {(0, -1): (Fraction(0), 0, ())}
    for e in range(T):
        for last in range(-1, T):
            label = labels.get((e, last))
            if label is None:
                continue
            cost, count, opened = label
            for end in range(e + 1, T + 1):
                if dem[end] == dem[e]:
                    cand = label
                    key = (end, last)
                    if key not in labels or cand < labels[key]:
                        labels[key] = cand
                    continue
                for t in range(last + 1, T):
                    cand = (
                        cost + params.setup[t] + prefix[t][end] - prefix[t][e],
                        count + 1,
                        opened + (t,),
                    )
                    key = (end, t)
                    if key not in labels or cand < labels[key]:
                        labels[key] = cand
    best = min(labels[(T, last)] for last in range(-1, T) if (T, last) in labels)
    plan = OrderingPlan.from_sigma(
        _canonical_assignment(best[2], params, matrix), params, matrix
    )
    if plan.cost != best[0]:
        raise AssertionError("DP label cost disagrees with its canonical plan")
    return PlanSolution(best[0], plan)


class LPRelaxation(NamedTuple):
    value: Fraction
    y: tuple[Fraction, ...]
    beta: tuple[tuple[Fraction, ...], ...]
    primal: tuple[Fraction, ...]


def solve_lp_relaxation(params: CoalitionParams) -> LPRelaxation:
    """Facility-location LP relaxation and its dual prices.

    Rows ``sum_t lambda[t][tau] = 1`` are written only for periods with
    positive demand (the zero-demand rows are vacuous) and scaled by the
    demand, so the returned ``y[tau]`` and ``beta[t][tau]`` satisfy
    ``sum_tau d_tau beta[t][tau] <= setup[t]`` and
    ``y[tau] - beta[t][tau] <= cost[t][tau]`` with ``beta >= 0``, and
    ``sum_tau d_tau y[tau]`` equals the LP value.
    """
    T = params.T
    matrix = unit_cost_matrix(params)
    served = [tau for tau in range(T) if params.demand[tau] > 0]
    zero = Fraction(0)
    if not served:
        return LPRelaxation(zero, (zero,) * T, ((zero,) * T,) * T, ())
    # columns: lambda[t][tau] for tau in served, then z[t]
    col = {}
    objective = []
    for t in range(T):
        for tau in served:
            col[t, tau] = len(objective)
            objective.append(params.demand[tau] * matrix[t][tau])
    zcol = len(objective)
    objective.extend(params.setup)
    lp = LinearProgram(objective)
    assign_rows = {}
    for tau in served:
        assign_rows[tau] = lp.add({col[t, tau]: 1 for t in range(T)}, "=", 1)
    link_rows = {}
    for t in range(T):
        for tau in served:
            link_rows[t, tau] = lp.add({col[t, tau]: 1, zcol + t: -1}, "<=", 0)
    sol = solve_lp(lp)
    if not sol.optimal:
        raise AssertionError(f"lot-sizing relaxation is {sol.status}")
    y = [zero] * T
    beta = [[zero] * T for _ in range(T)]
    for tau in served:
        y[tau] = sol.duals[assign_rows[tau]] / params.demand[tau]
        for t in range(T):
            beta[t][tau] = -sol.duals[link_rows[t, tau]] / params.demand[tau]
    return LPRelaxation(sol.objective, tuple(y), tuple(map(tuple, beta)), sol.x)
