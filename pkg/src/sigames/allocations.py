"""Unitary prices and unitary Owen points.

The unitary price of a period is the unit operation cost of the plan for
that period plus the setup cost of its producing period spread evenly over
all units produced there.  Pricing each player's demand at the grand
coalition's unitary prices gives the unitary Owen point; the beta
certificate decides exactly when that point lies in the core.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .games import PlanProfile, allocation_from_prices
from .instance import CoalitionParams, SIInstance, coalition_params, format_rational
from .lotsizing import OrderingPlan

_ZERO = Fraction(0)


def unitary_prices(params: CoalitionParams, plan: OrderingPlan) -> tuple[Fraction, ...]:
    """Per-period unitary prices of ``plan``; zero where there is no demand.

    Raises InconsistentPlan if the plan does not fit ``params``.
    """
    plan = OrderingPlan.from_sigma(plan.sigma, params)
    produced = {}
    for tau, s in enumerate(plan.sigma):
        if s:
            produced[s] = produced.get(s, 0) + params.demand[tau]
    return tuple(
        plan.cost_plan[tau] + params.setup[s - 1] / produced[s] if s else _ZERO
        for tau, s in enumerate(plan.sigma)
    )


def unitary_owen_point(inst: SIInstance, grand_plan: OrderingPlan) -> tuple[Fraction, ...]:
    """Each player's demand priced at the grand coalition's unitary prices."""
    prices = unitary_prices(coalition_params(inst, inst.grand), grand_plan)
    return allocation_from_prices(inst, prices)


def profile_prices(profile: PlanProfile, mask: int) -> tuple[Fraction, ...]:
    return unitary_prices(profile.coalition(mask), profile.plan(mask))


@dataclass(frozen=True)
class SufficiencyReport:
    holds: bool
    violation: tuple[int, int] | None = None  # (coalition mask, 1-based period)
    grand_price: Fraction | None = None
    coalition_price: Fraction | None = None

    def __bool__(self):
        return self.holds


def price_dominance_check(profile: PlanProfile) -> SufficiencyReport:
    """Are the grand coalition's unitary prices no larger than any proper
    coalition's, in every period where that coalition has demand?

    When they are, the unitary Owen point is a core allocation.  Otherwise the
    first violating ``(coalition, period)`` in mask/period order is reported.
    """
    grand = (1 << profile.n) - 1
    y_grand = profile_prices(profile, grand)
    for mask in range(1, grand):
        y = profile_prices(profile, mask)
        demand = profile.coalition(mask).demand
        for t, (yn, ys) in enumerate(zip(y_grand, y)):
            if demand[t] and yn > ys:
                return SufficiencyReport(False, (mask, t + 1), yn, ys)
    return SufficiencyReport(True)


def cost_gaps(profile: PlanProfile, s_mask: int, r_mask: int) -> tuple[Fraction, ...]:
    """Per-period unit operation cost of ``S``'s plan minus that of ``R``'s."""
    ps = profile.plan(s_mask).cost_plan
    pr = profile.plan(r_mask).cost_plan
    return tuple(a - b for a, b in zip(ps, pr))


@dataclass(frozen=True)
class CertificateRow:
    """Weights of one proper coalition.

    ``betas`` maps each grand-coalition order period with positive demand of
    the coalition to its tightest admissible weight; ``gaps`` to the average
    cost gap per unit over the periods it serves.  ``slack`` is
    ``setup_total - sum_t numerator_t`` and is what a zero-setup
    (degenerate) coalition is judged by.
    """

    mask: int
    setup_total: Fraction
    betas: dict
    gaps: dict
    slack: Fraction

    @property
    def degenerate(self) -> bool:
        return self.setup_total == 0

    @property
    def total(self) -> Fraction:
        return sum(self.betas.values(), _ZERO)

    @property
    def ok(self) -> bool:
        if self.degenerate:
            return self.slack >= 0
        return self.total <= 1


@dataclass(frozen=True)
class BetaCertificate:
    rows: tuple[CertificateRow, ...]

    def __bool__(self):
        return True

    def row(self, mask: int) -> CertificateRow:
        return next(r for r in self.rows if r.mask == mask)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["coalition", "period", "beta", "bound"])
        for row in self.rows:
            for t in sorted(row.betas):
                writer.writerow(
                    [row.mask, t, format_rational(row.betas[t]), format_rational(row.gaps[t])]
                )
        return buf.getvalue()


@dataclass(frozen=True)
class NoCertificate:
    witness: CertificateRow
    rows: tuple[CertificateRow, ...]

    def __bool__(self):
        return False


def _certificate_row(profile: PlanProfile, mask: int, grand: int) -> CertificateRow:
    grand_plan = profile.plan(grand)
    grand_params = profile.coalition(grand)
    plan = profile.plan(mask)
    d_s = profile.coalition(mask).demand
    gaps_nS = cost_gaps(profile, grand, mask)
    numerators, gaps = {}, {}
    for t in grand_plan.open_periods:
        served = grand_plan.served_by(t)
        alpha_s = sum(d_s[j - 1] for j in served)
        if alpha_s == 0:
            continue
        alpha_n = sum(grand_params.demand[j - 1] for j in served)
        k_t = grand_params.setup[t - 1]
        gap = sum((gaps_nS[j - 1] * d_s[j - 1] for j in served if d_s[j - 1]), _ZERO)
        numerators[t] = gap + k_t * Fraction(alpha_s, alpha_n)
        gaps[t] = gap / alpha_s
    k = plan.total_setup
    betas = {t: v / k for t, v in numerators.items()} if k else {}
    return CertificateRow(mask, k, betas, gaps, k - sum(numerators.values(), _ZERO))


def beta_certificate(profile: PlanProfile) -> BetaCertificate | NoCertificate:
    """Weights certifying that the unitary Owen point of the profile's grand
    plan is a core allocation, or the coalition for which none exist.

    For every proper coalition ``S`` with positive setup total ``k(S)`` the
    tightest weights are ``beta_t = numerator_t / k(S)`` and a certificate
    exists iff they sum to at most one; a coalition with ``k(S) = 0`` is
    checked directly through ``sum_t numerator_t <= 0``.
    """
    grand = (1 << profile.n) - 1
    rows = tuple(_certificate_row(profile, m, grand) for m in range(1, grand))
    for row in rows:
        if not row.ok:
            return NoCertificate(row, rows)
    return BetaCertificate(rows)
