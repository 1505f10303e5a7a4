"""Monte-Carlo estimates of how often unitary Owen points are core allocations.

Trial ``k`` of a run draws its instance from a generator seeded with
``(seed, k)``, so a trial's data never depends on which worker ran it or in
which order.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import binomtest

from .allocations import unitary_owen_point
from .errors import ValidationError
from .games import MAX_PLAYERS, build_game, core_membership
from .instance import SIInstance, coalition_params, make_instance
from .lotsizing import PLAN_LIMIT, optimal_plans

MODES = ("exhaustive", "canonical")


@dataclass(frozen=True)
class SimConfig:
    """Integer-uniform sampling ranges (closed) and run parameters."""

    players: int
    periods: int
    trials: int
    seed: int = 0
    demand: tuple[int, int] = (0, 30)
    unit_cost: tuple[int, int] = (0, 10)
    setup: tuple[int, int] = (0, 50)
    mode: str = "exhaustive"
    plan_limit: int = PLAN_LIMIT

    def __post_init__(self):
        if self.players < 1 or self.periods < 1:
            raise ValidationError("need at least one player and one period")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        for name in ("demand", "unit_cost", "setup"):
            lo, hi = getattr(self, name)
            if lo > hi or lo < 0:
                raise ValidationError(f"bad {name} range [{lo}, {hi}]")
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")

    @classmethod
    def positive(cls, players, periods, trials, seed=0, **kw) -> "SimConfig":
        """Strictly positive demands and costs."""
        return cls(players, periods, trials, seed, demand=(1, 30), unit_cost=(1, 10),
                   setup=(1, 50), **kw)


def generate_instance(cfg: SimConfig, trial: int) -> SIInstance:
    """Instance number ``trial`` of the run described by ``cfg``."""
    rng = np.random.default_rng([cfg.seed, trial])
    shape = (cfg.players, cfg.periods)

    def draw(bounds):
        lo, hi = bounds
        return rng.integers(lo, hi, size=shape, endpoint=True).tolist()

    demand = draw(cfg.demand)
    prod, hold, backlog = draw(cfg.unit_cost), draw(cfg.unit_cost), draw(cfg.unit_cost)
    setup = draw(cfg.setup)
    return make_instance(demand, prod, hold, backlog, setup)


def trial_outcome(cfg: SimConfig, trial: int) -> tuple[bool, bool, bool]:
    """``(success, canonical success, truncated)`` for one trial.

    Success means some optimal grand-coalition plan yields a unitary Owen
    point in the core (only the canonical plan in canonical mode).
    """
    inst = generate_instance(cfg, trial)
    game, profile = build_game(inst)
    canonical = core_membership(game, unitary_owen_point(inst, profile.grand_plan)).is_member
    if cfg.mode == "canonical" or canonical:
        return canonical, canonical, False
    sol = optimal_plans(coalition_params(inst, inst.grand), cfg.plan_limit)
    for plan in sol.plans:
        if core_membership(game, unitary_owen_point(inst, plan)).is_member:
            return True, False, sol.truncated
    return False, False, sol.truncated


def _chunk(args):
    cfg, start, stop = args
    counts = [0, 0, 0]
    failures = []
    for k in range(start, stop):
        outcome = trial_outcome(cfg, k)
        for j, flag in enumerate(outcome):
            counts[j] += flag
        if not outcome[0]:
            failures.append(k)
    return counts, failures


@dataclass(frozen=True)
class SuccessReport:
    config: SimConfig
    trials: int
    successes: int
    canonical_successes: int
    truncated: int
    failures: tuple[int, ...]
    ci_low: float
    ci_high: float

    @property
    def rate(self) -> float:
        return self.successes / self.trials

    @property
    def percentage(self) -> float:
        return 100 * self.rate

    def as_row(self) -> dict:
        cfg = asdict(self.config)
        row = {
            "players": cfg["players"],
            "periods": cfg["periods"],
            "trials": self.trials,
            "seed": cfg["seed"],
            "mode": cfg["mode"],
            "demand": "{}-{}".format(*cfg["demand"]),
            "unit_cost": "{}-{}".format(*cfg["unit_cost"]),
            "setup": "{}-{}".format(*cfg["setup"]),
            "successes": self.successes,
            "canonical_successes": self.canonical_successes,
            "truncated": self.truncated,
            "percentage": f"{self.percentage:.3f}",
            "ci95_low": f"{100 * self.ci_low:.3f}",
            "ci95_high": f"{100 * self.ci_high:.3f}",
        }
        return row

    def to_csv(self) -> str:
        buf = io.StringIO()
        row = self.as_row()
        writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
        writer.writeheader()
        writer.writerow(row)
        return buf.getvalue()

    def to_markdown(self) -> str:
        row = self.as_row()
        head = "| " + " | ".join(row) + " |"
        rule = "|" + "---|" * len(row)
        body = "| " + " | ".join(str(v) for v in row.values()) + " |"
        return "\n".join([head, rule, body]) + "\n"


def run_table_experiment(cfg: SimConfig, workers: int | None = None) -> SuccessReport:
    """Run every trial of ``cfg`` and count successes (order independent)."""
    if cfg.players > MAX_PLAYERS:
        build_game(generate_instance(cfg, 0))  # raises CapExceeded
    workers = workers or 1
    step = max(1, min(500, cfg.trials // (4 * workers) or 1))
    chunks = [(cfg, s, min(s + step, cfg.trials)) for s in range(0, cfg.trials, step)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_chunk, chunks))
    else:
        results = [_chunk(c) for c in chunks]
    counts = [sum(r[0][j] for r in results) for j in range(3)]
    failures = tuple(k for r in results for k in r[1])
    ci = binomtest(counts[0], cfg.trials).proportion_ci(0.95, method="wilson")
    return SuccessReport(cfg, cfg.trials, counts[0], counts[1], counts[2], failures,
                         float(ci.low), float(ci.high))
