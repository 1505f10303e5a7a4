"""SI-situations: per-player demand and cost profiles, coalitions and
coalition-level aggregated parameters.

Players and periods are 1-based in everything user-facing (error messages,
JSON, ordering plans); the stored tuples are 0-based.  A coalition is an
``int`` bitmask where bit ``i`` stands for player ``i + 1``.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    EmptyCoalition,
    NegativeCost,
    NegativeDemand,
    ShapeMismatch,
    ValidationError,
)

COST_FIELDS = ("prod", "hold", "backlog", "setup")
# JSON keys for the per-player rows, in schema order
JSON_KEYS = {"demand": "d", "prod": "p", "hold": "h", "backlog": "b", "setup": "k"}


def to_rational(value) -> Fraction:
    """Parse an int, Fraction or ``"a/b"`` string into a Fraction.

    Floats are rejected unless they are integral, so that no binary rounding
    can leak into the exact computations.
    """
    if isinstance(value, bool):
        raise ValidationError(f"not a rational number: {value!r}")
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValidationError(f"not a rational number: {value!r}") from None
    if isinstance(value, float) and value.is_integer():
        return Fraction(int(value))
    # numpy integer scalars are not registered as numbers.Rational
    if hasattr(value, "__index__"):
        return Fraction(value.__index__())
    raise ValidationError(f"not a rational number: {value!r}")


def format_rational(value) -> int | str:
    """JSON/CSV representation: plain int when integral, else ``"a/b"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class SIInstance:
    """A setup-inventory situation with ``n`` players over ``T`` periods.

    All arrays are ``n x T``.  ``hold[i][t]`` / ``backlog[i][t]`` is the unit
    cost of carrying stock / backlog from period ``t+1`` to ``t+2`` (1-based),
    so the last column is never used.  Build instances through
    :func:`validate` or :func:`make_instance`; the constructor does not check
    anything.
    """

    demand: tuple[tuple[int, ...], ...]
    prod: tuple[tuple[Fraction, ...], ...]
    hold: tuple[tuple[Fraction, ...], ...]
    backlog: tuple[tuple[Fraction, ...], ...]
    setup: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.demand)

    @property
    def T(self) -> int:
        return len(self.demand[0])

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    def player_rows(self, i: int) -> dict:
        """0-based player ``i``'s rows keyed by field name."""
        return {
            "demand": self.demand[i],
            "prod": self.prod[i],
            "hold": self.hold[i],
            "backlog": self.backlog[i],
            "setup": self.setup[i],
        }

    def restrict(self, mask: int) -> "SIInstance":
        """The situation of the members of ``mask`` alone, renumbered."""
        idx = members(mask, self.n)
        return SIInstance(
            *(tuple(getattr(self, f)[i] for i in idx) for f in ("demand",) + COST_FIELDS)
        )

    def total_cost_mass(self) -> Fraction:
        """Sum of every cost entry of every player."""
        return sum(
            (sum(row, Fraction(0)) for f in COST_FIELDS for row in getattr(self, f)),
            Fraction(0),
        )

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        players = []
        for i in range(self.n):
            rows = self.player_rows(i)
            players.append(
                {
                    JSON_KEYS[f]: [format_rational(v) for v in rows[f]]
                    for f in ("demand",) + COST_FIELDS
                }
            )
        return {"n": self.n, "T": self.T, "players": players}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "SIInstance":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from None
        return validate(raw)


def _rows(raw_rows, n, T, name, allow_short=False):
    if len(raw_rows) != n:
        raise ShapeMismatch(f"{name}: expected {n} players, got {len(raw_rows)}")
    out = []
    for i, row in enumerate(raw_rows):
        row = list(row)
        if allow_short and len(row) == T - 1:
            # transitions only exist between periods 1..T-1
            row = row + [0]
        if len(row) != T:
            raise ShapeMismatch(
                f"{name}: player {i + 1} has {len(row)} periods, expected {T}",
                player=i + 1,
            )
        out.append(row)
    return out


def validate(raw) -> SIInstance:
    """Check a raw situation and return it normalized to exact rationals.

    ``raw`` is either an :class:`SIInstance` or a mapping in the JSON schema
    ``{"n", "T", "players": [{"d", "p", "h", "b", "k"}, ...]}``.  Holding and
    backlog rows may have ``T - 1`` entries; they are padded with a zero for
    the unused last period.

    Raises
    ------
    NegativeDemand, NegativeCost, ShapeMismatch
        Naming the offending 1-based (player, period).
    """
    if isinstance(raw, SIInstance):
        fields = {f: raw.__dict__[f] for f in ("demand",) + COST_FIELDS}
        n, T = len(raw.demand), len(raw.demand[0]) if raw.demand else 0
    elif isinstance(raw, Mapping):
        try:
            players = list(raw["players"])
        except KeyError:
            raise ShapeMismatch("missing 'players'") from None
        n = raw.get("n", len(players))
        T = raw.get("T", len(players[0][JSON_KEYS["demand"]]) if players else 0)
        if len(players) != n:
            raise ShapeMismatch(f"'n' is {n} but {len(players)} players given")
        fields = {}
        for f, key in JSON_KEYS.items():
            try:
                fields[f] = [p[key] for p in players]
            except KeyError:
                raise ShapeMismatch(f"player entry missing {key!r}") from None
    else:
        raise ValidationError(f"cannot validate {type(raw).__name__}")

    if n < 1 or T < 1:
        raise ShapeMismatch(f"need n >= 1 and T >= 1, got n={n}, T={T}")

    demand = []
    for i, row in enumerate(_rows(fields["demand"], n, T, "demand")):
        out = []
        for t, v in enumerate(row):
            q = to_rational(v)
            if q < 0:
                raise NegativeDemand(i + 1, t + 1)
            if q.denominator != 1:
                raise ValidationError(
                    f"demand of player {i + 1}, period {t + 1} is not an integer"
                )
            out.append(int(q))
        demand.append(tuple(out))

    costs = {}
    for f in COST_FIELDS:
        rows = _rows(fields[f], n, T, f, allow_short=f in ("hold", "backlog"))
        table = []
        for i, row in enumerate(rows):
            out = []
            for t, v in enumerate(row):
                q = to_rational(v)
                if q < 0:
                    raise NegativeCost(i + 1, t + 1, f)
                out.append(q)
            table.append(tuple(out))
        costs[f] = tuple(table)

    return SIInstance(demand=tuple(demand), **costs)


def make_instance(demand, prod, hold, backlog, setup) -> SIInstance:
    """Validate an instance given as ``n x T`` nested sequences."""
    raw = {
        "players": [
            {"d": d, "p": p, "h": h, "b": b, "k": k}
            for d, p, h, b, k in zip(demand, prod, hold, backlog, setup)
        ]
    }
    if not (len(demand) == len(prod) == len(hold) == len(backlog) == len(setup)):
        raise ShapeMismatch("all arrays must have one row per player")
    return validate(raw)


# -- coalitions -------------------------------------------------------------


def members(mask: int, n: int) -> tuple[int, ...]:
    """0-based member indices of a coalition bitmask."""
    return tuple(i for i in range(n) if mask >> i & 1)


def mask_of(players: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based player labels."""
    mask = 0
    for i in players:
        mask |= 1 << (i - 1)
    return mask


def check_coalition(mask: int, n: int) -> int:
    if mask <= 0:
        raise EmptyCoalition()
    if mask >> n:
        raise ValidationError(f"coalition {mask:#b} has members beyond player {n}")
    return mask


def coalitions(n: int) -> range:
    """All nonempty coalition masks in table order (``mask - 1`` is the index)."""
    return range(1, 1 << n)


def label(mask: int) -> str:
    """``"{1,3}"`` style label of a coalition."""
    return "{" + ",".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


# -- coalition parameters ----------------------------------------------------


@dataclass(frozen=True)
class CoalitionParams:
    """Pooled demand and member-minimum costs of one coalition."""

    demand: tuple[int, ...]
    prod: tuple[Fraction, ...]
    hold: tuple[Fraction, ...]
    backlog: tuple[Fraction, ...]
    setup: tuple[Fraction, ...]

    @property
    def T(self) -> int:
        return len(self.demand)

    @property
    def total_demand(self) -> int:
        return sum(self.demand)

    @classmethod
    def single(cls, demand: Sequence, prod: Sequence, hold: Sequence,
               backlog: Sequence, setup: Sequence) -> "CoalitionParams":
        """Params of a one-player situation, validated like an instance."""
        inst = make_instance([demand], [prod], [hold], [backlog], [setup])
        return coalition_params(inst, 1)


def coalition_params(inst: SIInstance, mask: int) -> CoalitionParams:
    """Aggregate demand (sum) and costs (per-period minimum) over ``mask``."""
    check_coalition(mask, inst.n)
    idx = members(mask, inst.n)
    demand = tuple(sum(inst.demand[i][t] for i in idx) for t in range(inst.T))
    costs = {
        f: tuple(min(getattr(inst, f)[i][t] for i in idx) for t in range(inst.T))
        for f in COST_FIELDS
    }
    return CoalitionParams(demand=demand, **costs)


def player_demand(inst: SIInstance, mask: int) -> tuple[int, ...]:
    """Pooled demand vector of a coalition (zero vector for ``mask == 0``)."""
    idx = members(mask, inst.n)
    return tuple(sum(inst.demand[i][t] for i in idx) for t in range(inst.T))
