"""Nucleolus of a cost game by successive exact linear programs."""

from __future__ import annotations

from fractions import Fraction

from .errors import CapExceeded, EmptyCore
from .games import CostGame
from .instance import coalitions, members
from .lp import LinearProgram, rank, solve_lp

MAX_PLAYERS = 10


def _level_lp(game, fixed, free, eps=None):
    """Variables ``x_1..x_n`` and (when ``eps`` is None) the level ``e``."""
    n = game.n
    nv = n if eps is not None else n + 1
    lp = LinearProgram([Fraction(0)] * nv, bounds=[(None, None)] * nv)
    lp.add({i: 1 for i in range(n)}, "=", game(game.grand))
    for mask, level in fixed.items():
        lp.add({i: 1 for i in members(mask, n)}, "=", game(mask) - level)
    for mask in free:
        row = {i: 1 for i in members(mask, n)}
        if eps is None:
            row[n] = 1
            lp.add(row, "<=", game(mask))
        else:
            lp.add(row, "<=", game(mask) - eps)
    return lp


def nucleolus(game: CostGame, max_players: int = MAX_PLAYERS) -> tuple[Fraction, ...]:
    """The allocation that lexicographically maximizes the sorted excesses
    ``c(S) - x(S)`` over proper coalitions, subject to ``x(N) = c(N)``.

    Each round maximizes the smallest excess ``e`` among coalitions not yet
    fixed.  A coalition is then fixed at that level when its excess cannot
    exceed ``e`` on the optimal face, which is decided by minimizing ``x(S)``
    over the face.  Rounds stop once the fixed coalitions pin ``x`` down.

    Raises EmptyCore when the first level is negative.
    """
    n = game.n
    if n > max_players:
        raise CapExceeded(f"nucleolus limited to {max_players} players, got {n}")
    if n == 1:
        return (game(1),)
    vec = {m: [1 if m >> i & 1 else 0 for i in range(n)] for m in coalitions(n)}
    fixed: dict[int, Fraction] = {}
    free = [m for m in range(1, game.grand)]
    first = True
    while True:
        lp = _level_lp(game, fixed, free)
        lp.objective[n] = Fraction(1)
        lp.sense = "max"
        sol = solve_lp(lp)
        if not sol.optimal:
            raise AssertionError(f"nucleolus level LP is {sol.status}")
        level = sol.objective
        if first and level < 0:
            raise EmptyCore("the game has an empty core")
        first = False
        x = sol.x[:n]
        newly = []
        for mask in free:
            load = sum(x[i] for i in members(mask, n))
            if load + level != game(mask):
                continue  # strictly above the level at an optimal point
            probe = _level_lp(game, fixed, free, eps=level)
            probe.objective = [Fraction(1) if mask >> i & 1 else Fraction(0) for i in range(n)]
            lowest = solve_lp(probe)
            if lowest.optimal and lowest.objective == game(mask) - level:
                newly.append(mask)
        if not newly:
            raise AssertionError("no coalition fixed at this level")
        for mask in newly:
            fixed[mask] = level
        free = [m for m in free if m not in fixed]
        if rank([vec[game.grand]] + [vec[m] for m in fixed]) == n:
            return tuple(x)
