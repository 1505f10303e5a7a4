"""Exact rational linear programming.

A two-phase primal simplex on a sparse tableau (rows are ``{column: value}``
dicts of Fractions) with Bland's rule for both the entering and the leaving
variable, so it always terminates.  Duals are recovered from the final basis
by solving ``B^T y = c_B`` exactly.

Sign convention for duals: ``duals[i]`` is the sensitivity of the optimal
objective to the right-hand side of constraint ``i``.  For a minimization,
``>=`` rows get non-negative duals and ``<=`` rows non-positive ones; for a
maximization it is the other way round.  Reduced costs are
``c_j - sum_i a_ij * duals[i]`` and the dual objective is
``sum_i b_i * duals[i] + sum_j reduced_j * x_j`` (the second sum only picks up
variables sitting at a finite bound).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import MalformedLP

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RELATIONS = ("<=", ">=", "=")
_ZERO = Fraction(0)


@dataclass
class Constraint:
    coeffs: dict[int, Fraction]
    relation: str
    rhs: Fraction


@dataclass
class LinearProgram:
    """``min``/``max`` of ``objective . x`` subject to linear rows and bounds.

    ``bounds[j]`` is ``(lower, upper)`` with ``None`` for an infinite side;
    the default is ``(0, None)``.
    """

    objective: list[Fraction]
    sense: str = "min"
    constraints: list[Constraint] = field(default_factory=list)
    bounds: list[tuple] | None = None

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, coeffs: Sequence | Mapping[int, object], relation: str, rhs) -> int:
        """Append a row (dense sequence or sparse ``{j: a_j}``); returns its index."""
        if isinstance(coeffs, Mapping):
            row = {j: Fraction(a) for j, a in coeffs.items() if a != 0}
        else:
            if len(coeffs) != self.num_vars:
                raise MalformedLP(
                    f"row has {len(coeffs)} coefficients, expected {self.num_vars}"
                )
            row = {j: Fraction(a) for j, a in enumerate(coeffs) if a != 0}
        self.constraints.append(Constraint(row, relation, Fraction(rhs)))
        return len(self.constraints) - 1


@dataclass
class LPSolution:
    status: str
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    duals: tuple[Fraction, ...] | None = None
    reduced_costs: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    def dual_objective(self, lp: LinearProgram) -> Fraction:
        value = sum((c.rhs * y for c, y in zip(lp.constraints, self.duals)), _ZERO)
        return value + sum((r * v for r, v in zip(self.reduced_costs, self.x)), _ZERO)


def _check(lp: LinearProgram) -> list[tuple]:
    if lp.sense not in ("min", "max"):
        raise MalformedLP(f"unknown sense {lp.sense!r}")
    nv = lp.num_vars
    bounds = lp.bounds if lp.bounds is not None else [(0, None)] * nv
    if len(bounds) != nv:
        raise MalformedLP(f"{len(bounds)} bounds for {nv} variables")
    out = []
    for j, (lo, hi) in enumerate(bounds):
        lo = None if lo is None else Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        if lo is not None and hi is not None and lo > hi:
            raise MalformedLP(f"variable {j}: lower bound {lo} exceeds upper bound {hi}")
        out.append((lo, hi))
    for i, con in enumerate(lp.constraints):
        if con.relation not in _RELATIONS:
            raise MalformedLP(f"row {i}: unknown relation {con.relation!r}")
        if any(not 0 <= j < nv for j in con.coeffs):
            raise MalformedLP(f"row {i}: column index out of range")
    return out


def _pivot(rows, rhs, obj, r, q):
    prow = rows[r]
    piv = prow[q]
    if piv != 1:
        inv = 1 / piv
        for j in prow:
            prow[j] *= inv
        rhs[r] *= inv
    items = list(prow.items())
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row.get(q)
        if f is None:
            continue
        for j, a in items:
            v = row.get(j, _ZERO) - f * a
            if v:
                row[j] = v
            else:
                row.pop(j, None)
        rhs[i] -= f * rhs[r]
    f = obj[0].get(q)
    if f is not None:
        for j, a in items:
            v = obj[0].get(j, _ZERO) - f * a
            if v:
                obj[0][j] = v
            else:
                obj[0].pop(j, None)
        obj[1] -= f * rhs[r]


def _simplex(rows, rhs, basis, obj, blocked):
    """Minimize in place; ``obj = [reduced_costs, -value]``. Returns False if unbounded."""
    while True:
        q = None
        for j in sorted(obj[0]):
            if obj[0][j] < 0 and j not in blocked:
                q = j
                break
        if q is None:
            return True
        r, best = None, None
        for i, row in enumerate(rows):
            a = row.get(q)
            if a is not None and a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[r]):
                    r, best = i, ratio
        if r is None:
            return False
        _pivot(rows, rhs, obj, r, q)
        basis[r] = q


def _solve_square(matrix, vector):
    """Solve ``matrix @ y = vector`` exactly (matrix assumed nonsingular)."""
    m = len(vector)
    aug = [list(matrix[i]) + [vector[i]] for i in range(m)]
    for col in range(m):
        piv = next(i for i in range(col, m) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        for i in range(m):
            if i != col and aug[i][col] != 0:
                f = aug[i][col] / p
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][m] / aug[i][i] for i in range(m)]


def _independent_rows(vectors) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily."""
    echelon = []  # (pivot column, row)
    chosen = []
    for idx, vec in enumerate(vectors):
        row = [Fraction(v) for v in vec]
        for col, base in echelon:
            if row[col]:
                f = row[col] / base[col]
                row = [a - f * b for a, b in zip(row, base)]
        col = next((j for j, v in enumerate(row) if v), None)
        if col is not None:
            echelon.append((col, row))
            chosen.append(idx)
    return chosen


def rank(vectors: Sequence[Sequence]) -> int:
    """Exact rank of a list of equal-length rational vectors."""
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Solve ``lp`` exactly; see the module docstring for dual conventions."""
    bounds = _check(lp)
    nv = lp.num_vars
    sign = 1 if lp.sense == "min" else -1

    # x_j = offset_j + sum(s * x'_col) with x' >= 0
    subst, offsets, ncols, bound_rows = [], [], 0, []
    for lo, hi in bounds:
        if lo is not None:
            subst.append(((ncols, 1),))
            offsets.append(lo)
            if hi is not None:
                bound_rows.append((ncols, hi - lo))
            ncols += 1
        elif hi is not None:
            subst.append(((ncols, -1),))
            offsets.append(hi)
            ncols += 1
        else:
            subst.append(((ncols, 1), (ncols + 1, -1)))
            offsets.append(_ZERO)
            ncols += 2

    cost = [_ZERO] * ncols
    for j, c in enumerate(lp.objective):
        c = Fraction(c) * sign
        for col, s in subst[j]:
            cost[col] += c * s

    std = []  # (row dict over structural cols, relation, rhs)
    for con in lp.constraints:
        row, b = {}, con.rhs
        for j, a in con.coeffs.items():
            b -= a * offsets[j]
            for col, s in subst[j]:
                row[col] = row.get(col, _ZERO) + a * s
        std.append(({k: v for k, v in row.items() if v}, con.relation, b))
    for col, ub in bound_rows:
        std.append(({col: Fraction(1)}, "<=", ub))

    m = len(std)
    rows, rhs, basis, flips, artificials = [], [], [], [], set()
    nslack = sum(1 for _, rel, _ in std if rel != "=")
    next_slack, next_art = ncols, ncols + nslack
    for row, rel, b in std:
        row = dict(row)
        slack = None
        if rel == "<=":
            slack, row[next_slack] = next_slack, Fraction(1)
            next_slack += 1
        elif rel == ">=":
            slack, row[next_slack] = next_slack, Fraction(-1)
            next_slack += 1
        flip = 1
        if b < 0:
            flip, b = -1, -b
            row = {k: -v for k, v in row.items()}
        flips.append(flip)
        if slack is not None and row[slack] == 1:
            basis.append(slack)
        else:
            row[next_art] = Fraction(1)
            basis.append(next_art)
            artificials.add(next_art)
            next_art += 1
        rows.append(row)
        rhs.append(b)
    original = [dict(r) for r in rows]

    # phase 1: minimize the sum of artificials
    if artificials:
        red = {}
        value = _ZERO
        for i, row in enumerate(rows):
            if basis[i] in artificials:
                value -= rhs[i]
                for j, a in row.items():
                    if j not in artificials:
                        red[j] = red.get(j, _ZERO) - a
        obj = [{j: v for j, v in red.items() if v}, value]
        _simplex(rows, rhs, basis, obj, blocked=set())
        if obj[1] != 0:
            return LPSolution(INFEASIBLE)
        # drive zero-valued artificials out of the basis; drop redundant rows
        keep = []
        for i in range(m):
            if basis[i] in artificials:
                q = next((j for j in sorted(rows[i]) if j not in artificials), None)
                if q is None:
                    continue
                _pivot(rows, rhs, [{}, _ZERO], i, q)
                basis[i] = q
            keep.append(i)
        rows = [{j: a for j, a in rows[i].items() if j not in artificials} for i in keep]
        rhs = [rhs[i] for i in keep]
        basis = [basis[i] for i in keep]

    # phase 2
    full_cost = cost + [_ZERO] * nslack
    red = {j: c for j, c in enumerate(full_cost) if c}
    value = _ZERO
    for i, row in enumerate(rows):
        cb = full_cost[basis[i]]
        if cb:
            value -= cb * rhs[i]
            for j, a in row.items():
                red[j] = red.get(j, _ZERO) - cb * a
    obj = [{j: v for j, v in red.items() if v}, value]
    if not _simplex(rows, rhs, basis, obj, blocked=set()):
        return LPSolution(UNBOUNDED)

    xs = [_ZERO] * (ncols + nslack)
    for i, b in enumerate(basis):
        xs[b] = rhs[i]
    x = tuple(
        offsets[j] + sum((s * xs[col] for col, s in subst[j]), _ZERO) for j in range(nv)
    )
    objective = sum((Fraction(c) * v for c, v in zip(lp.objective, x)), _ZERO)

    # duals: B^T y = c_B over original rows independent on the basis columns;
    # the remaining (redundant) rows get a zero dual.  The tableau rows dropped
    # in phase 1 are combinations of original rows, so the independent set
    # has to be recomputed here.
    keep = _independent_rows([[original[i].get(b, _ZERO) for b in basis] for i in range(m)])
    k = len(keep)
    mat = [[original[keep[r]].get(basis[c], _ZERO) for r in range(k)] for c in range(k)]
    y_kept = _solve_square(mat, [full_cost[b] for b in basis]) if k else []
    y_std = [_ZERO] * m
    for r, i in enumerate(keep):
        y_std[i] = y_kept[r]
    duals = tuple(sign * flips[i] * y_std[i] for i in range(len(lp.constraints)))
    reduced = []
    for j, c in enumerate(lp.objective):
        reduced.append(Fraction(c))
    for con, y in zip(lp.constraints, duals):
        if y:
            for j, a in con.coeffs.items():
                reduced[j] -= a * y
    return LPSolution(OPTIMAL, x, objective, duals, tuple(reduced))
