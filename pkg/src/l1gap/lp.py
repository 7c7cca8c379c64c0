"""Exact dense-tableau simplex over an ordered FieldDescriptor.

Two phases, Bland's rule throughout. Duals are read off the final tableau
from the columns that formed the initial identity basis.

Sign conventions for ``LPSolution.dual`` (one entry per constraint row) and
``reduced_costs`` (one per variable) follow the Lagrangian
``c = A^T y + r``: for a minimisation, ``>=`` rows carry ``y >= 0`` and
``<=`` rows ``y <= 0``; a variable with ``r > 0`` sits at its lower bound
and one with ``r < 0`` at its upper bound. For a maximisation all signs flip.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, PreconditionError
from .field import FieldDescriptor, FieldElement
from .linalg import Subspace, dot

FREE = (None, None)
NONNEG = (0, None)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    field: FieldDescriptor
    objective: Sequence
    A: Sequence[Sequence]
    b: Sequence
    relations: Sequence[str]
    bounds: Sequence[tuple] | None = None
    sense: str = "min"

    def __post_init__(self):
        F = self.field
        n = len(self.objective)
        self.objective = tuple(F.coerce(x) for x in self.objective)
        self.A = tuple(tuple(F.coerce(x) for x in row) for row in self.A)
        self.b = tuple(F.coerce(x) for x in self.b)
        self.relations = tuple(self.relations)
        if len(self.A) != len(self.b) or len(self.b) != len(self.relations):
            raise DimensionMismatch("A, b and relations disagree on the number of rows")
        if any(len(row) != n for row in self.A):
            raise DimensionMismatch("constraint row length differs from objective length")
        if any(r not in ("<=", "=", ">=") for r in self.relations):
            raise ValueError(f"relations must be '<=', '=' or '>=': {self.relations}")
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        bounds = self.bounds if self.bounds is not None else [NONNEG] * n
        if len(bounds) != n:
            raise DimensionMismatch("one (lo, hi) pair per variable required")
        self.bounds = tuple(
            (None if lo is None else F.coerce(lo), None if hi is None else F.coerce(hi))
            for lo, hi in bounds)

    @property
    def nvars(self) -> int:
        return len(self.objective)


@dataclass
class LPSolution:
    status: str
    primal: tuple | None = None
    value: FieldElement | None = None
    dual: tuple | None = None
    reduced_costs: tuple | None = None


class _Tableau:
    def __init__(self, rows, rhs, basis, field):
        self.t = rows
        self.rhs = rhs
        self.basis = basis
        self.F = field

    def pivot(self, r: int, c: int):
        t = self.t
        piv = t[r][c]
        if piv != 1:
            inv = piv.inverse()
            t[r] = [x * inv if not x.is_zero() else x for x in t[r]]
            self.rhs[r] = self.rhs[r] * inv
        prow = t[r]
        nz = [j for j, x in enumerate(prow) if not x.is_zero()]
        for i in range(len(t)):
            if i == r:
                continue
            f = t[i][c]
            if f.is_zero():
                continue
            row = t[i]
            for j in nz:
                row[j] = row[j] - f * prow[j]
            self.rhs[i] = self.rhs[i] - f * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost):
        ncols = len(self.t[0]) if self.t else len(cost)
        red = list(cost)
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb.is_zero():
                continue
            row = self.t[i]
            for j in range(ncols):
                if not row[j].is_zero():
                    red[j] = red[j] - cb * row[j]
        return red

    def run(self, cost, allowed) -> str:
        """Minimise cost over the current basis; Bland's rule."""
        while True:
            red = self.reduced_costs(cost)
            enter = next((j for j in allowed if red[j].sign() < 0), None)
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for i, row in enumerate(self.t):
                a = row[enter]
                if a.sign() > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return UNBOUNDED
            self.pivot(leave, enter)


def solve(lp: LinearProgram) -> LPSolution:
    F = lp.field
    zero, one = F.zero, F.one
    n = lp.nvars
    c = lp.objective if lp.sense == "min" else tuple(-x for x in lp.objective)

    # variable substitution x_j = offset_j + sum(sign * x'_k)
    columns: list[list[tuple[int, int]]] = []
    offsets = []
    upper_rows = []  # (std column, width)
    nstd = 0
    for lo, hi in lp.bounds:
        if lo is not None:
            columns.append([(nstd, 1)])
            offsets.append(lo)
            if hi is not None:
                if hi < lo:
                    return LPSolution(INFEASIBLE)
                upper_rows.append((nstd, hi - lo))
            nstd += 1
        elif hi is not None:
            columns.append([(nstd, -1)])
            offsets.append(hi)
            nstd += 1
        else:
            columns.append([(nstd, 1), (nstd + 1, -1)])
            offsets.append(zero)
            nstd += 2

    rows, rhs, rels = [], [], []
    for arow, bi, rel in zip(lp.A, lp.b, lp.relations):
        row = [zero] * nstd
        shift = bi
        for j, a in enumerate(arow):
            if a.is_zero():
                continue
            for k, s in columns[j]:
                row[k] = a if s == 1 else -a
            if not offsets[j].is_zero():
                shift = shift - a * offsets[j]
        rows.append(row)
        rhs.append(shift)
        rels.append(rel)
    for k, width in upper_rows:
        row = [zero] * nstd
        row[k] = one
        rows.append(row)
        rhs.append(width)
        rels.append("<=")
    cstd = [zero] * nstd
    for j, cj in enumerate(c):
        for k, s in columns[j]:
            cstd[k] = cj if s == 1 else -cj

    m = len(rows)
    flips = []
    for i in range(m):
        if rhs[i].sign() < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
            rels[i] = {"<=": ">=", ">=": "<=", "=": "="}[rels[i]]
            flips.append(-1)
        else:
            flips.append(1)

    # slack / surplus / artificial columns
    extra = []  # (row, coefficient, kind)
    for i, rel in enumerate(rels):
        if rel == "<=":
            extra.append((i, 1, "slack"))
        elif rel == ">=":
            extra.append((i, -1, "surplus"))
            extra.append((i, 1, "art"))
        else:
            extra.append((i, 1, "art"))
    ncols = nstd + len(extra)
    table = [r + [zero] * len(extra) for r in rows]
    basis = [None] * m
    identity_col = [None] * m
    artificial = set()
    for e, (i, coef, kind) in enumerate(extra):
        col = nstd + e
        table[i][col] = one if coef == 1 else -one
        if kind != "surplus":
            basis[i] = col
            identity_col[i] = col
        if kind == "art":
            artificial.add(col)

    tab = _Tableau(table, list(rhs), basis, F)
    if artificial:
        phase1 = [one if j in artificial else zero for j in range(ncols)]
        tab.run(phase1, range(ncols))
        infeas = sum((tab.rhs[i] for i, bj in enumerate(tab.basis) if bj in artificial), zero)
        if infeas.sign() > 0:
            return LPSolution(INFEASIBLE)
        for i in range(m):
            if tab.basis[i] in artificial:
                j = next((j for j in range(ncols) if j not in artificial and not tab.t[i][j].is_zero()), None)
                if j is not None:
                    tab.pivot(i, j)

    cost = cstd + [zero] * len(extra)
    allowed = [j for j in range(ncols) if j not in artificial]
    if tab.run(cost, allowed) == UNBOUNDED:
        return LPSolution(UNBOUNDED)

    xstd = [zero] * ncols
    for i, bj in enumerate(tab.basis):
        xstd[bj] = tab.rhs[i]
    x = []
    for j in range(n):
        v = offsets[j]
        for k, s in columns[j]:
            v = v + xstd[k] if s == 1 else v - xstd[k]
        x.append(v)

    y = []
    for i in range(len(lp.A)):
        col = identity_col[i]
        yi = zero
        for k, bj in enumerate(tab.basis):
            cb = cost[bj]
            if not cb.is_zero():
                yi = yi + cb * tab.t[k][col]
        yi = yi * flips[i]
        y.append(yi if lp.sense == "min" else -yi)

    value = dot(lp.objective, x) if n else zero
    red = []
    for j in range(n):
        rj = lp.objective[j]
        for i, arow in enumerate(lp.A):
            if not arow[j].is_zero() and not y[i].is_zero():
                rj = rj - arow[j] * y[i]
        red.append(rj)
    return LPSolution(OPTIMAL, tuple(x), value, tuple(y), tuple(red))


def dual_objective(lp: LinearProgram, sol: LPSolution) -> FieldElement:
    """b·y plus the bound terms r_j·(active bound); equals the optimum at optimality."""
    if sol.status != OPTIMAL:
        raise PreconditionError("dual objective requires an optimal solution")
    total = dot(lp.b, sol.dual) if lp.b else lp.field.zero
    for (lo, hi), r in zip(lp.bounds, sol.reduced_costs):
        s = r.sign()
        if s == 0:
            continue
        if lp.sense == "max":
            s = -s
        bound = lo if s > 0 else hi
        if bound is None:
            raise PreconditionError("reduced cost pushes against an infinite bound")
        total = total + r * bound
    return total


def dual_feasible(lp: LinearProgram, sol: LPSolution) -> bool:
    """Sign conditions on row duals and reduced costs."""
    flip = 1 if lp.sense == "min" else -1
    for rel, yi in zip(lp.relations, sol.dual):
        s = yi.sign() * flip
        if rel == ">=" and s < 0 or rel == "<=" and s > 0:
            return False
    for (lo, hi), r in zip(lp.bounds, sol.reduced_costs):
        s = r.sign() * flip
        if s > 0 and lo is None or s < 0 and hi is None:
            return False
    return True


def complementary_slackness(lp: LinearProgram, sol: LPSolution) -> bool:
    for arow, bi, yi in zip(lp.A, lp.b, sol.dual):
        if not yi.is_zero() and dot(arow, sol.primal) != bi:
            return False
    flip = 1 if lp.sense == "min" else -1
    for (lo, hi), r, xj in zip(lp.bounds, sol.reduced_costs, sol.primal):
        s = r.sign() * flip
        if s > 0 and xj != lo or s < 0 and xj != hi:
            return False
    return True


@dataclass
class L1Distance:
    value: FieldElement
    witness: tuple  # the minimising element of W
    certificate: tuple  # phi with |phi|_inf <= 1, phi ⊥ W, <phi, point> = value
    lp: LinearProgram | None = None
    solution: LPSolution | None = None


def l1_distance(point: Sequence, w: Subspace) -> L1Distance:
    """min over w' in W of |point - w'|_1, with its dual functional.

    Epigraph LP in (lambda, t): minimise sum t subject to
    t_i + (B lambda)_i >= p_i and t_i - (B lambda)_i >= -p_i.
    The duals y+, y- of the two row families give phi = y+ - y-.
    """
    F = w.field
    n = w.ambient_dim
    if len(point) != n:
        raise DimensionMismatch(f"point of length {len(point)} vs ambient dimension {n}")
    p = [F.coerce(x) for x in point]
    k = w.dim
    zero, one = F.zero, F.one
    if k == 0:
        value = sum((abs(x) for x in p), zero)
        phi = tuple(F(x.sign()) for x in p)
        return L1Distance(value, tuple([zero] * n), phi)
    basis = w.basis
    A, b, rel = [], [], []
    for i in range(n):
        col = [basis[j][i] for j in range(k)]
        unit = [one if q == i else zero for q in range(n)]
        A.append(col + unit)
        b.append(p[i])
        rel.append(">=")
        A.append([-x for x in col] + unit)
        b.append(-p[i])
        rel.append(">=")
    objective = [zero] * k + [one] * n
    lp = LinearProgram(F, objective, A, b, rel, [FREE] * k + [NONNEG] * n)
    sol = solve(lp)
    if sol.status != OPTIMAL:
        raise RuntimeError(f"l1 epigraph LP reported {sol.status}")
    lam = sol.primal[:k]
    witness = tuple(dot(lam, [basis[j][i] for j in range(k)]) for i in range(n))
    phi = tuple(sol.dual[2 * i] - sol.dual[2 * i + 1] for i in range(n))
    return L1Distance(sol.value, witness, phi, lp, sol)
