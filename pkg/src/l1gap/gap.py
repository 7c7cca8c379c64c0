"""Gap-at-zero decision for integral lattices under polyhedral semi-norms.

A rational null space means the semi-norm descends to a genuine norm on
the quotient, where the projected lattice has a shortest nonzero vector.
An irrational null space yields integral classes of arbitrarily small
positive norm, built by simultaneous Dirichlet approximation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import (BoxExceeded, CapExceeded, DimensionMismatch, NoPositiveWitness,
                     PreconditionError)
from .field import FieldElement
from .linalg import IntegralLattice, Matrix, Subspace, is_rational, rational_points, solve
from .lp import FREE, NONNEG, OPTIMAL, LinearProgram
from .lp import solve as solve_lp
from .seminorm import (QuotientSpace, SeminormedSpace, bounded_dual, evaluate, null_space,
                       pullback, quotient_norm)

DEFAULT_BOX = 64
DEFAULT_EPS = tuple(Fraction(1, 2 ** k) for k in range(1, 6))
DEFAULT_CAP = 2 ** 30


@dataclass(frozen=True)
class Witness:
    q: int
    p: tuple  # integer coefficients over the lattice basis
    alpha_N: tuple  # sum p_j v_j, ambient coordinates
    norm: FieldElement
    Nparam: int
    lambdas: tuple  # coordinates of the approximated null class
    errors: tuple  # |q lambda_j - p_j|
    bound: FieldElement  # sum_j errors_j * ||v_j||
    eps: Fraction | None = None


@dataclass(frozen=True)
class Gap:
    value: FieldElement | None  # None: semi-norm vanishes on the whole lattice
    attaining_class: tuple = ()
    coefficients: tuple = ()  # over the HNF basis of the projected lattice

    @property
    def vacuous(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class NoGap:
    witnesses: tuple
    alpha: tuple


@dataclass(frozen=True)
class GapReport:
    null_basis: Subspace
    bounded_basis: Subspace
    rational_basis: Subspace
    rational: bool
    verdict: Gap | NoGap
    options: dict = dc_field(default_factory=dict)


@dataclass(frozen=True)
class GapValue:
    value: FieldElement
    coefficients: tuple
    norm_constant: FieldElement
    candidate: FieldElement
    radius: int


def _facet_lp(space: SeminormedSpace, j: int, sign: int) -> LinearProgram:
    """min ||z|| subject to z_j = sign and |z_k| <= 1."""
    F = space.field
    r = space.dim
    zero, one = F.zero, F.one
    zb = [(-1, 1)] * r
    zb[j] = (sign, sign)
    if space.is_dual:
        A, b, rel = [], [], []
        for psi in space._scaled:
            A.append([-x for x in psi] + [one])
            A.append(list(psi) + [one])
            b += [zero, zero]
            rel += [">=", ">="]
        return LinearProgram(F, [zero] * r + [one], A, b, rel, zb + [NONNEG])
    pres = space.presentation
    lift = pres.lift if pres.lift is not None else Matrix.identity(r, F)
    W = pres.degenerate
    amb, k = W.ambient_dim, W.dim
    A, b, rel = [], [], []
    for i in range(amb):
        lz = list(lift.rows[i])
        bl = [W.basis[q][i] for q in range(k)]
        unit = [one if t == i else zero for t in range(amb)]
        A.append([-x for x in lz] + bl + unit)
        A.append(lz + [-x for x in bl] + unit)
        b += [zero, zero]
        rel += [">=", ">="]
    return LinearProgram(F, [zero] * (r + k) + [one] * amb, A, b, rel, zb + [FREE] * k + [NONNEG] * amb)


def norm_constant(space: SeminormedSpace) -> FieldElement:
    """Largest c with ||z|| >= c * |z|_inf, from the 2*dim facet LPs."""
    best = None
    for j in range(space.dim):
        for sign in (1, -1):
            sol = solve_lp(_facet_lp(space, j, sign))
            if sol.status != OPTIMAL:
                raise RuntimeError(f"facet LP reported {sol.status}")
            if best is None or sol.value < best:
                best = sol.value
    return best


def gap_value(q: QuotientSpace, box_bound: int = DEFAULT_BOX) -> GapValue:
    """Exact shortest nonzero vector of the projected lattice.

    Ties go to the lexicographically smallest coefficient vector among those
    whose first nonzero entry is positive (the norm is even).
    """
    basis = q.lattice_image.field_basis(q.quotient.field)
    r = len(basis)
    if r == 0:
        raise PreconditionError("quotient is zero-dimensional")
    coeff_space = pullback(q.quotient, Matrix(basis, q.quotient.dim, q.quotient.field).transpose())
    c = norm_constant(coeff_space)
    if c.sign() <= 0:
        raise PreconditionError("quotient semi-norm is degenerate")
    unit = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    m = min(evaluate(coeff_space, e) for e in unit)
    radius = (m / c).floor()
    if radius > box_bound:
        raise BoxExceeded(radius, box_bound)
    best_val, best_z = None, None
    for z in itertools.product(range(-radius, radius + 1), repeat=r):
        lead = next((x for x in z if x), 0)
        if lead <= 0:
            continue
        v = evaluate(coeff_space, z)
        if best_val is None or v < best_val:
            best_val, best_z = v, z
    return GapValue(best_val, best_z, c, m, radius)


def _lattice_coordinates(s: SeminormedSpace, lattice: IntegralLattice, alpha: Sequence) -> tuple:
    basis = lattice.field_basis(s.field)
    return solve(Matrix(basis, s.dim, s.field).transpose(), alpha)


def dirichlet_witness(s: SeminormedSpace, alpha: Sequence, Nparam: int,
                      lattice: IntegralLattice | None = None) -> Witness:
    """First q in 1..Nparam with |q*lambda_j - p_j|^n * Nparam < 1 for all j.

    p_j is the nearest integer to q*lambda_j. The class sum_j p_j v_j is
    returned with its norm; a zero norm raises NoPositiveWitness.
    """
    if Nparam < 1:
        raise ValueError("Nparam must be positive")
    lattice = lattice or IntegralLattice.standard(s.dim)
    if lattice.ambient_dim != s.dim or not lattice.is_full_rank:
        raise PreconditionError("lattice must be full rank in the space")
    alpha = tuple(s.field.coerce(x) for x in alpha)
    if not null_space(s).contains(alpha):
        raise PreconditionError("alpha is not in the null space")
    lambdas = _lattice_coordinates(s, lattice, alpha)
    n = len(lambdas)
    for q in range(1, Nparam + 1):
        ps, errs = [], []
        for lam in lambdas:
            x = lam * q
            p = x.nearest_integer()
            e = abs(x - p)
            if e.is_zero():
                ps.append(p)
                errs.append(e)
                continue
            if (e ** n) * Nparam >= 1:
                break
            ps.append(p)
            errs.append(e)
        else:
            break
    else:
        raise RuntimeError("no Dirichlet approximation found; this contradicts Dirichlet's theorem")
    vs = lattice.basis_vectors()
    alpha_N = tuple(sum((p * v[i] for p, v in zip(ps, vs)), Fraction(0)) for i in range(s.dim))
    norm = evaluate(s, alpha_N)
    bound = s.field.zero
    for e, v in zip(errs, vs):
        if not e.is_zero():
            bound = bound + e * evaluate(s, v)
    if norm > bound:
        raise AssertionError(f"triangle bound violated: {norm} > {bound}")
    w = Witness(q, tuple(ps), alpha_N, norm, Nparam, lambdas, tuple(errs), bound)
    if norm.is_zero():
        raise NoPositiveWitness(f"alpha_N = {alpha_N} has norm 0 at N = {Nparam}", w)
    return w


def choose_alpha(null: Subspace) -> tuple:
    """First canonical basis vector of N outside the span of N ∩ Q^n."""
    span = rational_points(null)
    for b in null.basis:
        if not span.contains(b):
            return b
    raise PreconditionError("null space is rational; no irrational direction to approximate")


def _start_parameter(n: int, eps: Fraction) -> int:
    need = (Fraction(n) / eps) ** n
    N = 1
    while N < need:
        N <<= 1
    return N


def witness_sequence(s: SeminormedSpace, eps_levels: Sequence = DEFAULT_EPS,
                     lattice: IntegralLattice | None = None, alpha: Sequence | None = None,
                     cap: int = DEFAULT_CAP) -> list[Witness]:
    """Witnesses with 0 < norm < eps for each level, strictly decreasing.

    For each level the Dirichlet parameter jumps to the smallest power of two
    N >= (n/eps)^n, where the n approximation errors (each below N^(-1/n))
    first sum to at most eps, then doubles until the level is met. It never
    decreases from one level to the next.
    """
    null = null_space(s)
    if is_rational(null):
        raise PreconditionError("null space is rational; every lattice has a gap")
    if alpha is None:
        alpha = choose_alpha(null)
    n = s.dim
    out: list[Witness] = []
    nparam = 1
    for eps in eps_levels:
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps levels must be positive")
        nparam = max(nparam, min(_start_parameter(n, eps), cap))
        while True:
            if nparam > cap:
                raise CapExceeded(cap, out)
            try:
                w = dirichlet_witness(s, alpha, nparam, lattice)
            except NoPositiveWitness:
                nparam *= 2
                continue
            if w.norm < eps and (not out or w.norm < out[-1].norm):
                out.append(Witness(**{**w.__dict__, "eps": eps}))
                break
            nparam *= 2
    return out


def analyze(s: SeminormedSpace, lattice: IntegralLattice | None = None,
            box_bound: int = DEFAULT_BOX, eps_levels: Sequence = DEFAULT_EPS,
            cap: int = DEFAULT_CAP) -> GapReport:
    lattice = lattice or IntegralLattice.standard(s.dim)
    if lattice.ambient_dim != s.dim:
        raise DimensionMismatch("lattice and space differ in dimension")
    if not lattice.is_full_rank:
        raise PreconditionError("lattice must be full rank")
    null = null_space(s)
    bounded = bounded_dual(s)
    rat = rational_points(null)
    rational = rat.dim == null.dim
    options = {"box_bound": box_bound, "eps_levels": tuple(Fraction(e) for e in eps_levels), "cap": cap}
    if rational:
        if null.is_full():
            verdict = Gap(None)
        else:
            quotient = quotient_norm(s, lattice)
            gv = gap_value(quotient, box_bound)
            verdict = Gap(gv.value, quotient.lift_lattice_vector(gv.coefficients), gv.coefficients)
    else:
        alpha = choose_alpha(null)
        ws = witness_sequence(s, eps_levels, lattice, alpha, cap)
        verdict = NoGap(tuple(ws), alpha)
    return GapReport(null, bounded, rat, rational, verdict, options)
