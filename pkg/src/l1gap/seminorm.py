"""Finite-dimensional spaces carrying a polyhedral semi-norm.

Two presentations are supported:

* ``DualPresentation``: ``||a|| = max_i |<phi_i, a>| / w_i`` over finitely
  many weighted functionals (empty list: the zero semi-norm).
* ``PrimalPresentation``: ``||a|| = min_{w in W} |L a - w|_1`` for a
  degenerate subspace ``W`` and an injective-or-not linear lift ``L``
  (identity unless stated). Quotients of primal spaces are primal spaces
  with a non-trivial lift.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import DimensionMismatch, FieldMismatch, IrrationalNullSpace, PreconditionError
from .field import FieldDescriptor, FieldElement
from .linalg import (IntegralLattice, Matrix, Subspace, annihilator, dot, is_rational,
                     kernel, rational_points)
from .lp import l1_distance


@dataclass(frozen=True)
class DualPresentation:
    functionals: tuple  # ((phi, weight), ...)


@dataclass(frozen=True)
class PrimalPresentation:
    degenerate: Subspace
    lift: Matrix | None = None


@dataclass(frozen=True)
class SeminormedSpace:
    field: FieldDescriptor
    dim: int
    presentation: DualPresentation | PrimalPresentation

    def __post_init__(self):
        pres = self.presentation
        if isinstance(pres, DualPresentation):
            for phi, w in pres.functionals:
                if len(phi) != self.dim:
                    raise DimensionMismatch(f"functional of length {len(phi)} on a {self.dim}-dim space")
                if w.field != self.field or any(x.field != self.field for x in phi):
                    raise FieldMismatch("functional outside the space's field")
                if w.sign() <= 0:
                    raise PreconditionError(f"weight {w} is not positive")
        elif isinstance(pres, PrimalPresentation):
            if pres.degenerate.field != self.field:
                raise FieldMismatch("degenerate subspace outside the space's field")
            if pres.lift is None:
                if pres.degenerate.ambient_dim != self.dim:
                    raise DimensionMismatch("degenerate subspace must live in the space itself")
            elif pres.lift.shape != (pres.degenerate.ambient_dim, self.dim):
                raise DimensionMismatch(f"lift of shape {pres.lift.shape} does not match")
        else:
            raise TypeError(f"unknown presentation {type(pres).__name__}")

    @classmethod
    def dual(cls, field: FieldDescriptor, dim: int, functionals) -> "SeminormedSpace":
        """``functionals`` is an iterable of ``(coefficients, weight)``."""
        funcs = tuple((tuple(field.coerce(x) for x in phi), field.coerce(w)) for phi, w in functionals)
        return cls(field, dim, DualPresentation(funcs))

    @classmethod
    def primal(cls, degenerate: Subspace, lift: Matrix | None = None) -> "SeminormedSpace":
        if lift is not None and lift.is_identity():
            lift = None
        dim = degenerate.ambient_dim if lift is None else lift.ncols
        return cls(degenerate.field, dim, PrimalPresentation(degenerate, lift))

    @property
    def is_dual(self) -> bool:
        return isinstance(self.presentation, DualPresentation)

    @property
    def is_primal(self) -> bool:
        return isinstance(self.presentation, PrimalPresentation)

    @cached_property
    def _scaled(self) -> tuple:
        out = []
        for phi, w in self.presentation.functionals:
            inv = w.inverse()
            out.append(tuple(x * inv for x in phi))
        return tuple(out)

    def _lift(self, alpha: Sequence) -> tuple:
        lift = self.presentation.lift
        return tuple(alpha) if lift is None else lift.apply(alpha)


def _check_vector(s: SeminormedSpace, alpha: Sequence) -> tuple:
    if len(alpha) != s.dim:
        raise DimensionMismatch(f"vector of length {len(alpha)} on a {s.dim}-dim space")
    return tuple(s.field.coerce(x) for x in alpha)


def evaluate(s: SeminormedSpace, alpha: Sequence) -> FieldElement:
    alpha = _check_vector(s, alpha)
    if s.is_dual:
        best = s.field.zero
        for phi in s._scaled:
            v = abs(dot(phi, alpha))
            if v > best:
                best = v
        return best
    return l1_distance(s._lift(alpha), s.presentation.degenerate).value


def duality_certificate(s: SeminormedSpace, alpha: Sequence) -> tuple[FieldElement, tuple]:
    """For a primal space: (||alpha||, phi) with <phi, alpha> = ||alpha||.

    ``phi`` is the LP dual functional pulled back along the lift, so it
    vanishes on the null space and (for the identity lift) has sup-norm <= 1.
    """
    if not s.is_primal:
        raise PreconditionError("duality certificates come from the primal LP")
    alpha = _check_vector(s, alpha)
    res = l1_distance(s._lift(alpha), s.presentation.degenerate)
    phi = res.certificate
    lift = s.presentation.lift
    if lift is not None:
        phi = lift.transpose().apply(phi)
    return res.value, phi


def null_space(s: SeminormedSpace) -> Subspace:
    if s.is_dual:
        rows = [phi for phi, _ in s.presentation.functionals]
        return kernel(Matrix(rows, s.dim, s.field))
    pres = s.presentation
    if pres.lift is None:
        return pres.degenerate
    constraints = Matrix(annihilator(pres.degenerate).basis, pres.degenerate.ambient_dim, s.field)
    return kernel(constraints @ pres.lift)


def bounded_dual(s: SeminormedSpace) -> Subspace:
    return annihilator(null_space(s))


def pullback(s: SeminormedSpace, m: Matrix) -> SeminormedSpace:
    """The semi-norm ``x -> ||m x||`` on F^{m.ncols}."""
    if m.nrows != s.dim:
        raise DimensionMismatch(f"pullback along {m.shape} into a {s.dim}-dim space")
    if s.is_dual:
        mt = m.transpose()
        funcs = [(mt.apply(phi), w) for phi, w in s.presentation.functionals]
        return SeminormedSpace.dual(s.field, m.ncols, funcs)
    pres = s.presentation
    lift = m if pres.lift is None else pres.lift @ m
    return SeminormedSpace.primal(pres.degenerate, lift)


@dataclass(frozen=True)
class QuotientSpace:
    base: SeminormedSpace
    null: Subspace
    projection: Matrix  # (dim - k) x dim, rational
    section: Matrix  # dim x (dim - k), right inverse of projection
    quotient: SeminormedSpace
    lattice: IntegralLattice
    lattice_image: IntegralLattice

    def project(self, alpha: Sequence) -> tuple:
        return self.projection.apply(alpha)

    def lift_lattice_vector(self, coeffs: Sequence[int]) -> tuple:
        """Ambient lattice vector mapping to ``sum coeffs_i * image_basis_i``."""
        gens = self.lattice.generators
        out = [0] * self.base.dim
        for c, pre in zip(coeffs, self.lattice_image.basis_preimages()):
            if c == 0:
                continue
            for t, g in zip(pre, gens):
                if t:
                    out = [o + c * t * x for o, x in zip(out, g)]
        return tuple(out)


def quotient_norm(s: SeminormedSpace, lattice: IntegralLattice) -> QuotientSpace:
    """Pass to F^dim / N with the induced norm and the projected lattice.

    Quotient coordinates are the non-pivot coordinates of the canonical
    (hence rational) basis of N.
    """
    if lattice.ambient_dim != s.dim:
        raise DimensionMismatch("lattice and space differ in dimension")
    n_sub = null_space(s)
    if not is_rational(n_sub):
        raise IrrationalNullSpace(f"null space {n_sub} is not rational")
    F = s.field
    pivots = list(n_sub.pivots)
    free = [c for c in range(s.dim) if c not in pivots]
    proj_rows = []
    for f in free:
        row = [F.zero] * s.dim
        row[f] = F.one
        for r, p in zip(n_sub.basis, pivots):
            if not r[f].is_zero():
                row[p] = -r[f]
        proj_rows.append(row)
    projection = Matrix(proj_rows, s.dim, F)
    section = Matrix([[F.one if c == f else F.zero for f in free] for c in range(s.dim)], len(free), F)
    quotient = pullback(s, section)
    images = [projection.apply(g) for g in lattice.generators]
    image_lattice = IntegralLattice.from_generators(images, len(free))
    return QuotientSpace(s, n_sub, projection, section, quotient, lattice, image_lattice)


def rational_null_certificate(s: SeminormedSpace) -> Subspace:
    """Basis of N ∩ Q^dim, reported alongside verdicts."""
    return rational_points(null_space(s))
