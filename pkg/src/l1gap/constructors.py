"""Building new semi-normed spaces from old ones.

Direct sums model free products, Kronecker products model the Künneth
decomposition of products, and dual transport models a map on cohomology
that is onto on the bounded part.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .errors import DimensionMismatch, FieldMismatch, PreconditionError, PresentationMismatch
from .field import QQ
from .linalg import IntegralLattice, Matrix, Subspace, kron
from .seminorm import DualPresentation, SeminormedSpace, null_space


def _same_field(s1: SeminormedSpace, s2: SeminormedSpace):
    if s1.field != s2.field:
        raise FieldMismatch(f"{s1.field} vs {s2.field}")


def direct_sum(s1: SeminormedSpace, s2: SeminormedSpace) -> SeminormedSpace:
    """Max-combination for dual presentations, l1-sum for primal ones."""
    _same_field(s1, s2)
    if s2.dim == 0:
        return s1
    if s1.dim == 0:
        return s2
    F = s1.field
    n1, n2 = s1.dim, s2.dim
    if s1.is_dual and s2.is_dual:
        zeros1, zeros2 = (F.zero,) * n1, (F.zero,) * n2
        funcs = [(phi + zeros2, w) for phi, w in s1.presentation.functionals]
        funcs += [(zeros1 + psi, w) for psi, w in s2.presentation.functionals]
        return SeminormedSpace(F, n1 + n2, DualPresentation(tuple(funcs)))
    if s1.is_primal and s2.is_primal:
        p1, p2 = s1.presentation, s2.presentation
        a1, a2 = p1.degenerate.ambient_dim, p2.degenerate.ambient_dim
        W = Subspace.span([b + (F.zero,) * a2 for b in p1.degenerate.basis]
                          + [(F.zero,) * a1 + b for b in p2.degenerate.basis], a1 + a2, F)
        if p1.lift is None and p2.lift is None:
            return SeminormedSpace.primal(W)
        l1 = p1.lift or Matrix.identity(n1, F)
        l2 = p2.lift or Matrix.identity(n2, F)
        rows = [r + (F.zero,) * n2 for r in l1.rows] + [(F.zero,) * n1 + r for r in l2.rows]
        return SeminormedSpace.primal(W, Matrix(rows, n1 + n2, F))
    raise PresentationMismatch("direct sum of a primal and a dual presentation")


def direct_sum_all(spaces: Sequence[SeminormedSpace]) -> SeminormedSpace:
    return reduce(direct_sum, spaces)


def tensor(s1: SeminormedSpace, s2: SeminormedSpace) -> SeminormedSpace:
    """Kronecker product of dual presentations: phi_i ⊗ psi_j with weight w_i * w'_j."""
    _same_field(s1, s2)
    if not (s1.is_dual and s2.is_dual):
        raise PresentationMismatch("tensor products are built from dual presentations")
    funcs = [(kron(phi, psi), w * v)
             for phi, w in s1.presentation.functionals
             for psi, v in s2.presentation.functionals]
    return SeminormedSpace(s1.field, s1.dim * s2.dim, DualPresentation(tuple(funcs)))


def tensor_null_formula(s1: SeminormedSpace, s2: SeminormedSpace) -> Subspace:
    """N1 ⊗ H2 + H1 ⊗ N2, spanned by Kronecker lifts of basis vectors."""
    _same_field(s1, s2)
    F = s1.field
    n1, n2 = s1.dim, s2.dim
    e1 = [tuple(F.one if i == j else F.zero for i in range(n1)) for j in range(n1)]
    e2 = [tuple(F.one if i == j else F.zero for i in range(n2)) for j in range(n2)]
    gens = [kron(a, e) for a in null_space(s1).basis for e in e2]
    gens += [kron(e, b) for e in e1 for b in null_space(s2).basis]
    return Subspace.span(gens, n1 * n2, F)


@dataclass(frozen=True)
class GradedSpace:
    """Degrees 0..d of a graded semi-normed space."""

    degrees: tuple

    def __post_init__(self):
        if not self.degrees:
            raise PreconditionError("a graded space needs at least degree 0")
        fields = {s.field for s in self.degrees}
        if len(fields) != 1:
            raise FieldMismatch("degrees live in different fields")
        if not null_space(self.degrees[0]).is_zero():
            raise PreconditionError("degree 0 must have zero null space")
        if len(self.degrees) > 1 and not null_space(self.degrees[1]).is_full():
            raise PreconditionError("degree 1 must be entirely null")

    @property
    def top(self) -> int:
        return len(self.degrees) - 1

    def __getitem__(self, j: int) -> SeminormedSpace:
        return self.degrees[j]


def graded_tensor(g1: GradedSpace, g2: GradedSpace, d: int) -> SeminormedSpace:
    """Degree-d part of the tensor product: the sum over j of g1_j ⊗ g2_{d-j}."""
    if d < 0 or g1.top < d or g2.top < d:
        raise PreconditionError(f"both graded spaces must be populated up to degree {d}")
    return direct_sum_all([tensor(g1[j], g2[d - j]) for j in range(d + 1)])


def graded_null_formula(g1: GradedSpace, g2: GradedSpace, d: int) -> Subspace:
    """The sum over j of N_j ⊗ H_{d-j} + H_j ⊗ N_{d-j}, laid out blockwise."""
    blocks = [tensor_null_formula(g1[j], g2[d - j]) for j in range(d + 1)]
    F = g1[0].field
    total = sum(b.ambient_dim for b in blocks)
    gens, offset = [], 0
    for b in blocks:
        for v in b.basis:
            gens.append((F.zero,) * offset + v + (F.zero,) * (total - offset - b.ambient_dim))
        offset += b.ambient_dim
    return Subspace.span(gens, total, F)


def map_subspace(m: Matrix, v: Subspace) -> Subspace:
    if m.ncols != v.ambient_dim:
        raise DimensionMismatch(f"map of shape {m.shape} on ambient dimension {v.ambient_dim}")
    if m.field != v.field:
        raise FieldMismatch(f"{m.field} vs {v.field}")
    return Subspace.span([m.apply(b) for b in v.basis], m.nrows, m.field)


def transport_dual(m: Matrix, s: SeminormedSpace) -> SeminormedSpace:
    """Push every functional of ``s`` through ``m``; weights are kept."""
    if not s.is_dual:
        raise PresentationMismatch("dual transport needs a dual presentation")
    if m.ncols != s.dim:
        raise DimensionMismatch(f"map of shape {m.shape} on a {s.dim}-dim space")
    if m.field != s.field:
        raise FieldMismatch(f"{m.field} vs {s.field}")
    funcs = tuple((m.apply(phi), w) for phi, w in s.presentation.functionals)
    return SeminormedSpace(s.field, m.nrows, DualPresentation(funcs))


def image_null(m: Matrix, n: Subspace) -> Subspace:
    """Image of a null space under a map induced by a homomorphism (rational entries)."""
    if not m.is_rational():
        raise PreconditionError("image_null expects a map with rational entries")
    return map_subspace(m, n)


def no_gap_family(k: int) -> list[tuple[SeminormedSpace, IntegralLattice]]:
    """Spaces Q^1 with norm |x|/(n+1), n = 1..k, each with lattice Z."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return [(SeminormedSpace.dual(QQ, 1, [((1,), n + 1)]), IntegralLattice.standard(1))
            for n in range(1, k + 1)]


def lattice_direct_sum(l1: IntegralLattice, l2: IntegralLattice) -> IntegralLattice:
    n1, n2 = l1.ambient_dim, l2.ambient_dim
    gens = [tuple(g) + (0,) * n2 for g in l1.generators] + [(0,) * n1 + tuple(g) for g in l2.generators]
    return IntegralLattice.from_generators(gens, n1 + n2)


def lattice_tensor(l1: IntegralLattice, l2: IntegralLattice) -> IntegralLattice:
    gens = [kron(g, h) for g in l1.generators for h in l2.generators]
    return IntegralLattice.from_generators(gens, l1.ambient_dim * l2.ambient_dim)
