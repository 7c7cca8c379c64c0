from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from l1gap.constructors import (GradedSpace, direct_sum, direct_sum_all, graded_null_formula, graded_tensor,
                                image_null, lattice_direct_sum, lattice_tensor, no_gap_family,
                                tensor, tensor_null_formula, transport_dual)
from l1gap.errors import (DimensionMismatch, FieldMismatch, PreconditionError,
                          PresentationMismatch)
from l1gap.field import QQ, FieldDescriptor
from l1gap.gap import Gap, analyze
from l1gap.linalg import IntegralLattice, Matrix, Subspace, is_rational, kron
from l1gap.seminorm import SeminormedSpace, bounded_dual, evaluate, null_space

Q2 = FieldDescriptor.quadratic(2)
r2 = Q2.sqrt()
SQRT2_LINE = SeminormedSpace.dual(Q2, 2, [((1, -r2), 1)])
ABS = SeminormedSpace.dual(Q2, 1, [((1,), 1)])
LINF2 = SeminormedSpace.dual(Q2, 2, [((1, 0), 1), ((0, 1), 1)])
EMPTY2 = SeminormedSpace.dual(Q2, 2, [])


def test_direct_sum_with_rational_summand():
    s = direct_sum(SQRT2_LINE, SeminormedSpace.dual(Q2, 1, [((1,), 3)]))
    null = null_space(s)
    assert null == Subspace.span([(r2, 1, 0)], 3, Q2)
    assert not is_rational(null)


def test_direct_sum_of_two_sqrt2_lines():
    null = null_space(direct_sum(SQRT2_LINE, SQRT2_LINE))
    assert null == Subspace.span([(r2, 1, 0, 0), (0, 0, r2, 1)], 4, Q2)
    assert not is_rational(null)


def test_direct_sum_null_dimension_adds():
    s = direct_sum(SQRT2_LINE, EMPTY2)
    assert s.dim == 4
    assert null_space(s) == Subspace.span([(r2, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], 4, Q2)


def test_direct_sum_of_l_inf_has_gap_one():
    s = direct_sum(LINF2, LINF2)
    lat = lattice_direct_sum(IntegralLattice.standard(2), IntegralLattice.standard(2))
    assert lat == IntegralLattice.standard(4)
    rep = analyze(s, lat)
    assert isinstance(rep.verdict, Gap) and rep.verdict.value == 1
    U, V, D = O.space_values(s, O.box_points(4, 3))
    assert O.gap_check(U, V, D, 2, 1) == (True, True)


def test_direct_sum_with_zero_dimensional_space():
    zero = SeminormedSpace.dual(Q2, 0, [])
    assert direct_sum(SQRT2_LINE, zero) == SQRT2_LINE
    assert direct_sum(zero, SQRT2_LINE) == SQRT2_LINE


el = st.tuples(st.integers(-5, 5), st.integers(-3, 3)).map(lambda t: Q2(*t))


@settings(max_examples=40, deadline=None)
@given(st.tuples(el, el), st.tuples(el, el))
def test_direct_sum_value_is_max(a, b):
    s = direct_sum(SQRT2_LINE, LINF2)
    assert evaluate(s, a + b) == max(evaluate(SQRT2_LINE, a), evaluate(LINF2, b))


def test_direct_sum_of_primal_spaces_is_l1_sum():
    s1 = SeminormedSpace.primal(Subspace.span([(1, r2)], 2, Q2))
    s2 = SeminormedSpace.primal(Subspace.zero(1, Q2))
    s = direct_sum(s1, s2)
    for a, b in [((3, 1), (2,)), ((1, 0), (-5,)), ((r2, 1), (0,))]:
        assert evaluate(s, a + b) == evaluate(s1, a) + evaluate(s2, b)


def test_direct_sum_rejects_mixed_presentations_and_fields():
    with pytest.raises(PresentationMismatch):
        direct_sum(SQRT2_LINE, SeminormedSpace.primal(Subspace.zero(1, Q2)))
    with pytest.raises(FieldMismatch):
        direct_sum(SQRT2_LINE, SeminormedSpace.dual(QQ, 1, [((1,), 1)]))


def test_tensor_with_a_line():
    t = tensor(SQRT2_LINE, ABS)
    assert t.dim == 2
    assert null_space(t) == Subspace.span([(r2, 1)], 2, Q2)
    assert null_space(t) == tensor_null_formula(SQRT2_LINE, ABS)


def test_tensor_of_norms_has_zero_null_space():
    t = tensor(LINF2, LINF2)
    assert null_space(t).is_zero()
    assert tensor_null_formula(LINF2, LINF2).is_zero()


def test_tensor_with_identically_zero_factor():
    t = tensor(SQRT2_LINE, EMPTY2)
    assert null_space(t).is_full()
    assert tensor_null_formula(SQRT2_LINE, EMPTY2).is_full()


def test_tensor_null_matches_formula_mixed():
    s1 = SeminormedSpace.dual(Q2, 3, [((1, -r2, 0), 1), ((0, 0, 1), 2)])
    t = tensor(s1, SQRT2_LINE)
    assert null_space(t) == tensor_null_formula(s1, SQRT2_LINE)
    # dim N1 * dim H2 + dim H1 * dim N2 - dim N1 * dim N2
    assert null_space(t).dim == 1 * 2 + 3 * 1 - 1 * 1


@settings(max_examples=40, deadline=None)
@given(st.tuples(el, el), st.tuples(el, el))
def test_tensor_cross_norm(a, b):
    s1 = SeminormedSpace.dual(Q2, 2, [((1, -r2), 1), ((1, 1), 3)])
    t = tensor(s1, LINF2)
    assert evaluate(t, kron(a, b)) == evaluate(s1, a) * evaluate(LINF2, b)


def test_tensor_values_against_oracle():
    s1 = SeminormedSpace.dual(Q2, 2, [((1, -r2), 1), ((0, 1), 4)])
    t = tensor(s1, LINF2)
    pts = O.box_points(4, 2)
    U, V, D = O.space_values(t, pts)
    for p, u, v in zip(pts[::17], U[::17], V[::17]):
        assert O.pair(evaluate(t, tuple(int(x) for x in p))) == (Fraction(int(u), D), Fraction(int(v), D))


def test_tensor_requires_dual_presentations():
    with pytest.raises(PresentationMismatch):
        tensor(SQRT2_LINE, SeminormedSpace.primal(Subspace.zero(1, Q2)))


def test_lattice_tensor_standard():
    assert lattice_tensor(IntegralLattice.standard(2), IntegralLattice.standard(3)) == IntegralLattice.standard(6)


def _graded():
    zero1 = SeminormedSpace.dual(Q2, 1, [])
    return GradedSpace((ABS, zero1, SQRT2_LINE))


def test_graded_tensor_degree_two():
    g = _graded()
    s = graded_tensor(g, g, 2)
    # blocks: H0 x H2 (dim 2), H1 x H1 (dim 1), H2 x H0 (dim 2)
    assert s.dim == 5
    null = null_space(s)
    assert null == graded_null_formula(g, g, 2)
    assert null == Subspace.span([(r2, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, r2, 1)], 5, Q2)
    assert not is_rational(null)


def test_graded_tensor_middle_degree_is_null():
    # H0 = H2 = F^1 with |x|, H1 = F^1 entirely null: only the H1 x H1 piece survives
    g = GradedSpace((ABS, SeminormedSpace.dual(Q2, 1, []), ABS))
    s = graded_tensor(g, g, 2)
    assert s.dim == 3
    assert null_space(s) == Subspace.span([(0, 1, 0)], 3, Q2) == graded_null_formula(g, g, 2)
    assert null_space(graded_tensor(g, g, 0)).is_zero()


def test_graded_tensor_degree_one_is_null():
    g = _graded()
    assert null_space(graded_tensor(g, g, 1)).is_full()


def test_graded_space_validation():
    with pytest.raises(PreconditionError):
        GradedSpace((SQRT2_LINE,))  # degree 0 must be a norm
    with pytest.raises(PreconditionError):
        GradedSpace((ABS, ABS))  # degree 1 must be null
    with pytest.raises(PreconditionError):
        graded_tensor(_graded(), _graded(), 3)


def test_transport_dual_embedding():
    m = Matrix.from_rows([[1, 0], [0, 1], [0, 0]], Q2)
    out = transport_dual(m, SQRT2_LINE)
    assert out.presentation.functionals == (((1, -r2, 0), 1),)
    null = null_space(out)
    assert null.dim == 2 and not is_rational(null)
    assert null == Subspace.span([(r2, 1, 0), (0, 0, 1)], 3, Q2)


def test_transport_dual_identity_and_rational_maps():
    assert transport_dual(Matrix.identity(2, Q2), SQRT2_LINE) == SQRT2_LINE
    s = SeminormedSpace.dual(Q2, 2, [((1, 2), 1)])
    out = transport_dual(Matrix.from_rows([[1, 1], [0, 3], [2, 0]], Q2), s)
    assert is_rational(bounded_dual(out))


def test_transport_dual_preserves_weights_and_composes():
    s = SeminormedSpace.dual(Q2, 2, [((1, -r2), 2), ((1, 1), 3)])
    m = Matrix.from_rows([[1, 1], [0, 1], [2, -1]], Q2)
    out = transport_dual(m, s)
    assert [w for _, w in out.presentation.functionals] == [2, 3]
    for x in [(1, 0, 0), (0, 1, 2), (r2, -1, 3)]:
        # phi(m^T x) against (m phi)(x)
        mt_x = m.transpose().apply(x)
        assert evaluate(out, x) == evaluate(s, mt_x)


def test_transport_dual_validation():
    with pytest.raises(DimensionMismatch):
        transport_dual(Matrix.from_rows([[1, 0, 0]], Q2), SQRT2_LINE)
    with pytest.raises(PresentationMismatch):
        transport_dual(Matrix.identity(2, Q2), SeminormedSpace.primal(Subspace.zero(2, Q2)))


def test_image_null_examples():
    m = Matrix.from_rows([[1, 0], [0, 1], [1, 1]], Q2)
    assert image_null(m, Subspace.span([(1, 1)], 2, Q2)) == Subspace.span([(1, 1, 2)], 3, Q2)
    rank_one = Matrix.from_rows([[1, 1], [2, 2]], Q2)
    img = image_null(rank_one, Subspace.full(2, Q2))
    assert img == Subspace.span([(1, 2)], 2, Q2) and is_rational(img)
    line = Subspace.span([(r2, 1)], 2, Q2)
    assert image_null(Matrix.identity(2, Q2), line) == line
    # a rational map keeps rational null spaces rational, and can kill irrational ones
    assert image_null(Matrix.from_rows([[1, 0]], Q2), Subspace.span([(r2, 1)], 2, Q2)).is_full()


def test_image_null_rejects_irrational_map():
    with pytest.raises(PreconditionError):
        image_null(Matrix.from_rows([[1, r2]], Q2), Subspace.full(2, Q2))


@pytest.mark.parametrize("k", [1, 3])
def test_no_gap_family(k):
    fam = no_gap_family(k)
    assert len(fam) == k
    for n, (s, lat) in enumerate(fam, start=1):
        rep = analyze(s, lat)
        assert rep.verdict.value == Fraction(1, n + 1)
        U, V, D = O.space_values(s, O.box_points(1, 5))
        assert O.gap_check(U, V, D, 0, Fraction(1, n + 1)) == (True, True)


def test_no_gap_family_sum_values():
    fam = no_gap_family(3)
    s = direct_sum_all([sp for sp, _ in fam])
    U, V, D = O.space_values(s, O.box_points(3, 2))
    assert {Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)} <= O.value_set(U, V, D)
    assert min(O.value_set(U, V, D)) == Fraction(1, 4)


def test_no_gap_family_rejects_empty():
    with pytest.raises(ValueError):
        no_gap_family(0)
