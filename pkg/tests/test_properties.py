"""Property-based tests over the exact kernels."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from biham.exactalg import Matrix, Poly, parse_poly, poly_gcd, exact_div
from biham.models import open_toda
from biham.pencil import (decompose, epsilon_adjacency_pencil,
                          generic_corank, jordan_pencil, kronecker_pencil)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_dim=4):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(st.lists(rationals, min_size=rows * cols, max_size=rows * cols))
    return Matrix(rows, cols, tuple(Fraction(e) for e in entries))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_transpose_invariant(m):
    assert m.rank() == m.transpose().rank()


@given(matrices())
@settings(max_examples=40, deadline=None)
def test_nullspace_dimension_and_exactness(m):
    basis = m.nullspace()
    assert len(basis) == m.cols - m.rank()
    for v in basis:
        assert all(x == 0 for x in m.apply(v))


V = ("x", "y")


@st.composite
def polys(draw, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        e = (draw(st.integers(0, max_exp)), draw(st.integers(0, max_exp)))
        terms[e] = draw(rationals)
    return Poly(V, terms)


@given(polys(), polys(), polys())
@settings(max_examples=50, deadline=None)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys(), polys())
@settings(max_examples=30, deadline=None)
def test_poly_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    if not a.is_zero():
        assert exact_div(a, g) is not None
    if not b.is_zero():
        assert exact_div(b, g) is not None


@given(polys())
@settings(max_examples=40, deadline=None)
def test_poly_str_reparses(p):
    assert parse_poly(str(p), V) == p


CATALOG = [
    kronecker_pencil(2), kronecker_pencil(3),
    jordan_pencil(1, 2), jordan_pencil(2, "inf"),
    kronecker_pencil(2).direct_sum(jordan_pencil(1, 0)),
    epsilon_adjacency_pencil(1),
]


@st.composite
def invertible_change(draw, n):
    # unit lower-triangular times upper-triangular with nonzero diagonal:
    # always invertible, no rejection loop
    lower = [[Fraction(1) if i == j else
              (Fraction(draw(st.integers(-2, 2))) if i > j else Fraction(0))
              for j in range(n)] for i in range(n)]
    upper = [[Fraction(draw(st.sampled_from([1, -1, 2, 3]))) if i == j else
              (Fraction(draw(st.integers(-2, 2))) if i < j else Fraction(0))
              for j in range(n)] for i in range(n)]
    return Matrix.from_rows(lower) @ Matrix.from_rows(upper)


@given(st.integers(0, len(CATALOG) - 1), st.data())
@settings(max_examples=25, deadline=None)
def test_decompose_congruence_invariant(idx, data):
    pencil = CATALOG[idx]
    p = data.draw(invertible_change(pencil.n))
    assert decompose(pencil.congruence(p)) == decompose(pencil)


@given(st.integers(0, len(CATALOG) - 1), st.data())
@settings(max_examples=20, deadline=None)
def test_generic_corank_congruence_invariant(idx, data):
    pencil = CATALOG[idx]
    p = data.draw(invertible_change(pencil.n))
    assert generic_corank(pencil.congruence(p)) == generic_corank(pencil)


@given(polys(max_terms=2, max_exp=1), polys(max_terms=2, max_exp=1))
@settings(max_examples=25, deadline=None)
def test_toda_bracket_is_biderivation(f2, g2):
    s = open_toda(1).structure
    vs = s.variables
    # re-embed the two-variable polynomials into the Toda coordinates
    fa = Poly(vs, {(e[0], e[1], 0): c for e, c in f2.terms.items()})
    ga = Poly(vs, {(0, e[0], e[1]): c for e, c in g2.terms.items()})
    lhs = s.p2.bracket(fa, fa * ga)
    rhs = fa * s.p2.bracket(fa, ga) + ga * s.p2.bracket(fa, fa)
    assert (lhs - rhs).is_zero()
