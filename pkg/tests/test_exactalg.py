"""Rationals, matrices, polynomials, series, smith form."""

import random
from fractions import Fraction

import pytest

from biham.errors import SingularInversion, ValidationError
from biham.exactalg import (
    Matrix, Poly, Series, UPoly, block_diag, exact_div,
    mat_nullspace, mat_rank, parse_poly, parse_rational, poly_det, poly_gcd,
    rat, rat_str, series_invert, smith_invariant_factors,
    squarefree_decomposition, ugcd,
)

from oracles import gauss_rank


# -- rationals ---------------------------------------------------------------

def test_rat_parsing_roundtrip():
    assert rat("3/4") == Fraction(3, 4)
    assert rat("-7") == -7
    assert rat_str(Fraction(-3, 4)) == "-3/4"
    assert rat_str(Fraction(8, 2)) == "4"
    with pytest.raises(ValidationError):
        rat("1/0")
    with pytest.raises(ValidationError):
        rat("x")


# -- matrices ----------------------------------------------------------------

def test_rank_identity_and_zero():
    assert mat_rank(Matrix.identity(3)) == 3
    assert mat_rank(Matrix.zero(2)) == 0


def test_rank_rank_one_matrix():
    # hand row-reduction: second row is twice the first
    assert mat_rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1


def test_nullspace_examples():
    assert len(mat_nullspace(Matrix.zero(2))) == 2
    ns = mat_nullspace(Matrix.from_rows([[1, 2], [2, 4]]))
    assert len(ns) == 1
    v = ns[0]
    # the span of (2, -1): direct solve
    assert v[0] * (-1) - v[1] * 2 == 0 and any(x != 0 for x in v)
    assert mat_nullspace(Matrix.identity(4)) == []


def test_nullspace_is_exact_kernel():
    rng = random.Random(7)
    for _ in range(25):
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(5)]
                for _ in range(3)]
        m = Matrix.from_rows(rows)
        basis = m.nullspace()
        assert len(basis) == 5 - m.rank()
        for v in basis:
            assert all(x == 0 for x in m.apply(v))


def test_rank_matches_gaussian_oracle_random():
    rng = random.Random(123)
    for _ in range(40):
        n = rng.randint(1, 6)
        k = rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(k)]
                for _ in range(n)]
        assert Matrix.from_rows(rows).rank() == gauss_rank(rows)


def test_rank_transpose_invariance_and_congruence():
    rng = random.Random(5)
    for _ in range(20):
        rows = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(4)]
        m = Matrix.from_rows(rows)
        assert m.rank() == m.transpose().rank()
        # invertible P preserves rank
        p = _random_invertible(rng, 4)
        assert (p @ m).rank() == m.rank()


def _random_invertible(rng, n):
    while True:
        p = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if p.rank() == n:
            return p


def test_block_diag_and_skew():
    a = Matrix.from_rows([[0, 1], [-1, 0]])
    b = Matrix.zero(1)
    d = block_diag(a, b)
    assert d.rows == d.cols == 3
    assert d.is_skew()
    assert not Matrix.from_rows([[0, 1], [1, 0]]).is_skew()


# -- polynomials ---------------------------------------------------------------

V = ("x", "y")


def test_poly_arithmetic_and_eval():
    x = Poly.variable("x", V)
    y = Poly.variable("y", V)
    p = (x + y) * (x - y)
    assert p == parse_poly("x^2 - y^2", V)
    assert p.eval((Fraction(3), Fraction(2))) == 5
    assert (x * y).diff("x") == y
    assert p.diff("y") == -2 * y


def test_poly_subs_and_split():
    vs = ("v0", "lam")
    p = parse_poly("v0^2 + lam*v0 + 3", vs)
    shifted = p.subs({"v0": Poly.variable("v0", vs) + Poly.constant(1, vs)})
    assert shifted == parse_poly("v0^2 + 2*v0 + 1 + lam*v0 + lam + 3", vs)
    parts = p.split_by("lam")
    assert sorted(parts) == [0, 1]
    assert parts[1] == parse_poly("v0", ("v0",))


def test_exact_div_and_gcd():
    p = parse_poly("x^2 - y^2", V)
    q = parse_poly("x + y", V)
    assert exact_div(p, q) == parse_poly("x - y", V)
    assert exact_div(q, p) is None
    g = poly_gcd(parse_poly("x^2*y + x*y^2", V), parse_poly("x*y", V))
    assert g == parse_poly("x*y", V)
    # gcd of coprime polynomials is 1
    assert poly_gcd(parse_poly("x + 1", V), parse_poly("y + 1", V)) == Poly.constant(1, V)


def test_gcd_random_products_cancel():
    rng = random.Random(11)
    for _ in range(15):
        a = _random_poly(rng)
        b = _random_poly(rng)
        c = _random_poly(rng)
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        g = poly_gcd(a * c, b * c)
        # c divides the gcd
        assert exact_div(g, c.normalized()) is not None


def _random_poly(rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        e = (rng.randint(0, 2), rng.randint(0, 2))
        terms[e] = Fraction(rng.randint(-3, 3))
    return Poly(V, terms)


def test_poly_det_matches_cofactors():
    x = Poly.variable("x", V)
    one = Poly.constant(1, V)
    rows = [[x, one], [one, x]]
    assert poly_det(rows) == parse_poly("x^2 - 1", V)


def test_rational_function_reduction_and_poles():
    r = parse_rational("(x^2 - y^2)/(x + y)", V)
    assert r.is_polynomial() and r.as_poly() == parse_poly("x - y", V)
    r2 = parse_rational("1/(x - y)", V)
    assert r2 + r2 == parse_rational("2/(x - y)", V)
    assert (r2 - r2).is_zero()
    assert r2.eval((Fraction(2), Fraction(1))) == 1
    from biham.errors import PoleAtPoint
    with pytest.raises(PoleAtPoint):
        r2.eval((Fraction(1), Fraction(1)))


def test_rational_denominator_normalization():
    # denominator stored with coprime integer coefficients, positive lead
    r = parse_rational("x/((-2)*x + 2*y)", V)
    assert r.den == parse_poly("x - y", V)
    assert r == parse_rational("(-1/2)*x/(x - y)", V)


def test_parser_errors_have_positions():
    with pytest.raises(ValidationError, match="column"):
        parse_poly("x + $", V)
    with pytest.raises(ValidationError, match="unknown variable"):
        parse_poly("x + z", V)
    with pytest.raises(ValidationError):
        parse_poly("x/(y - y)", V)
    with pytest.raises(ValidationError):
        parse_poly("1/(x+y)", V)  # not a polynomial


# -- univariate polynomials and smith form -------------------------------------

def test_upoly_divmod_gcd():
    p = UPoly([2, 3, 1])      # (t+1)(t+2)
    q = UPoly([1, 1])
    assert divmod(p, q) == (UPoly([2, 1]), UPoly.zero())
    assert ugcd(p, UPoly([1, 2, 1])) == UPoly([1, 1])
    assert squarefree_decomposition(UPoly([0, 0, 1])) == [(UPoly([0, 1]), 2)]


def test_smith_identity():
    rows = [[UPoly.constant(1 if i == j else 0) for j in range(3)] for i in range(3)]
    assert smith_invariant_factors(rows) == [UPoly.constant(1)] * 3


def test_smith_jordan_pair_example():
    # lam*H1 + H2 for the 2x2 pair with eigenvalue 2: gcd of entries is
    # 2*lam + 1 and the determinant is (2*lam + 1)^2, so both invariant
    # factors equal lam + 1/2 after making them monic.
    lam = UPoly.x()
    z = UPoly.zero()
    c = 2 * lam + 1
    expected_first = c.monic()
    det = c * c
    expected_second = det.exact_div(c).monic()
    got = smith_invariant_factors([[z, c], [-1 * c, z]])
    assert got == [expected_first, expected_second]
    assert got == [UPoly([Fraction(1, 2), 1])] * 2


def test_smith_k3_pencil_is_unimodular_part():
    # the 3x3 odd Kronecker pencil has a constant 2x2 minor, so both
    # invariant factors of the rank-2 part are 1
    lam = UPoly.x()
    z = UPoly.zero()
    one = UPoly.constant(1)
    rows = [[z, lam, z], [-1 * lam, z, one], [z, -1 * one, z]]
    assert smith_invariant_factors(rows) == [UPoly.constant(1)] * 2


def test_smith_divisibility_chain_random():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(2, 4)
        rows = [[UPoly([rng.randint(-3, 3), rng.randint(-2, 2)]) for _ in range(n)]
                for _ in range(n)]
        factors = smith_invariant_factors(rows)
        for a, b in zip(factors, factors[1:]):
            assert (b % a).is_zero()
        # product of invariant factors equals the determinant up to a scalar
        det = _upoly_det(rows)
        if not det.is_zero() and len(factors) == n:
            prod = UPoly.constant(1)
            for f in factors:
                prod = prod * f
            assert prod == det.monic()


def _upoly_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = UPoly.zero()
    for k in range(n):
        sub = [r[:k] + r[k + 1:] for r in rows[1:]]
        term = rows[0][k] * _upoly_det(sub)
        total = total + (term if k % 2 == 0 else -1 * term)
    return total


# -- series --------------------------------------------------------------------

def test_series_invert_identity_and_linear():
    s = Series(("s",), 5, {(1,): Fraction(1)})
    assert series_invert(s) == s
    s2 = Series(("s",), 5, {(1,): Fraction(2)})
    assert series_invert(s2) == Series(("s",), 5, {(1,): Fraction(1, 2)})


def test_series_invert_lagrange_example():
    # t = s + s^2  =>  s = t - t^2 + 2 t^3 (hand Lagrange inversion)
    s = Series(("s",), 3, {(1,): Fraction(1), (2,): Fraction(1)})
    inv = series_invert(s)
    assert inv == Series(("s",), 3, {(1,): Fraction(1), (2,): Fraction(-1), (3,): Fraction(2)})


def test_series_invert_roundtrip_random():
    rng = random.Random(9)
    for _ in range(10):
        order = 6
        terms = {(1,): Fraction(rng.choice([1, 2, -1, 3]))}
        for k in range(2, order + 1):
            terms[(k,)] = Fraction(rng.randint(-3, 3))
        s = Series(("s",), order, terms)
        inv = series_invert(s)
        assert s.compose({"s": inv}) == Series(("s",), order, {(1,): Fraction(1)})
        assert inv.compose({"s": s}) == Series(("s",), order, {(1,): Fraction(1)})


def test_series_invert_two_variable_parameter():
    # x = u + w + u*w: invert in u with w as a parameter
    s = Series(("u", "w"), 4, {(1, 0): Fraction(1), (0, 1): Fraction(1), (1, 1): Fraction(1)})
    u = series_invert(s)
    assert s.compose({"u": u}) == Series.variable("u", ("u", "w"), 4)


def test_series_invert_singular():
    s = Series(("s",), 4, {(2,): Fraction(1)})
    with pytest.raises(SingularInversion):
        series_invert(s)


def test_series_truncation_discipline():
    a = Series(("s",), 3, {(1,): Fraction(1)})
    b = Series(("s",), 5, {(2,): Fraction(1)})
    assert (a * b).order == 3
    assert (a + b).order == 3


def test_series_unit_inverse():
    s = Series(("s",), 4, {(0,): Fraction(2), (1,): Fraction(1)})
    one = Series.constant(1, ("s",), 4)
    assert s * s.inverse_unit() == one
