from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from holonomy_forge.exact import sqrt
from holonomy_forge.poly import MAX_EXPONENT, Poly, PolyError, poly_arith, to_latex, to_text

NV = 3
x = [Poly.var(NV, i) for i in range(NV)]


@st.composite
def polys(draw, nv=NV):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        e = tuple(draw(st.integers(0, 2)) for _ in range(nv))
        terms[e] = draw(st.fractions(min_value=-3, max_value=3, max_denominator=3))
    return Poly(nv, terms)


class TestArithmetic:
    def test_square(self):
        assert poly_arith(x[1], x[1], "mul") == Poly.var(NV, 1, 2)

    def test_cancel(self):
        p = x[1] * 3 + x[2]
        assert poly_arith(p, -p, "add").terms == {}

    def test_difference_of_squares(self):
        assert (x[1] + x[2]) * (x[1] - x[2]) == x[1] ** 2 - x[2] ** 2

    def test_mismatch(self):
        with pytest.raises(PolyError):
            x[0] + Poly.var(4, 0)

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            poly_arith(x[0], x[1], "div")

    def test_exponent_guard(self):
        with pytest.raises(PolyError):
            Poly.var(NV, 0, MAX_EXPONENT) * x[0]

    def test_surd_coefficients(self):
        r3 = sqrt(3)
        p = x[1] * r3
        assert p * p == Poly.var(NV, 1, 2) * 3


class TestCalculus:
    def test_product_rule_example(self):
        p = Poly.monomial(4, (0, 2, 0, 1))
        assert p.partial(1) == Poly.monomial(4, (0, 1, 0, 1), 2)

    def test_missing_variable(self):
        assert x[1].partial(0).is_zero()

    @pytest.mark.parametrize("alpha", [1, 2, 5])
    def test_power_rule(self, alpha):
        t = Poly.var(NV, 2, alpha)
        assert t.partial(2) == Poly.var(NV, 2, alpha - 1) * alpha

    def test_eval(self):
        assert (x[1] + 3).eval_origin() == 3
        assert (x[1] * x[2]).eval_origin() == 0

    @given(polys(), polys(), polys())
    def test_ring_axioms(self, p, q, r):
        assert p + q == q + p and p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @given(polys(), st.integers(0, NV - 1), st.integers(0, NV - 1))
    def test_partials_commute(self, p, i, j):
        assert p.partial(i).partial(j) == p.partial(j).partial(i)

    @given(polys(), polys(), st.integers(0, NV - 1))
    def test_leibniz(self, p, q, i):
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)

    @given(polys(), polys())
    def test_eval_homomorphism(self, p, q):
        assert (p * q).eval_origin() == p.eval_origin() * q.eval_origin()
        assert (p + q).eval_origin() == p.eval_origin() + q.eval_origin()

    @given(polys(), st.integers(0, 4))
    def test_truncate(self, p, d):
        t = p.truncate(d)
        assert all(sum(e) <= d for e in t.terms)
        assert (p - t).min_degree() == -1 or (p - t).min_degree() > d


class TestText:
    def test_plain(self):
        p = x[1] * x[2] * Fraction(2, 3) - Poly.var(NV, 2, 2)
        assert to_text(p) == "2/3*x1*x2 - x2^2"

    def test_zero(self):
        assert to_text(Poly.zero(NV)) == "0" and to_latex(Poly.zero(NV)) == "0"

    def test_latex(self):
        p = x[1] * x[2] * Fraction(2, 3) - Poly.var(NV, 2, 2)
        assert to_latex(p) == r"\frac{2}{3}x^{1}x^{2}-(x^{2})^{2}"

    def test_graded_order(self):
        p = x[2] ** 2 + x[0] + 1
        assert [sum(e) for e, _ in p.sorted_terms()] == [0, 1, 2]
