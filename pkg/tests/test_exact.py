from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from holonomy_forge.exact import (
    Echelon,
    Matrix,
    Surd,
    format_scalar,
    nullspace,
    parse_scalar,
    rank,
    rref,
    span_basis,
    span_contains,
    span_equal,
    span_rank,
    sqrt,
    surd,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def mat(rows):
    return Matrix.from_rows(rows)


@st.composite
def small_matrices(draw, max_rows=4, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.sampled_from([0, 0, 1, -1, 2, Fraction(1, 2), -3]), min_size=r * c,
                            max_size=r * c))
    return Matrix(r, c, entries)


def to_sympy(m):
    return sp.Matrix(m.rows, m.cols, [sp.Rational(x.numerator, x.denominator) for x in m.entries])


class TestRref:
    def test_proportional_rows(self):
        red, piv, r = rref(mat([[2, 4], [1, 2]]))
        assert red == mat([[1, 2], [0, 0]]) and piv == [0] and r == 1

    def test_identity_fixed(self):
        red, piv, r = rref(Matrix.identity(3))
        assert red == Matrix.identity(3) and piv == [0, 1, 2] and r == 3

    def test_rank_two(self):
        assert rank(mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 2

    @given(small_matrices())
    def test_matches_sympy(self, m):
        ours, piv, r = rref(m)
        ref, ref_piv = to_sympy(m).rref()
        assert to_sympy(ours) == ref
        assert tuple(piv) == ref_piv and r == len(ref_piv)

    @given(small_matrices())
    def test_idempotent(self, m):
        once = rref(m)[0]
        assert rref(once)[0] == once


class TestNullspace:
    def test_single_equation(self):
        assert nullspace(mat([[1, 2]])) == [Matrix.column([-2, 1])]

    def test_trivial_kernel(self):
        assert nullspace(Matrix.identity(2)) == []

    def test_substitution(self):
        assert nullspace(mat([[1, 1, 1], [0, 1, 1]])) == [Matrix.column([0, -1, 1])]

    @given(small_matrices())
    def test_rank_nullity(self, m):
        ker = nullspace(m)
        assert rank(m) + len(ker) == m.cols
        for v in ker:
            assert (m @ v).is_zero()
        assert span_rank(ker) == len(ker)

    @given(small_matrices())
    def test_kernel_dim_matches_sympy(self, m):
        assert len(nullspace(m)) == len(to_sympy(m).nullspace())


class TestSpans:
    def test_multiple(self):
        assert span_contains([(1, 0)], (2, 0))

    def test_outside(self):
        assert not span_contains([(1, 0)], (0, 1))

    def test_two_by_two(self):
        assert span_contains([(1, 1), (1, -1)], (3, 5))

    def test_scaling(self):
        e = mat([[0, 1], [-1, 0]])
        assert span_equal([e], [e * 2])

    def test_zero_spans(self):
        assert span_equal([], [Matrix.zeros(2, 2)])

    def test_bases(self):
        assert span_equal([(1, 0), (0, 1)], [(1, 1), (1, -1)])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            span_contains([Matrix.zeros(2, 2)], Matrix.zeros(3, 3))

    def test_span_basis_greedy(self):
        vs = [(1, 0, 0), (2, 0, 0), (0, 1, 0), (1, 1, 0)]
        assert span_basis(vs) == [(1, 0, 0), (0, 1, 0)]

    @given(st.lists(st.tuples(fractions, fractions, fractions), max_size=4),
           st.lists(st.tuples(fractions, fractions, fractions), max_size=4),
           st.lists(st.tuples(fractions, fractions, fractions), max_size=4))
    def test_equivalence_relation(self, a, b, c):
        assert span_equal(a, a)
        assert span_equal(a, b) == span_equal(b, a)
        if span_equal(a, b) and span_equal(b, c):
            assert span_equal(a, c)
        # rescaled and shuffled copies span the same space
        assert span_equal(a, [tuple(2 * x for x in v) for v in reversed(a)])

    @given(st.lists(st.tuples(fractions, fractions, fractions, fractions), min_size=1, max_size=5))
    def test_echelon_coordinates(self, vs):
        ech = Echelon(4, track=True)
        for v in vs:
            ech.add(v)
        target = [sum((v[i] for v in vs), Fraction(0)) for i in range(4)]
        coeffs = ech.coordinates(target)
        rebuilt = [sum((c * g[i] for c, g in zip(coeffs, ech.generators)), Fraction(0))
                   for i in range(4)]
        assert rebuilt == target


class TestScalars:
    @given(fractions, fractions)
    def test_rational_sums_stay_reduced(self, a, b):
        s = a + b
        from math import gcd
        assert gcd(abs(s.numerator), s.denominator) == 1 and s.denominator >= 1

    def test_sqrt_collapses(self):
        assert sqrt(4) == 2 and isinstance(sqrt(4), Fraction)
        assert sqrt(12) == 2 * sqrt(3)

    def test_surd_arithmetic(self):
        r3 = sqrt(3)
        assert r3 * r3 == 3 and isinstance(r3 * r3, Fraction)
        assert (1 + r3) * (1 - r3) == -2
        assert 1 / (1 + r3) == surd(Fraction(-1, 2), Fraction(1, 2), 3)
        with pytest.raises(ValueError):
            _ = sqrt(2) + sqrt(3)

    @given(fractions, fractions.filter(bool))
    def test_surd_round_trip(self, a, b):
        x = surd(a, b, 3)
        assert parse_scalar(format_scalar(x)) == x
        assert x * (1 / x) == 1

    @given(st.integers(-500, 500).filter(bool), st.integers(1, 50))
    def test_pure_surd_text(self, p, q):
        x = surd(0, Fraction(p, q), 3)
        assert parse_scalar(format_scalar(x)) == x

    @given(fractions)
    def test_rational_text(self, q):
        assert parse_scalar(format_scalar(q)) == q

    @pytest.mark.parametrize("text,value", [
        ("3", Fraction(3)), ("-2/3", Fraction(-2, 3)), ("sqrt(3)", None), ("-2/3*sqrt(3)", None),
        ("1+2*sqrt(5)", None), ("-28*sqrt(3)", None), ("12/7-15*sqrt(3)", None),
    ])
    def test_parse_forms(self, text, value):
        x = parse_scalar(text)
        if value is not None:
            assert x == value
        else:
            assert isinstance(x, Surd) and format_scalar(x) == text

    @pytest.mark.parametrize("bad", ["", "1/", "x", "2*sqrt(x)", "1 2", "2sqrt(3)", "1/2sqrt(3)"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_scalar(bad)

    def test_surd_rank(self):
        r3 = sqrt(3)
        assert rank(Matrix.from_rows([[1, r3], [r3, 3]])) == 1
        assert rank(Matrix.from_rows([[1, r3], [r3, 2]])) == 2
