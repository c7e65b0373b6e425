"""Sparse multivariate polynomials over the exact scalars in x^0 .. x^{n+1}."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .exact import Scalar, Surd, as_scalar, format_scalar

MAX_EXPONENT = 4096


class PolyError(ValueError):
    pass


def _grlex_key(exps: tuple):
    return (sum(exps), tuple(-e for e in exps))


class Poly:
    """Immutable polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise PolyError(f"bad exponent vector {exps} for {nvars} variables")
            if any(e > MAX_EXPONENT for e in exps):
                raise PolyError("exponent overflow")
            c = as_scalar(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.nvars, p.terms, p._hash = nvars, terms, None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = as_scalar(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "Poly":
        if not 0 <= i < nvars:
            raise PolyError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = power
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Iterable[int], c=1) -> "Poly":
        return cls(nvars, {tuple(exps): c})

    # ---- arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise PolyError(f"nvars mismatch {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction, Surd)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        if not c:
            return Poly.zero(self.nvars)
        if c == 1:
            return self
        return Poly._raw(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        out = {e: c for e, c in out.items() if c}
        if out and max(max(e) for e in out) > MAX_EXPONENT:
            raise PolyError("exponent overflow")
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    # ---- calculus and evaluation

    def partial(self, var: int) -> "Poly":
        if not 0 <= var < self.nvars:
            raise PolyError(f"variable index {var} out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                ne = e[:var] + (k - 1,) + e[var + 1:]
                out[ne] = c * k
        return Poly._raw(self.nvars, out)

    def eval_origin(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def truncate(self, max_degree: int) -> "Poly":
        """Drop terms of total degree above ``max_degree``."""
        return Poly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    # ---- inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Surd)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({to_text(self)})"


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def _monomial_text(e: tuple, latex: bool) -> str:
    parts = []
    for i, k in enumerate(e):
        if not k:
            continue
        if latex:
            base = f"x^{{{i}}}"
            parts.append(base if k == 1 else f"({base})^{{{k}}}")
        else:
            parts.append(f"x{i}" if k == 1 else f"x{i}^{k}")
    return ("" if latex else "*").join(parts)


def to_text(p: Poly) -> str:
    """Plain text such as ``2/3*x1*x4 - x2^2``."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = _monomial_text(e, latex=False)
        coeff = format_scalar(c)
        if isinstance(c, Surd):
            coeff = f"({coeff})"
        if not mono:
            out.append(coeff)
        elif c == 1:
            out.append(mono)
        elif c == -1:
            out.append("-" + mono)
        else:
            out.append(f"{coeff}*{mono}")
    text = " + ".join(out)
    return text.replace("+ -", "- ")


def _latex_scalar(c) -> str:
    if isinstance(c, Surd):
        tail = r"\sqrt{%d}" % c.d
        b = c.b
        bb = "" if abs(b) == 1 else _latex_rational(abs(b))
        core = f"{bb}{tail}"
        if c.a == 0:
            return ("-" if b < 0 else "") + core
        return "(" + _latex_rational(c.a) + ("-" if b < 0 else "+") + core + ")"
    return _latex_rational(Fraction(c))


def _latex_rational(q: Fraction) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    if q.denominator == 1:
        return f"{sign}{q.numerator}"
    return f"{sign}\\frac{{{q.numerator}}}{{{q.denominator}}}"


def to_latex(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = _monomial_text(e, latex=True)
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        else:
            s = _latex_scalar(c) + mono
        if out and not s.startswith("-"):
            s = "+" + s
        out.append(s)
    return "".join(out)
