"""Exact scalars and dense matrices with rank/span/nullspace primitives.

Scalars are :class:`fractions.Fraction` values. Where a published basis needs
an irrational entry (the Ikemakhen matrices carry sqrt(3)) the field is
extended with :class:`Surd`, an element ``a + b*sqrt(d)`` of a real quadratic
field. All routines below only use field operations and ``== 0`` tests, so
they work unchanged over either field.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union


class Surd:
    """Element ``a + b*sqrt(d)`` of Q(sqrt(d)) with ``b != 0``.

    Construct through :func:`surd`, which collapses ``b == 0`` to a Fraction so
    that rational values always have a single representation.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d <= 1 or _squarefree_part(d) != d:
            raise ValueError(f"radicand must be a squarefree integer > 1, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d
        if self.b == 0:
            raise ValueError("use surd() for values with zero irrational part")

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise ValueError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return surd(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return surd(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return surd(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return surd(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def _inverse(self):
        norm = self.a * self.a - self.d * self.b * self.b
        return surd(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if isinstance(other, Surd):
            return self * other._inverse()
        return surd(self.a / c[0], self.b / c[0], self.d)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self._inverse() * c[0]

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Surd({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, Surd]


def surd(a, b, d: int) -> Scalar:
    """Return ``a + b*sqrt(d)``, as a Fraction when ``b == 0``."""
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    return Surd(a, b, d)


def _squarefree_part(d: int) -> int:
    out, k = 1, 2
    while k * k <= d:
        while d % (k * k) == 0:
            d //= k * k
        if d % k == 0:
            out *= k
            d //= k
        k += 1
    return out * d


def sqrt(d: int) -> Scalar:
    """Exact square root of a positive integer inside Q(sqrt(d'))."""
    if d < 0:
        raise ValueError("negative radicand")
    r = int(d ** 0.5)
    while r * r > d:
        r -= 1
    while (r + 1) * (r + 1) <= d:
        r += 1
    if r * r == d:
        return Fraction(r)
    sf = _squarefree_part(d)
    outer = int(round((d // sf) ** 0.5))
    return Surd(0, outer, sf)


# ---------------------------------------------------------------- text format

_RAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<a>[+-]?{_RAT})(?=$|[+-]))?"
    rf"(?:(?P<sign>[+-])?(?:(?P<b>{_RAT})\*)?sqrt\((?P<d>\d+)\))?$"
)


def parse_scalar(text) -> Scalar:
    """Parse ``"p"``, ``"p/q"`` or ``"a+b*sqrt(d)"`` forms (ints pass through)."""
    if isinstance(text, (Fraction, Surd)):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse scalar from {type(text).__name__}")
    if re.search(r"[\d.]\s+[\d.]", text):
        raise ValueError(f"malformed scalar {text!r}")
    s = text.replace(" ", "")
    m = _SCALAR_RE.match(s)
    if not s or m is None or (m.group("a") is None and m.group("d") is None):
        raise ValueError(f"malformed scalar {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    if m.group("d") is None:
        return a
    if m.group("a") and m.group("sign") is None:
        raise ValueError(f"malformed scalar {text!r}")
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    root = sqrt(int(m.group("d")))
    return a + b * root


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical text for a scalar: ``"p"``, ``"p/q"`` or ``"a+b*sqrt(d)"``."""
    if isinstance(x, Surd):
        b = x.b
        mag = abs(b)
        tail = f"sqrt({x.d})" if mag == 1 else f"{_format_rational(mag)}*sqrt({x.d})"
        if x.a == 0:
            return ("-" if b < 0 else "") + tail
        return _format_rational(x.a) + ("-" if b < 0 else "+") + tail
    return _format_rational(Fraction(x))


def as_scalar(x) -> Scalar:
    if isinstance(x, (Fraction, Surd)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return parse_scalar(x)


# ------------------------------------------------------------------- matrices


class Matrix:
    """Immutable dense matrix over the exact scalar field, row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_scalar(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls(len(values), 1, values)

    @classmethod
    def _raw(cls, rows, cols, entries):
        m = cls.__new__(cls)
        m.rows, m.cols, m.entries, m._hash = rows, cols, tuple(entries), None
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        r, c, e = self.rows, self.cols, self.entries
        return Matrix._raw(c, r, [e[i * c + j] for j in range(c) for i in range(r)])

    def is_zero(self) -> bool:
        return not any(self.entries)

    def trace(self):
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def _check_same(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("matrix operand expected")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return Matrix._raw(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._raw(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix._raw(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            return NotImplemented
        s = as_scalar(scalar)
        return Matrix._raw(self.rows, self.cols, [s * a for a in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            acc = [Fraction(0)] * p
            for k, aik in enumerate(arow):
                if not aik:
                    continue
                brow = b[k * p:(k + 1) * p]
                for j, bkj in enumerate(brow):
                    if bkj:
                        acc[j] += aik * bkj
            out.extend(acc)
        return Matrix._raw(n, p, out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {body})"


def _flat(v) -> tuple:
    if isinstance(v, Matrix):
        return v.entries
    return tuple(as_scalar(x) for x in v)


# -------------------------------------------------------------- elimination


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan on a list of row lists; returns (rows, pivots)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank of ``m``."""
    rows = [list(m.row(i)) for i in range(m.rows)]
    rows, pivots = _rref_rows(rows, m.cols)
    reduced = Matrix._raw(m.rows, m.cols, [x for r in rows for x in r])
    return reduced, pivots, len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def nullspace(m: Matrix) -> list[Matrix]:
    """Canonical kernel basis as column vectors, one per free variable.

    Each vector has a 1 in its free column and zeros in the other free columns.
    """
    reduced, pivots, _ = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            x = reduced[r, free]
            if x:
                v[pc] = -x
        basis.append(Matrix._raw(m.cols, 1, v))
    return basis


def _stack(vectors: Sequence) -> tuple[list[list], int | None]:
    flats = [list(_flat(v)) for v in vectors]
    width = None
    shapes = {v.shape for v in vectors if isinstance(v, Matrix)}
    if len(shapes) > 1:
        raise ValueError(f"shape mismatch among {sorted(shapes)}")
    lengths = {len(f) for f in flats}
    if len(lengths) > 1:
        raise ValueError("vectors of different lengths")
    if flats:
        width = len(flats[0])
    return flats, width


def span_rank(vectors: Sequence) -> int:
    flats, width = _stack(vectors)
    if not flats:
        return 0
    return len(_rref_rows(flats, width)[1])


def span_contains(spanning: Sequence, v) -> bool:
    """True iff ``v`` lies in the span of ``spanning``."""
    if spanning:
        _stack(list(spanning) + [v])
    fv = _flat(v)
    if not spanning:
        return not any(fv)
    ech = Echelon(len(fv))
    for s in spanning:
        ech.add(s)
    return ech.contains(fv)


def span_equal(a: Sequence, b: Sequence) -> bool:
    """True iff the two lists span the same subspace."""
    both = list(a) + list(b)
    if both:
        _stack(both)
    ra, rb = span_rank(a), span_rank(b)
    if ra != rb:
        return False
    return span_rank(both) == ra


def span_basis(vectors: Sequence) -> list:
    """Greedy subset of ``vectors`` (in order) that is a basis of their span."""
    out = []
    ech = None
    for v in vectors:
        fv = _flat(v)
        if ech is None:
            ech = Echelon(len(fv))
        if ech.add(fv):
            out.append(v)
    return out


class Echelon:
    """Incrementally maintained reduced echelon basis of a subspace.

    Optionally tracks, for every stored row, its expression in terms of the
    vectors that were added, so that :meth:`coordinates` can express members
    in the accepted generators.
    """

    def __init__(self, width: int, track: bool = False):
        self.width = width
        self.track = track
        self._rows: list[tuple[int, list, list | None]] = []
        self.generators: list[tuple] = []

    def __len__(self):
        return len(self._rows)

    def _reduce(self, v: list, combo: list | None):
        for piv, row, rcombo in self._rows:
            c = v[piv]
            if c:
                for j in range(self.width):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
                if combo is not None:
                    for k, x in enumerate(rcombo):
                        if x:
                            combo[k] = combo[k] - c * x
        return v, combo

    def contains(self, v) -> bool:
        fv = list(_flat(v))
        if len(fv) != self.width:
            raise ValueError("vector width mismatch")
        res, _ = self._reduce(fv, None)
        return not any(res)

    def add(self, v) -> bool:
        """Add ``v``; returns True when it enlarged the span."""
        fv = list(_flat(v))
        if len(fv) != self.width:
            raise ValueError("vector width mismatch")
        k = len(self.generators)
        combo = None
        if self.track:
            combo = [Fraction(0)] * (k + 1)
            combo[k] = Fraction(1)
            for _, _, rc in self._rows:
                rc.append(Fraction(0))
        res, combo = self._reduce(fv, combo)
        piv = next((j for j, x in enumerate(res) if x), None)
        if piv is None:
            if self.track:
                for _, _, rc in self._rows:
                    rc.pop()
            return False
        p = res[piv]
        if p != 1:
            res = [x / p for x in res]
            if combo is not None:
                combo = [x / p for x in combo]
        for idx, (rp, row, rc) in enumerate(self._rows):
            c = row[piv]
            if c:
                for j in range(self.width):
                    if res[j]:
                        row[j] = row[j] - c * res[j]
                if rc is not None:
                    for t, x in enumerate(combo):
                        if x:
                            rc[t] = rc[t] - c * x
        self._rows.append((piv, res, combo))
        self.generators.append(tuple(_flat(v)))
        return True

    def coordinates(self, v) -> list | None:
        """Coefficients of ``v`` in the accepted generators, or None if outside."""
        if not self.track:
            raise RuntimeError("coordinates need track=True")
        fv = list(_flat(v))
        coeffs = [Fraction(0)] * len(self.generators)
        for piv, row, rcombo in self._rows:
            c = fv[piv]
            if c:
                for j in range(self.width):
                    if row[j]:
                        fv[j] = fv[j] - c * row[j]
                for t, x in enumerate(rcombo):
                    if x:
                        coeffs[t] = coeffs[t] + c * x
        if any(fv):
            return None
        return coeffs

