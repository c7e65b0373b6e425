"""so(n) subalgebras and the parabolic algebra so(1,n+1)_{Rp} in triple form.

Basis order of R^{1,n+1} is fixed once: p, e_1, ..., e_n, q. A triple
(a, A, X) stands for the (n+2)x(n+2) matrix

    [ a   X    0  ]
    [ 0   A  -X^t ]
    [ 0   0   -a  ]

acting on column vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .exact import Echelon, Matrix, Scalar, as_scalar, nullspace, span_basis, span_rank


class AlgebraError(ValueError):
    """A Lie-algebraic precondition failed."""


def skew_unit(n: int, i: int, j: int) -> Matrix:
    """E_ij in so(n) with 1-based indices: +1 at (i, j), -1 at (j, i)."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"bad index pair ({i}, {j}) for so({n})")
    e = [Fraction(0)] * (n * n)
    e[(i - 1) * n + (j - 1)] = Fraction(1)
    e[(j - 1) * n + (i - 1)] = Fraction(-1)
    return Matrix(n, n, e)


def standard_skew_basis(n: int) -> list[Matrix]:
    if n < 1:
        raise ValueError("n must be positive")
    return [skew_unit(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def is_skew(m: Matrix) -> bool:
    return m.rows == m.cols and (m + m.T).is_zero()


def bracket(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch {a.shape} vs {b.shape}")
    return a @ b - b @ a


def _close(gens: Sequence[Matrix], width: int) -> list[Matrix]:
    """Breadth-first bracket closure; returns a basis of the generated algebra."""
    ech = Echelon(width)
    basis: list[Matrix] = []
    frontier: list[Matrix] = []
    for g in gens:
        if ech.add(g):
            basis.append(g)
            frontier.append(g)
    while frontier:
        new: list[Matrix] = []
        for x in frontier:
            for y in list(basis):
                z = bracket(x, y)
                if not z.is_zero() and ech.add(z):
                    basis.append(z)
                    new.append(z)
        frontier = new
    return basis


class LieSubalgebra:
    """Subalgebra of so(n) given by a linearly independent basis.

    Construction checks skewness, independence and bracket closure.
    """

    def __init__(self, n: int, basis: Sequence[Matrix], name: Optional[str] = None,
                 check: bool = True):
        self.n = n
        self.basis = tuple(basis)
        self.name = name
        if check:
            for b in self.basis:
                if b.shape != (n, n) or not is_skew(b):
                    raise AlgebraError("basis elements must be skew n x n matrices")
            if span_rank(self.basis) != len(self.basis):
                raise AlgebraError("basis elements are linearly dependent")
            for i, x in enumerate(self.basis):
                for y in self.basis[i + 1:]:
                    if not self.contains(bracket(x, y)):
                        raise AlgebraError("basis does not span a bracket-closed subspace")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _echelon(self) -> Echelon:
        ech = Echelon(self.n * self.n, track=True)
        for b in self.basis:
            ech.add(b)
        return ech

    def contains(self, a: Matrix) -> bool:
        return self._echelon.contains(a)

    def coordinates(self, a: Matrix) -> list[Scalar]:
        """Coefficients of ``a`` in ``self.basis``; raises if ``a`` is outside."""
        c = self._echelon.coordinates(a)
        if c is None:
            raise AlgebraError("matrix is not in the subalgebra")
        return c

    def combine(self, coeffs: Sequence) -> Matrix:
        out = Matrix.zeros(self.n, self.n)
        for c, b in zip(coeffs, self.basis):
            c = as_scalar(c)
            if c:
                out = out + b * c
        return out

    @cached_property
    def derived(self) -> "LieSubalgebra":
        return derived_subalgebra(self)

    @cached_property
    def center(self) -> "LieSubalgebra":
        return center(self)

    @cached_property
    def fixed(self) -> list[Matrix]:
        return fixed_subspace(self)

    def __eq__(self, other):
        # same presentation: ambient n and the same ordered basis
        if not isinstance(other, LieSubalgebra):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LieSubalgebra{label} dim={self.dim} in so({self.n})>"


def lie_closure(gens: Sequence[Matrix], n: Optional[int] = None) -> LieSubalgebra:
    gens = list(gens)
    if n is None:
        if not gens:
            raise ValueError("n is required for an empty generator list")
        n = gens[0].rows
    if any(g.shape != (n, n) for g in gens):
        raise ValueError("generators of different dimensions")
    return LieSubalgebra(n, _close(gens, n * n), check=False)


def derived_subalgebra(h: LieSubalgebra) -> LieSubalgebra:
    brackets = [bracket(x, y) for i, x in enumerate(h.basis) for y in h.basis[i + 1:]]
    return LieSubalgebra(h.n, _close(span_basis(brackets), h.n * h.n), check=False)


def center(h: LieSubalgebra) -> LieSubalgebra:
    """Elements commuting with every basis element, via a stacked nullspace."""
    d = h.dim
    if d == 0:
        return LieSubalgebra(h.n, [], check=False)
    # Unknown c: Z = sum c_k B_k; each [Z, B_j] = 0 contributes n*n rows.
    cols = [[bracket(bk, bj).entries for bj in h.basis] for bk in h.basis]
    rows = []
    for j in range(d):
        for e in range(h.n * h.n):
            rows.append([cols[k][j][e] for k in range(d)])
    system = Matrix.from_rows(rows)
    kernel = nullspace(system)
    return LieSubalgebra(h.n, [h.combine(v.entries) for v in kernel], check=False)


def fixed_subspace(h: LieSubalgebra) -> list[Matrix]:
    """Basis (column vectors) of vectors annihilated by every element of h."""
    if h.dim == 0:
        return [Matrix.column([int(i == j) for i in range(h.n)]) for j in range(h.n)]
    stacked = Matrix.from_rows([b.row(i) for b in h.basis for i in range(h.n)])
    return nullspace(stacked)


def active_dimension(h: LieSubalgebra) -> int:
    return h.n - len(h.fixed)


def conjugate_by_permutation(h: LieSubalgebra, perm: Sequence[int]) -> LieSubalgebra:
    """Relabel coordinates: new index k takes old index perm[k] (0-based)."""
    n = h.n
    basis = []
    for b in h.basis:
        basis.append(Matrix(n, n, [b[perm[i], perm[j]] for i in range(n) for j in range(n)]))
    return LieSubalgebra(n, basis, name=h.name, check=False)


def trace_pairing(a: Matrix, z: Matrix) -> Scalar:
    """-trace(A Z): positive definite on so(n)."""
    return -(a @ z).trace()


# --------------------------------------------------------------- triples


@dataclass(frozen=True)
class LorTriple:
    """Element (a, A, X) of so(1,n+1)_{Rp}."""

    a: Scalar
    A: Matrix
    X: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", as_scalar(self.a))
        object.__setattr__(self, "X", tuple(as_scalar(x) for x in self.X))
        if self.A.shape != (len(self.X), len(self.X)):
            raise ValueError("A and X dimensions disagree")

    @property
    def n(self) -> int:
        return len(self.X)

    @classmethod
    def zero(cls, n: int) -> "LorTriple":
        return cls(Fraction(0), Matrix.zeros(n, n), (Fraction(0),) * n)

    def is_zero(self) -> bool:
        return not self.a and self.A.is_zero() and not any(self.X)


def gram_matrix(n: int) -> Matrix:
    """Gram matrix of eta in the basis p, e_1..e_n, q."""
    m = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
    m[0][n + 1] = m[n + 1][0] = Fraction(1)
    for i in range(1, n + 1):
        m[i][i] = Fraction(1)
    return Matrix.from_rows(m)


def triple_embed(t: LorTriple) -> Matrix:
    n = t.n
    m = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
    m[0][0] = t.a
    m[n + 1][n + 1] = -t.a
    for i in range(n):
        m[0][i + 1] = t.X[i]
        m[i + 1][n + 1] = -t.X[i]
        for j in range(n):
            m[i + 1][j + 1] = t.A[i, j]
    return Matrix.from_rows(m)


def triple_project(m: Matrix) -> Optional[LorTriple]:
    """Inverse of :func:`triple_embed`; None when ``m`` is not of block form."""
    if m.rows != m.cols or m.rows < 2:
        raise ValueError("square matrix of size n+2 expected")
    n = m.rows - 2
    a = m[0, 0]
    if m[n + 1, n + 1] != -a or m[0, n + 1]:
        return None
    X = tuple(m[0, i + 1] for i in range(n))
    for i in range(n):
        if m[i + 1, n + 1] != -X[i]:
            return None
    for r in range(1, n + 2):
        if m[r, 0]:
            return None
    for c in range(n + 1):
        if m[n + 1, c]:
            return None
    A = Matrix(n, n, [m[i + 1, j + 1] for i in range(n) for j in range(n)])
    if not is_skew(A):
        return None
    return LorTriple(a, A, X)


def triple_bracket(s: LorTriple, t: LorTriple) -> LorTriple:
    out = triple_project(bracket(triple_embed(s), triple_embed(t)))
    assert out is not None  # the parabolic algebra is closed
    return out


def triple_vector(t: LorTriple) -> tuple:
    """Coordinates (a, A_ij for i<j, X) used for span computations."""
    n = t.n
    upper = tuple(t.A[i, j] for i in range(n) for j in range(i + 1, n))
    return (t.a,) + upper + t.X


def triple_from_vector(n: int, v: Sequence) -> LorTriple:
    v = list(v)
    a = v[0]
    k = 1
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = v[k]
            A[j][i] = -v[k]
            k += 1
    return LorTriple(a, Matrix.from_rows(A) if n else Matrix(0, 0, []), tuple(v[k:k + n]))


def close_triples(gens: Sequence[LorTriple], n: int) -> list[LorTriple]:
    """Basis of the Lie subalgebra of so(1,n+1)_{Rp} generated by ``gens``."""
    mats = _close([triple_embed(g) for g in gens], (n + 2) ** 2)
    return [triple_project(m) for m in mats]


# ---------------------------------------------------------- target algebras


@dataclass
class TargetAlgebra:
    """One of the four weakly-irreducible normal forms over a given h.

    ``phi`` holds phi(B_k) for the basis B_k of h; ``psi`` holds psi(B_k) as
    vectors of length n - m (components along e_{m+1}, ..., e_n).
    """

    type_tag: int
    h: LieSubalgebra
    phi: Optional[tuple] = None
    m: Optional[int] = None
    psi: Optional[tuple] = None
    basis: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.h.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    def phi_of(self, a: Matrix) -> Scalar:
        return sum((c * p for c, p in zip(self.h.coordinates(a), self.phi)), Fraction(0))

    def psi_of(self, a: Matrix) -> tuple:
        out = [Fraction(0)] * (self.n - self.m)
        for c, vec in zip(self.h.coordinates(a), self.psi):
            if c:
                out = [o + c * x for o, x in zip(out, vec)]
        return tuple(out)

    def contains(self, t: LorTriple) -> bool:
        ech = Echelon(len(triple_vector(t)))
        for b in self.basis:
            ech.add(triple_vector(b))
        return ech.contains(triple_vector(t))


def _unit(n: int, j: int) -> tuple:
    return tuple(Fraction(int(i == j)) for i in range(n))


def default_phi(h: LieSubalgebra) -> tuple:
    """phi(A) = -trace(A Z) for the first center basis vector Z."""
    if h.center.dim == 0:
        raise AlgebraError("type 3 requires a nontrivial center")
    z = h.center.basis[0]
    return tuple(trace_pairing(b, z) for b in h.basis)


def default_psi(h: LieSubalgebra, m: int) -> tuple:
    """psi(A) = sum_j -trace(A Z_j) e_{m+j} over the first n-m center vectors."""
    k = h.n - m
    if h.center.dim < k:
        raise AlgebraError(f"type 4 requires dim z(h) >= n - m = {k}")
    zs = h.center.basis[:k]
    return tuple(tuple(trace_pairing(b, z) for z in zs) for b in h.basis)


def check_phi(h: LieSubalgebra, phi: Sequence) -> tuple:
    phi = tuple(as_scalar(x) for x in phi)
    if len(phi) != h.dim:
        raise AlgebraError(f"phi needs {h.dim} values, got {len(phi)}")
    if h.center.dim == 0:
        raise AlgebraError("type 3 requires z(h) != 0")
    if not any(phi):
        raise AlgebraError("type 3 requires a non-zero phi")
    for d in h.derived.basis:
        val = sum((c * p for c, p in zip(h.coordinates(d), phi)), Fraction(0))
        if val:
            raise AlgebraError("phi must vanish on the derived algebra h'")
    return phi


def check_psi(h: LieSubalgebra, m: Optional[int], psi: Sequence) -> tuple:
    n = h.n
    if m is None or not 0 < m < n:
        raise AlgebraError(f"type 4 requires 0 < m < n = {n}, got m={m}")
    for b in h.basis:
        for i in range(m, n):
            if any(b[i, j] for j in range(n)):
                raise AlgebraError(f"type 4 requires h inside so(m) with m={m}")
    if h.center.dim < n - m:
        raise AlgebraError(f"type 4 requires dim z(h) >= n - m = {n - m}")
    psi = tuple(tuple(as_scalar(x) for x in vec) for vec in psi)
    if len(psi) != h.dim or any(len(v) != n - m for v in psi):
        raise AlgebraError(f"psi needs {h.dim} vectors of length {n - m}")
    if span_rank([Matrix.column(v) for v in psi]) != n - m:
        raise AlgebraError("psi must be surjective onto R^(n-m)")
    for d in h.derived.basis:
        coords = h.coordinates(d)
        val = [sum((c * v[i] for c, v in zip(coords, psi)), Fraction(0)) for i in range(n - m)]
        if any(val):
            raise AlgebraError("psi must vanish on the derived algebra h'")
    return psi


def target_algebra(type_tag: int, h: LieSubalgebra, phi: Optional[Sequence] = None,
                   m: Optional[int] = None, psi: Optional[Sequence] = None) -> TargetAlgebra:
    """Materialize g^{1,h}, g^{2,h}, g^{3,h,phi} or g^{4,h,m,psi}."""
    n = h.n
    zero_a, zero_X = Fraction(0), (Fraction(0),) * n
    zero_A = Matrix.zeros(n, n)
    translations = [LorTriple(zero_a, zero_A, _unit(n, j)) for j in range(n)]
    if type_tag == 1:
        basis = [LorTriple(Fraction(1), zero_A, zero_X)]
        basis += [LorTriple(zero_a, b, zero_X) for b in h.basis] + translations
        return TargetAlgebra(1, h, basis=basis)
    if type_tag == 2:
        basis = [LorTriple(zero_a, b, zero_X) for b in h.basis] + translations
        return TargetAlgebra(2, h, basis=basis)
    if type_tag == 3:
        phi = check_phi(h, default_phi(h) if phi is None else phi)
        basis = [LorTriple(p, b, zero_X) for p, b in zip(phi, h.basis)] + translations
        return TargetAlgebra(3, h, phi=phi, basis=basis)
    if type_tag == 4:
        if m is None or not 0 < m < n:
            raise AlgebraError(f"type 4 requires 0 < m < n = {n}, got m={m}")
        psi = check_psi(h, m, default_psi(h, m) if psi is None else psi)
        basis = [LorTriple(zero_a, b, (Fraction(0),) * m + v) for v, b in zip(psi, h.basis)]
        basis += translations[:m]
        return TargetAlgebra(4, h, m=m, psi=psi, basis=basis)
    raise AlgebraError(f"type must be 1, 2, 3 or 4, got {type_tag}")
