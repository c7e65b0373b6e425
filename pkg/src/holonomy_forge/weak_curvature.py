"""Weak-curvature tensors P(h), their image span, and metric-driving families."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact import Matrix, as_scalar, nullspace, span_equal, span_rank, span_basis
from .lie import AlgebraError, LieSubalgebra, active_dimension, lie_closure


@dataclass(frozen=True)
class WeakCurvTensor:
    """Linear map R^n -> h stored as coordinates of P(e_1), ..., P(e_n) in h.basis."""

    h: LieSubalgebra
    values: tuple

    def __post_init__(self):
        vals = tuple(tuple(as_scalar(c) for c in v) for v in self.values)
        if len(vals) != self.h.n or any(len(v) != self.h.dim for v in vals):
            raise ValueError(f"expected {self.h.n} coordinate vectors of length {self.h.dim}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_matrices(cls, h: LieSubalgebra, images: Sequence[Matrix]) -> "WeakCurvTensor":
        """Build from the matrices P(e_1), ..., P(e_n); each must lie in h."""
        return cls(h, tuple(tuple(h.coordinates(a)) for a in images))

    def image(self, i: int) -> Matrix:
        """P(e_i) for a 0-based index i."""
        return self.h.combine(self.values[i])

    def images(self) -> list[Matrix]:
        return [self.image(i) for i in range(self.h.n)]

    def flat(self) -> tuple:
        return tuple(c for v in self.values for c in v)

    def is_zero(self) -> bool:
        return not any(self.flat())

    def __eq__(self, other):
        if not isinstance(other, WeakCurvTensor):
            return NotImplemented
        return self.h == other.h and self.values == other.values

    def __hash__(self):
        return hash(self.values)


def cyclic_defect(images: Sequence[Matrix], i: int, j: int, k: int):
    """eta(P(e_i)e_j, e_k) + eta(P(e_j)e_k, e_i) + eta(P(e_k)e_i, e_j)."""
    return images[i][k, j] + images[j][i, k] + images[k][j, i]


def satisfies_cyclic_identity(p: WeakCurvTensor) -> bool:
    imgs = p.images()
    n = p.h.n
    return all(
        cyclic_defect(imgs, i, j, k) == 0
        for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)
    )


def constraint_matrix(h: LieSubalgebra) -> Matrix:
    """Rows: triples i<j<k; columns: unknowns (i, basis index) in lexicographic order."""
    n, d = h.n, h.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                row = [Fraction(0)] * (n * d)
                for a, b in enumerate(h.basis):
                    row[i * d + a] += b[k, j]
                    row[j * d + a] += b[i, k]
                    row[k * d + a] += b[j, i]
                rows.append(row)
    if not rows:
        return Matrix(0, n * d, [])
    return Matrix.from_rows(rows)


def pspace_basis(h: LieSubalgebra) -> list[WeakCurvTensor]:
    n, d = h.n, h.dim
    if d == 0:
        return []
    system = constraint_matrix(h)
    if system.rows == 0:
        kernel = [Matrix.column([int(t == s) for t in range(n * d)]) for s in range(n * d)]
    else:
        kernel = nullspace(system)
    return [
        WeakCurvTensor(h, tuple(v.entries[i * d:(i + 1) * d] for i in range(n)))
        for v in kernel
    ]


def pspace_dim(h: LieSubalgebra) -> int:
    if h.dim == 0:
        return 0
    system = constraint_matrix(h)
    return h.n * h.dim - (span_rank([system.row(r) for r in range(system.rows)]) if system.rows else 0)


def in_pspace(p: WeakCurvTensor) -> bool:
    return satisfies_cyclic_identity(p)


def image_span(ps: Sequence[WeakCurvTensor]) -> list[Matrix]:
    """Basis of span{P(u)} over the given tensors, chosen greedily in order."""
    return span_basis([img for p in ps for img in p.images() if not img.is_zero()])


def is_weak_berger(h: LieSubalgebra) -> bool:
    return span_equal(image_span(pspace_basis(h)), list(h.basis))


@dataclass
class PFamily:
    """Ordered linearly independent P_1, ..., P_N generating h."""

    h: LieSubalgebra
    members: list
    n0: int

    @property
    def N(self) -> int:
        return len(self.members)


def _generates(h: LieSubalgebra, ps: Sequence[WeakCurvTensor]) -> bool:
    imgs = image_span(ps)
    if h.dim == 0:
        return True
    if not imgs:
        return False
    return lie_closure(imgs, h.n).dim == h.dim


def validate_family(h: LieSubalgebra, members: Sequence[WeakCurvTensor]) -> PFamily:
    members = list(members)
    for p in members:
        if p.h is not h and p.h.basis != h.basis:
            raise AlgebraError("family member is defined over a different algebra")
        if not in_pspace(p):
            raise AlgebraError("family member violates the cyclic identity")
    if span_rank([p.flat() for p in members]) != len(members):
        raise AlgebraError("family members are linearly dependent")
    if not _generates(h, members):
        raise AlgebraError("family images do not generate h")
    for v in h.fixed:
        for p in members:
            vec = v.entries
            acc = Matrix.zeros(h.n, h.n)
            for i, c in enumerate(vec):
                if c:
                    acc = acc + p.image(i) * c
            if not acc.is_zero():
                raise AlgebraError("family member does not vanish on the fixed subspace")
    return PFamily(h, members, active_dimension(h))


Strategy = Union[str, Sequence[WeakCurvTensor]]


def select_family(h: LieSubalgebra, strategy: Strategy = "greedy") -> PFamily:
    """Pick P_1..P_N: ``"full"`` basis, ``"greedy"`` shortest prefix, or a user list."""
    if not isinstance(strategy, str):
        return validate_family(h, strategy)
    if h.dim == 0:
        return PFamily(h, [], 0)
    basis = pspace_basis(h)
    if not span_equal(image_span(basis), list(h.basis)):
        raise AlgebraError("h is not weak-Berger; no family can generate it")
    if strategy == "full":
        return validate_family(h, basis)
    if strategy == "greedy":
        for k in range(1, len(basis) + 1):
            if _generates(h, basis[:k]):
                return validate_family(h, basis[:k])
    raise ValueError(f"unknown family strategy {strategy!r}")
