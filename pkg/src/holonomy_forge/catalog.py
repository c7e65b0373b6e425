"""Built-in algebras and weak-curvature tensors: rho(so(3)), g2, spin(7)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .exact import Matrix, sqrt
from .lie import LieSubalgebra, lie_closure, skew_unit
from .weak_curvature import PFamily, WeakCurvTensor, validate_family


def _combo(n: int, spec: list[tuple[int, int, int]]) -> Matrix:
    out = Matrix.zeros(n, n)
    for sign, i, j in spec:
        out = out + skew_unit(n, i, j) * sign
    return out


# g2 inside so(7)
G2_TERMS = [
    [(1, 1, 2), (-1, 3, 4)], [(1, 1, 2), (-1, 5, 6)], [(1, 1, 3), (1, 2, 4)],
    [(1, 1, 3), (-1, 6, 7)], [(1, 1, 4), (-1, 2, 3)], [(1, 1, 4), (-1, 5, 7)],
    [(1, 1, 5), (1, 2, 6)], [(1, 1, 5), (1, 4, 7)], [(1, 1, 6), (-1, 2, 5)],
    [(1, 1, 6), (1, 3, 7)], [(1, 1, 7), (-1, 3, 6)], [(1, 1, 7), (-1, 4, 5)],
    [(1, 2, 7), (-1, 3, 5)], [(1, 2, 7), (1, 4, 6)],
]

# P(e_i) for g2 as {basis index (1-based): coefficient}
G2_P = [{6: 1}, {4: 1, 5: 1}, {1: 1, 7: 1}, {1: 1}, {4: 1}, {5: -1, 6: 1}, {7: 1}]

# spin(7) inside so(8)
SPIN7_TERMS = [
    [(1, 1, 2), (1, 3, 4)], [(1, 1, 3), (-1, 2, 4)], [(1, 1, 4), (1, 2, 3)],
    [(1, 5, 6), (1, 7, 8)], [(-1, 5, 7), (1, 6, 8)], [(1, 5, 8), (1, 6, 7)],
    [(-1, 1, 5), (1, 2, 6)], [(1, 1, 2), (1, 5, 6)], [(1, 1, 6), (1, 2, 5)],
    [(1, 3, 7), (-1, 4, 8)], [(1, 3, 8), (1, 4, 7)], [(1, 1, 7), (1, 2, 8)],
    [(1, 1, 8), (-1, 2, 7)], [(1, 3, 5), (1, 4, 6)], [(1, 3, 6), (-1, 4, 5)],
    [(1, 1, 8), (1, 3, 6)], [(1, 1, 7), (1, 3, 5)], [(1, 2, 6), (-1, 4, 8)],
    [(1, 2, 5), (1, 3, 8)], [(1, 2, 3), (1, 6, 7)], [(1, 2, 4), (1, 5, 7)],
]

# The published list assigns P(e7) twice; the second assignment is read as P(e8).
SPIN7_P = [{}, {14: -1}, {}, {21: 1}, {20: 1}, {21: 1, 18: -1}, {15: 1, 16: -1}, {14: 1, 17: -1}]

IKEMAKHEN_P = [{}, {}, {1: 1}, {2: 1}, {3: 1}]


def rho_so3_matrices() -> list[Matrix]:
    r3 = sqrt(3)
    a1 = Matrix.from_rows([
        [0, 0, -1, 0, 0], [0, 0, r3, 0, 0], [1, -r3, 0, 0, 0], [0, 0, 0, 0, -1], [0, 0, 0, 1, 0],
    ])
    a2 = Matrix.from_rows([
        [0, 0, 0, -4, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, -2], [4, 0, 0, 0, 0], [0, 0, 2, 0, 0],
    ])
    a3 = Matrix.from_rows([
        [0, 0, 0, 0, -1], [0, 0, 0, 0, -r3], [0, 0, 0, -1, 0], [0, 0, 1, 0, 0], [1, r3, 0, 0, 0],
    ])
    return [a1, a2, a3]


def rho_so3_printed_matrices() -> list[Matrix]:
    """A1, A2, A3 exactly as published; the printed A3 carries a stray E35 term.

    Their span is not bracket-closed (the closure is all of so(5)), but the
    published reconstructed u-polynomials were computed from these values.
    """
    a1, a2, a3 = rho_so3_matrices()
    return [a1, a2, a3 - skew_unit(5, 3, 5)]


@lru_cache(maxsize=None)
def g2() -> LieSubalgebra:
    return LieSubalgebra(7, [_combo(7, t) for t in G2_TERMS], name="g2")


@lru_cache(maxsize=None)
def spin7() -> LieSubalgebra:
    return LieSubalgebra(8, [_combo(8, t) for t in SPIN7_TERMS], name="spin7")


@lru_cache(maxsize=None)
def rho_so3() -> LieSubalgebra:
    return LieSubalgebra(5, rho_so3_matrices(), name="rho-so3")


@lru_cache(maxsize=None)
def so5_from_printed() -> LieSubalgebra:
    h = lie_closure(rho_so3_printed_matrices(), 5)
    h.name = "so5-printed-rho"
    return h


def _tensor(h: LieSubalgebra, table: list[dict]) -> WeakCurvTensor:
    imgs = []
    for entry in table:
        m = Matrix.zeros(h.n, h.n)
        for k, c in entry.items():
            m = m + h.basis[k - 1] * c
        imgs.append(m)
    return WeakCurvTensor.from_matrices(h, imgs)


def g2_tensor() -> WeakCurvTensor:
    return _tensor(g2(), G2_P)


def spin7_tensor() -> WeakCurvTensor:
    return _tensor(spin7(), SPIN7_P)


def ikemakhen_tensor() -> WeakCurvTensor:
    return _tensor(rho_so3(), IKEMAKHEN_P)


def ikemakhen_printed_tensor() -> WeakCurvTensor:
    return _tensor(so5_from_printed(), IKEMAKHEN_P)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: Callable[[], LieSubalgebra]
    tensor: Callable[[], WeakCurvTensor]
    note: str


CATALOG = {
    "ikemakhen-so3": CatalogEntry(
        "ikemakhen-so3", rho_so3, ikemakhen_tensor,
        "rho(so(3)) in so(5), the 5-dim irreducible representation; entries in Q(sqrt 3); "
        "A3 taken as -E15-sqrt3*E25-E34 (the published A3 has a stray E35 term); "
        "P(e1)=P(e2)=0, P(e3..e5)=A1..A3; realizes g^{2,rho(so(3))} in so(1,6)",
    ),
    "ikemakhen-so3-printed": CatalogEntry(
        "ikemakhen-so3-printed", so5_from_printed, ikemakhen_printed_tensor,
        "the Ikemakhen P-map with A3 exactly as published (stray E35 term); reproduces the "
        "published reconstructed u-polynomials, but A1..A3 then generate all of so(5)",
    ),
    "g2": CatalogEntry(
        "g2", g2, g2_tensor,
        "g2 in so(7), 14 basis matrices; single P with images spanning A1,A4,A5,A6,A7; "
        "realizes g^{2,g2} in so(1,8)",
    ),
    "spin7": CatalogEntry(
        "spin7", spin7, spin7_tensor,
        "spin(7) in so(8), 21 basis matrices; the published P lists P(e7) twice and the "
        "second value (A14-A17) is read as P(e8); realizes g^{2,spin(7)} in so(1,9)",
    ),
}


def catalog_family(name: str) -> PFamily:
    entry = CATALOG[name]
    h = entry.algebra()
    return validate_family(h, [entry.tensor()])


def builtin(name: str, type_tag: int = 2, **params):
    """(h, family, metric) for a catalog entry; type 2 reproduces the published metric."""
    from .metric import assemble_metric

    if name not in CATALOG:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(CATALOG)}")
    fam = catalog_family(name)
    spec = assemble_metric(fam, type_tag, name=name, **params)
    return fam.h, fam, spec
