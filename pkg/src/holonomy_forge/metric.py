"""Polynomial Lorentzian metrics built from a family of weak-curvature tensors.

The metric on R^{n+2} with coordinates x^0, ..., x^{n+1} is

    g = 2 dx^0 dx^{n+1} + sum_i (dx^i)^2 + 2 sum_{i<=n0} u^i dx^i dx^{n+1} + f (dx^{n+1})^2

with u^i quadratic in the active coordinates times powers of x^{n+1}, and f
chosen according to the holonomy type to be realized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .exact import Matrix, Scalar, as_scalar, span_rank
from .lie import (
    AlgebraError,
    LieSubalgebra,
    TargetAlgebra,
    conjugate_by_permutation,
    target_algebra,
)
from .poly import Poly
from .weak_curvature import PFamily, WeakCurvTensor, select_family


class ForgeError(ValueError):
    pass


# ------------------------------------------------------------- coordinates


def coordinate_permutation(h: LieSubalgebra) -> list[int]:
    """0-based old indices listed in new order: active coordinates first.

    The fixed subspace must be spanned by standard basis vectors; a fixed
    subspace in general position is rejected rather than rotated.
    """
    n = h.n
    inert = [i for i in range(n) if all(not b[i, j] for b in h.basis for j in range(n))]
    if len(inert) != len(h.fixed):
        raise ForgeError(
            "fixed subspace of h is not spanned by coordinate vectors; "
            "supply h in a basis adapted to its block structure"
        )
    active = [i for i in range(n) if i not in inert]
    return active + inert


def permute_family(fam: PFamily, perm: Sequence[int]) -> PFamily:
    if list(perm) == list(range(fam.h.n)):
        return fam
    h2 = conjugate_by_permutation(fam.h, perm)
    members = [WeakCurvTensor(h2, tuple(p.values[perm[k]] for k in range(h2.n)))
               for p in fam.members]
    return PFamily(h2, members, fam.n0)


# --------------------------------------------------------- coefficient arrays


class PComponents:
    """P^k_{alpha j i} with P_alpha(e_i) e_j = P^k_{alpha j i} e_k (1-based access)."""

    def __init__(self, data: list):
        self.data = data  # data[alpha][k][j][i], 0-based

    def __call__(self, alpha: int, k: int, j: int, i: int) -> Scalar:
        return self.data[alpha - 1][k - 1][j - 1][i - 1]

    @property
    def N(self) -> int:
        return len(self.data)


def p_components(fam: PFamily) -> PComponents:
    n0 = fam.n0
    data = []
    for p in fam.members:
        imgs = [p.image(i) for i in range(n0)]
        data.append([[[imgs[i][k, j] for i in range(n0)] for j in range(n0)] for k in range(n0)])
    return PComponents(data)


class ACoeffs(PComponents):
    """a^k_{alpha j i}; symmetric in (j, i)."""


def a_coeffs(fam: PFamily) -> ACoeffs:
    P = p_components(fam).data
    n0 = fam.n0
    data = []
    for alpha, Pa in enumerate(P):
        scale = Fraction(1, 3 * factorial(alpha))
        data.append([[[(Pa[k][j][i] + Pa[k][i][j]) * scale for i in range(n0)]
                      for j in range(n0)] for k in range(n0)])
    return ACoeffs(data)


def build_u(fam: PFamily) -> list[Poly]:
    n = fam.h.n
    nv = n + 2
    t = n + 1
    a = a_coeffs(fam).data
    out = []
    for i in range(fam.n0):
        terms: dict = {}
        for alpha, aa in enumerate(a):
            for j in range(fam.n0):
                for k in range(fam.n0):
                    c = aa[i][j][k]
                    if not c:
                        continue
                    e = [0] * nv
                    e[j + 1] += 1
                    e[k + 1] += 1
                    e[t] += alpha
                    e = tuple(e)
                    terms[e] = terms.get(e, Fraction(0)) + c
        out.append(Poly(nv, terms))
    return out


def _apply_functional(fam: PFamily, values: Sequence, coords: Sequence) -> Scalar:
    return sum((c * v for c, v in zip(coords, values)), Fraction(0))


def phi_coeffs(phi: Sequence, fam: PFamily) -> list[list[Scalar]]:
    """phi_{alpha i} = phi(P_alpha(e_i)) / (alpha-1)!  (rows alpha, columns i)."""
    phi = [as_scalar(x) for x in phi]
    if len(phi) != fam.h.dim:
        raise ForgeError(f"phi needs {fam.h.dim} values")
    if not any(phi):
        raise ForgeError("phi must be non-zero")
    for d in fam.h.derived.basis:
        if _apply_functional(fam, phi, fam.h.coordinates(d)):
            raise ForgeError("phi must vanish on h'")
    return [[_apply_functional(fam, phi, p.values[i]) / factorial(alpha)
             for i in range(fam.n0)] for alpha, p in enumerate(fam.members)]


def psi_coeffs(psi: Sequence, fam: PFamily, m: int) -> list[list[list[Scalar]]]:
    """psi_{alpha i ii}, ii over m+1..n, from psi(P_alpha(e_i)) / (alpha-1)!."""
    n = fam.h.n
    if not fam.n0 <= m < n:
        raise ForgeError(f"need n0 <= m < n, got n0={fam.n0}, m={m}, n={n}")
    psi = [[as_scalar(x) for x in v] for v in psi]
    if len(psi) != fam.h.dim or any(len(v) != n - m for v in psi):
        raise ForgeError(f"psi needs {fam.h.dim} vectors of length {n - m}")
    if span_rank([Matrix.column(v) for v in psi]) != n - m:
        raise ForgeError("psi must be surjective")
    for d in fam.h.derived.basis:
        coords = fam.h.coordinates(d)
        if any(sum((c * v[r] for c, v in zip(coords, psi)), Fraction(0)) for r in range(n - m)):
            raise ForgeError("psi must vanish on h'")
    out = []
    for alpha, p in enumerate(fam.members):
        rows = []
        for i in range(fam.n0):
            coords = p.values[i]
            rows.append([sum((c * v[r] for c, v in zip(coords, psi)), Fraction(0)) / factorial(alpha)
                         for r in range(n - m)])
        out.append(rows)
    return out


def build_f(type_tag: int, n: int, n0: int, N: int = 0,
            phi_c: Optional[list] = None, psi_c: Optional[list] = None,
            m: Optional[int] = None) -> Poly:
    nv = n + 2
    t = n + 1

    def mono(*pairs, c=1):
        e = [0] * nv
        for var, k in pairs:
            e[var] += k
        return Poly(nv, {tuple(e): c})

    f = Poly.zero(nv)
    if type_tag in (1, 2, 3):
        for ii in range(n0 + 1, n + 1):
            f = f + mono((ii, 2))
    if type_tag == 1:
        f = f + mono((0, 2))
    elif type_tag == 3:
        if phi_c is None:
            raise ForgeError("type 3 needs phi coefficients")
        for alpha in range(len(phi_c)):
            for i in range(n0):
                c = phi_c[alpha][i]
                if c:
                    f = f + mono((0, 1), (i + 1, 1), (t, alpha), c=2 * c)
    elif type_tag == 4:
        if psi_c is None or m is None:
            raise ForgeError("type 4 needs psi coefficients and m")
        for alpha in range(len(psi_c)):
            for i in range(n0):
                for r, c in enumerate(psi_c[alpha][i]):
                    if c:
                        f = f + mono((i + 1, 1), (m + 1 + r, 1), (t, alpha), c=2 * c)
        for ti in range(n0 + 1, m + 1):
            f = f + mono((ti, 2))
    elif type_tag != 2:
        raise ForgeError(f"type must be 1..4, got {type_tag}")
    return f


# ------------------------------------------------------------- assembled spec


@dataclass
class MetricSpec:
    n: int
    n0: int
    type_tag: int
    u: list
    f: Poly
    family: PFamily
    target: TargetAlgebra
    m: Optional[int] = None
    phi_coeffs: Optional[list] = None
    psi_coeffs: Optional[list] = None
    permutation: list = field(default_factory=list)
    name: Optional[str] = None

    @property
    def nvars(self) -> int:
        return self.n + 2

    @property
    def N(self) -> int:
        return self.family.N if self.family is not None else 0


def assemble_metric(family: PFamily, type_tag: int, phi: Optional[Sequence] = None,
                    m: Optional[int] = None, psi: Optional[Sequence] = None,
                    name: Optional[str] = None) -> MetricSpec:
    """Forge the metric realizing the requested type over ``family.h``.

    ``phi``/``psi`` are values on the basis of h; None selects the trace-pairing
    defaults. Coordinates are permuted so that the active block comes first.
    """
    h = family.h
    perm = coordinate_permutation(h)
    fam = permute_family(family, perm)
    hp = fam.h
    if type_tag == 4 and m is not None and any(p >= m for p in perm[:fam.n0]):
        raise AlgebraError(f"type 4 requires h inside so(m) with m={m}")
    target = target_algebra(type_tag, hp, phi=phi, m=m, psi=psi)
    phi_c = psi_c = None
    if type_tag == 3:
        phi_c = phi_coeffs(target.phi, fam)
    if type_tag == 4:
        psi_c = psi_coeffs(target.psi, fam, m)
    u = build_u(fam)
    f = build_f(type_tag, h.n, fam.n0, fam.N, phi_c, psi_c, m)
    return MetricSpec(n=h.n, n0=fam.n0, type_tag=type_tag, u=u, f=f, family=fam,
                      target=target, m=m if type_tag == 4 else None, phi_coeffs=phi_c,
                      psi_coeffs=psi_c, permutation=list(perm), name=name)


def forge(h: LieSubalgebra, type_tag: int, family="greedy", **kw) -> MetricSpec:
    fam = select_family(h, family)
    return assemble_metric(fam, type_tag, **kw)
