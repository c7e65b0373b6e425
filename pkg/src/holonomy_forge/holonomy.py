"""Holonomy algebras of forged metrics: generation, classification, verdicts.

hol_0 is spanned by curvature operators and their covariant derivatives at
the origin, closed under brackets. Generation uses all pairs (d, f) and, by
default, derivative directions along x^{n+1} only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import Echelon, Matrix, nullspace, span_basis, span_equal
from .lie import (
    AlgebraError,
    LieSubalgebra,
    LorTriple,
    TargetAlgebra,
    lie_closure,
    target_algebra,
    triple_bracket,
    triple_vector,
)
from .curvature import CurvatureEngine, direction_tuples, origin_operator
from .metric import MetricSpec, assemble_metric
from .poly import Poly
from .weak_curvature import select_family

EQUAL = "equal"
PROPER = "proper-subalgebra"
NOT_CONTAINED = "not-contained"


class TripleSpan:
    """Growing bracket-closed span of triples with an echelon membership test."""

    def __init__(self, n: int):
        self.n = n
        self.basis: list[LorTriple] = []
        self._ech = Echelon(1 + n * (n - 1) // 2 + n)

    def __len__(self):
        return len(self.basis)

    def contains(self, t: LorTriple) -> bool:
        return self._ech.contains(triple_vector(t))

    def add(self, t: LorTriple) -> bool:
        if self._ech.add(triple_vector(t)):
            self.basis.append(t)
            return True
        return False

    def close(self, start: int = 0) -> None:
        """Bracket every element from index ``start`` on against the whole span."""
        i = start
        while i < len(self.basis):
            x = self.basis[i]
            for j in range(len(self.basis)):
                self.add(triple_bracket(x, self.basis[j]))
            i += 1


def _span_of(triples: Sequence[LorTriple], n: int) -> TripleSpan:
    s = TripleSpan(n)
    for t in triples:
        s.add(t)
    return s


# ---------------------------------------------------------------- classify


@dataclass
class Classification:
    """Raw normal-form structure of a subalgebra of so(1,n+1)_{Rp}.

    ``type_tag`` is None when the algebra matches none of the four shapes;
    ``reason`` then says why.
    """

    type_tag: Optional[int]
    h: LieSubalgebra
    translations: int
    phi: Optional[tuple] = None
    m: Optional[int] = None
    psi: Optional[tuple] = None
    reason: str = ""

    def target(self) -> TargetAlgebra:
        if self.type_tag is None:
            raise AlgebraError(f"no normal form: {self.reason}")
        return target_algebra(self.type_tag, self.h, phi=self.phi, m=self.m, psi=self.psi)


def classify(gen: Sequence[LorTriple], n: Optional[int] = None) -> Classification:
    gen = list(gen)
    if n is None:
        if not gen:
            raise ValueError("n is required for an empty generator list")
        n = gen[0].n
    span = _span_of(gen, n)
    gen = span.basis
    for x in gen:
        for y in gen:
            if not span.contains(triple_bracket(x, y)):
                raise AlgebraError("input is not bracket-closed")

    h = lie_closure([t.A for t in gen], n) if gen else LieSubalgebra(n, [])
    # elements with vanishing so(n) part
    na = n * (n - 1) // 2
    vecs = [triple_vector(t) for t in gen]
    kernel = []
    if gen:
        amat = Matrix(na, len(gen), [vecs[k][1 + r] for r in range(na) for k in range(len(gen))])
        for c in nullspace(amat):
            combo = [sum((c[k, 0] * v[i] for k, v in enumerate(vecs)), Fraction(0))
                     for i in range(len(vecs[0]))]
            kernel.append(combo)
    a_pure = any(v[0] for v in kernel)
    if a_pure:
        # translations are the kernel elements with the a-direction removed
        pivot = next(v for v in kernel if v[0])
        tvecs = [[x - v[0] / pivot[0] * y for x, y in zip(v, pivot)][1 + na:] for v in kernel]
    else:
        tvecs = [v[1 + na:] for v in kernel]
    tbasis = span_basis([Matrix.column(x) for x in tvecs if any(x)])
    tdim = len(tbasis)

    def lift(b: Matrix) -> list:
        """Coordinates (a, X) of some element of gen whose A-part is b."""
        target_vec = triple_vector(LorTriple(Fraction(0), b, (Fraction(0),) * n))[1:1 + na]
        amat = Matrix(na, len(gen) + 1,
                      [(vecs[k][1 + r] if k < len(gen) else target_vec[r])
                       for r in range(na) for k in range(len(gen) + 1)])
        for c in nullspace(amat):
            last = c[len(gen), 0]
            if last:
                coeffs = [-c[k, 0] / last for k in range(len(gen))]
                a = sum((x * v[0] for x, v in zip(coeffs, vecs)), Fraction(0))
                X = [sum((x * v[1 + na + i] for x, v in zip(coeffs, vecs)), Fraction(0))
                     for i in range(n)]
                return [a] + X
        raise AlgebraError("so(n)-part not realized by the span")

    if tdim == n:
        if a_pure:
            expected = 1 + h.dim + n
            if len(gen) != expected:
                return Classification(None, h, tdim, reason=f"dimension {len(gen)} != {expected}")
            return Classification(1, h, tdim)
        phi = tuple(lift(b)[0] for b in h.basis)
        if len(gen) != h.dim + n:
            return Classification(None, h, tdim, reason="so(n)-parts do not determine the a-parts")
        if any(phi):
            return Classification(3, h, tdim, phi=phi)
        return Classification(2, h, tdim)

    if a_pure or any(v[0] for v in vecs):
        return Classification(None, h, tdim, reason="a-components with a partial translation part")
    m = tdim
    std = [Matrix.column([Fraction(int(i == j)) for i in range(n)]) for j in range(m)]
    if m and not span_equal(tbasis, std):
        return Classification(None, h, tdim, reason="translation part is not a coordinate block")
    if m == 0 and h.dim == 0:
        return Classification(None, h, 0, reason="zero algebra")
    psi = tuple(tuple(lift(b)[1 + m:]) for b in h.basis)
    if len(gen) != h.dim + m:
        return Classification(None, h, tdim, reason="X-parts not a function of the so(n)-part")
    return Classification(4, h, tdim, m=m, psi=psi)


# ---------------------------------------------------------------- generation


@dataclass
class HolonomyCertificate:
    n: int
    generated: list
    max_order_used: int
    stabilized: bool
    stable_from: Optional[int]
    trajectory: list
    full_directions: bool = False
    classified: Optional[Classification] = None
    target: Optional[TargetAlgebra] = None
    verdict: Optional[str] = None
    witness: Optional[LorTriple] = None
    spec: Optional[MetricSpec] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.generated)


def default_max_order(spec: MetricSpec) -> int:
    return spec.N + 2


def generate_holonomy(spec: MetricSpec, max_order: Optional[int] = None,
                      full_directions: bool = False,
                      engine: Optional[CurvatureEngine] = None) -> HolonomyCertificate:
    """Span of origin operators up to ``max_order``, closed after every order.

    Stops early once two consecutive orders leave the span unchanged.
    """
    if max_order is None:
        max_order = default_max_order(spec)
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    eng = engine or CurvatureEngine(spec, jet=max_order)
    n, D = spec.n, spec.n + 2
    span = TripleSpan(n)
    trajectory = []
    quiet = 0
    used = 0
    for r in range(max_order + 1):
        used = r
        before = len(span)
        for dirs in direction_tuples(D, r, full_directions):
            for d in range(D):
                for f in range(d + 1, D):
                    span.add(origin_operator(eng, d, f, dirs))
        span.close(before)
        trajectory.append(len(span))
        quiet = quiet + 1 if r and len(span) == before else 0
        if quiet >= 2:
            break
    stable_from = next(i for i, d in enumerate(trajectory) if d == trajectory[-1])
    stabilized = quiet >= 2
    return HolonomyCertificate(n=n, generated=span.basis, max_order_used=used,
                               stabilized=stabilized, stable_from=stable_from,
                               trajectory=trajectory, full_directions=full_directions,
                               spec=spec)


# ---------------------------------------------------------------- verdicts


def compare(generated: Sequence[LorTriple], target: TargetAlgebra):
    """(verdict, witness) for the generated span against the target basis."""
    n = target.n
    gspan = _span_of(generated, n)
    tspan = _span_of(target.basis, n)
    for g in gspan.basis:
        if not tspan.contains(g):
            return NOT_CONTAINED, g
    if len(gspan) == len(tspan):
        return EQUAL, None
    for t in tspan.basis:
        if not gspan.contains(t):
            return PROPER, t
    raise AssertionError("unreachable")


def certify(spec: MetricSpec, max_order: Optional[int] = None,
            full_directions: bool = False) -> HolonomyCertificate:
    cert = generate_holonomy(spec, max_order=max_order, full_directions=full_directions)
    cert.classified = classify(cert.generated, spec.n)
    cert.target = spec.target
    if spec.target is not None:
        cert.verdict, cert.witness = compare(cert.generated, spec.target)
    return cert


def verify(h: LieSubalgebra, type_tag: int, family="greedy", phi=None, m=None, psi=None,
           max_order: Optional[int] = None, full_directions: bool = False,
           name: Optional[str] = None) -> HolonomyCertificate:
    """Select a family, forge, generate, classify and compare with the target."""
    fam = select_family(h, family) if not hasattr(family, "members") else family
    spec = assemble_metric(fam, type_tag, phi=phi, m=m, psi=psi, name=name)
    return certify(spec, max_order=max_order, full_directions=full_directions)


def flat_spec(n: int) -> MetricSpec:
    """u = 0, f = 0: the flat metric on R^{n+2}."""
    return MetricSpec(n=n, n0=0, type_tag=2, u=[], f=Poly.zero(n + 2), family=None, target=None)
