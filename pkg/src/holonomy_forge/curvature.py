"""Symbolic curvature of the forged metrics.

Index conventions follow the coordinates: 0 is x^0 (the p direction), 1..n the
Euclidean block, n+1 is x^{n+1} (the q direction). Components are stored as

    R^b_{c d f; f_1; ...; f_r}   with   nabla^r R(d_d, d_f; d_{f_1}; ...) d_c = R^b_{...} d_b

and the last direction is the outermost derivative.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Optional

from .exact import Matrix
from .lie import LorTriple, triple_project
from .metric import MetricSpec
from .poly import Poly


class CurvatureError(RuntimeError):
    pass


# ---------------------------------------------------------------- metric


@dataclass
class MetricMatrix:
    g: list
    ginv: list

    @property
    def size(self) -> int:
        return len(self.g)


def _metric_from_parts(n: int, u: list, f: Poly) -> MetricMatrix:
    D = n + 2
    t = n + 1
    zero = Poly.zero(D)
    one = Poly.const(D, 1)
    g = [[zero] * D for _ in range(D)]
    ginv = [[zero] * D for _ in range(D)]
    g[0][t] = g[t][0] = one
    for i in range(1, n + 1):
        g[i][i] = one
    for i, ui in enumerate(u, start=1):
        g[i][t] = g[t][i] = ui
    g[t][t] = f
    # Closed form inverse for this block shape (det g = -1).
    usq = zero
    for ui in u:
        usq = usq + ui * ui
    ginv[0][0] = usq - f
    ginv[0][t] = ginv[t][0] = one
    for i in range(1, n + 1):
        ginv[i][i] = one
    for i, ui in enumerate(u, start=1):
        ginv[0][i] = ginv[i][0] = -ui
    mm = MetricMatrix(g, ginv)
    _check_inverse(mm)
    return mm


def _check_inverse(mm: MetricMatrix) -> None:
    D = mm.size
    for i in range(D):
        for j in range(D):
            acc = Poly.zero(D)
            for k in range(D):
                if mm.g[i][k] and mm.ginv[k][j]:
                    acc = acc + mm.g[i][k] * mm.ginv[k][j]
            if acc != Poly.const(D, int(i == j)):
                raise CurvatureError("inverse metric check failed; malformed spec")


def metric_matrix(spec: MetricSpec) -> MetricMatrix:
    return _metric_from_parts(spec.n, spec.u, spec.f)


# ----------------------------------------------------------- Christoffel


class ChristoffelTable:
    """Gamma^b_{cd}, stored sparsely and symmetric in (c, d)."""

    def __init__(self, D: int, table: dict):
        self.D = D
        self.table = table
        self._zero = Poly.zero(D)
        # by_lower[c] -> [(b, l, Gamma^b_{l c})]; by_upper[e] -> [(l, c, Gamma^e_{l c})]
        self.by_lower: dict[int, list] = {}
        self.by_upper: dict[int, list] = {}
        self.by_lc: dict[tuple, list] = {}
        self.by_bl: dict[tuple, list] = {}
        for (b, l, c), val in table.items():
            self.by_lower.setdefault(c, []).append((b, l, val))
            self.by_upper.setdefault(b, []).append((l, c, val))
            self.by_lc.setdefault((l, c), []).append((b, val))
            self.by_bl.setdefault((b, l), []).append((c, val))

    def __call__(self, b: int, c: int, d: int) -> Poly:
        return self.table.get((b, c, d), self._zero)

    def nonzero(self) -> dict:
        return dict(self.table)


def christoffel(mm: MetricMatrix) -> ChristoffelTable:
    D = mm.size
    dg = [[[mm.g[a][b].partial(c) for c in range(D)] for b in range(D)] for a in range(D)]
    table = {}
    for c in range(D):
        for d in range(c, D):
            # first kind: Gamma_{e,cd}
            first = [dg[e][d][c] + dg[e][c][d] - dg[c][d][e] for e in range(D)]
            for b in range(D):
                acc = Poly.zero(D)
                for e in range(D):
                    if mm.ginv[b][e] and first[e]:
                        acc = acc + mm.ginv[b][e] * first[e]
                if acc:
                    val = acc.scale(Fraction(1, 2))
                    table[(b, c, d)] = val
                    table[(b, d, c)] = val
    return ChristoffelTable(D, table)


# ---------------------------------------------------------------- curvature


def _raw_riemann(ct: ChristoffelTable, b: int, c: int, d: int, f: int) -> Poly:
    """d_d G^b_{fc} - d_f G^b_{dc} + G^b_{de} G^e_{fc} - G^b_{fe} G^e_{dc}."""
    D = ct.D
    out = ct(b, f, c).partial(d) - ct(b, d, c).partial(f)
    for e, gbe in ct.by_bl.get((b, d), ()):
        gfc = ct(e, f, c)
        if gfc:
            out = out + gbe * gfc
    for e, gbe in ct.by_bl.get((b, f), ()):
        gdc = ct(e, d, c)
        if gdc:
            out = out - gbe * gdc
    return out


@lru_cache(maxsize=None)
def curvature_sign() -> int:
    """Global sign making the published anchor R^0_{i i n+1} = 1 hold.

    Calibrated on the smallest metric carrying the anchor: n = 1, u = 0,
    f = (x^1)^2, whose R^0_{1,1,2} is +-1 depending on convention.
    """
    D = 3
    mm = _metric_from_parts(1, [], Poly.var(D, 1, 2))
    value = _raw_riemann(christoffel(mm), 0, 1, 1, 2)
    if value == Poly.const(D, 1):
        return 1
    if value == Poly.const(D, -1):
        return -1
    raise CurvatureError(f"calibration anchor evaluated to {value}")


@dataclass
class CurvDerivative:
    """Full sparse table of R^b_{c d f; f_1..f_r} (zeros omitted)."""

    order: int
    D: int
    components: dict = field(default_factory=dict)

    def __call__(self, *idx) -> Poly:
        return self.components.get(tuple(idx), Poly.zero(self.D))


def riemann(ct: ChristoffelTable) -> CurvDerivative:
    D = ct.D
    sign = curvature_sign()
    comps = {}
    for b in range(D):
        for c in range(D):
            for d in range(D):
                for f in range(d + 1, D):
                    val = _raw_riemann(ct, b, c, d, f)
                    if val:
                        if sign < 0:
                            val = -val
                        comps[(b, c, d, f)] = val
                        comps[(b, c, f, d)] = -val
    return CurvDerivative(0, D, comps)


def covariant_derivative(cd: CurvDerivative, ct: ChristoffelTable,
                         directions: Optional[Iterable[int]] = None) -> CurvDerivative:
    """Next order by pushing every nonzero component through the derivative.

    ``directions`` restricts the new (outermost) derivative index.
    """
    D = cd.D
    dirs = set(range(D)) if directions is None else set(directions)
    acc: dict = {}

    def add(key, val):
        cur = acc.get(key)
        acc[key] = val if cur is None else cur + val

    for idx, val in cd.components.items():
        for l in dirs:
            dv = val.partial(l)
            if dv:
                add(idx + (l,), dv)
        # upper index: + Gamma^{b'}_{l b} T^b
        for b2, l, gam in ct.by_lower.get(idx[0], ()):
            if l in dirs:
                add((b2,) + idx[1:] + (l,), gam * val)
        # each lower index: - Gamma^{e}_{l c'} T_{..e..} feeds slot value c'
        for s in range(1, len(idx)):
            e = idx[s]
            for l, c2, gam in ct.by_upper.get(e, ()):
                if l in dirs:
                    key = idx[:s] + (c2,) + idx[s + 1:] + (l,)
                    add(key, -(gam * val))
    comps = {k: v for k, v in acc.items() if v}
    return CurvDerivative(cd.order + 1, D, comps)


class CurvatureEngine:
    """Lazy, memoized curvature components for one metric.

    With ``jet`` set, a component of derivative order r is kept only up to
    total degree ``jet - r``; every Christoffel symbol vanishes at the origin,
    so values at 0 of all orders <= ``jet`` are unaffected.
    """

    def __init__(self, spec_or_metric, jet: Optional[int] = None):
        mm = spec_or_metric if isinstance(spec_or_metric, MetricMatrix) else metric_matrix(spec_or_metric)
        self.metric = mm
        self.ct = christoffel(mm)
        self.D = mm.size
        self.jet = jet
        self.sign = curvature_sign()
        self._memo: dict = {}
        self._zero = Poly.zero(self.D)

    def _trim(self, p: Poly, order: int) -> Poly:
        if self.jet is None:
            return p
        return p.truncate(self.jet - order)

    def component(self, b: int, c: int, d: int, f: int, dirs: tuple = ()) -> Poly:
        if d == f:
            return self._zero
        if d > f:
            return -self.component(b, c, f, d, dirs)
        key = (b, c, d, f) + tuple(dirs)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not dirs:
            val = _raw_riemann(self.ct, b, c, d, f)
            if self.sign < 0:
                val = -val
        else:
            val = self._derive(key)
        val = self._trim(val, len(dirs))
        self._memo[key] = val
        return val

    def _get(self, idx: tuple) -> Poly:
        return self.component(idx[0], idx[1], idx[2], idx[3], idx[4:])

    def _derive(self, key: tuple) -> Poly:
        ct = self.ct
        base, l = key[:-1], key[-1]
        val = self._get(base).partial(l)
        for e, gam in ct.by_bl.get((base[0], l), ()):
            t = self._get((e,) + base[1:])
            if t:
                val = val + gam * t
        for s in range(1, len(base)):
            for e, gam in ct.by_lc.get((l, base[s]), ()):
                t = self._get(base[:s] + (e,) + base[s + 1:])
                if t:
                    val = val - gam * t
        return val

    def operator_matrix(self, d: int, f: int, dirs: tuple = ()) -> Matrix:
        D = self.D
        return Matrix(D, D, [self.component(b, c, d, f, dirs).eval_origin()
                             for b in range(D) for c in range(D)])


def origin_operator(source, d: int, f: int, dirs: tuple = ()) -> LorTriple:
    """The operator nabla^r R(d_d, d_f; dirs) at 0 as a triple (a, A, X).

    ``source`` is a :class:`CurvatureEngine` or a :class:`CurvDerivative` whose
    order equals ``len(dirs)``.
    """
    if isinstance(source, CurvatureEngine):
        m = source.operator_matrix(d, f, tuple(dirs))
    else:
        if source.order != len(dirs):
            raise ValueError("derivative order does not match the direction tuple")
        D = source.D
        m = Matrix(D, D, [source(b, c, d, f, *dirs).eval_origin() for b in range(D) for c in range(D)])
    t = triple_project(m)
    if t is None:
        raise CurvatureError(
            f"operator at (d={d}, f={f}, dirs={tuple(dirs)}) is not in so(1,n+1)_Rp"
        )
    return t


def direction_tuples(D: int, order: int, full: bool) -> Iterable[tuple]:
    if full:
        return product(range(D), repeat=order)
    return [(D - 1,) * order]
