import os
import sys
from fractions import Fraction
from functools import lru_cache

import pytest
import sympy as sp
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from holonomy_forge.catalog import builtin  # noqa: E402
from holonomy_forge.exact import Surd  # noqa: E402
from holonomy_forge.lie import LieSubalgebra, skew_unit  # noqa: E402
from holonomy_forge.metric import assemble_metric  # noqa: E402
from holonomy_forge.weak_curvature import pspace_basis, select_family, validate_family  # noqa: E402

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")


def sym_scalar(c):
    if isinstance(c, Surd):
        return sym_scalar(c.a) + sym_scalar(c.b) * sp.sqrt(c.d)
    c = Fraction(c)
    return sp.Rational(c.numerator, c.denominator)


def sym_poly(p, xs=None):
    xs = xs or sp.symbols(f"x0:{p.nvars}")
    out = sp.Integer(0)
    for e, c in p.terms.items():
        mono = sp.Integer(1)
        for x, k in zip(xs, e):
            mono *= x ** k
        out += sym_scalar(c) * mono
    return sp.expand(out)


def parse_expected(text, nvars):
    xs = sp.symbols(f"x0:{nvars}")
    return sp.expand(sp.sympify(text, locals={f"x{i}": xs[i] for i in range(nvars)}))


@lru_cache(maxsize=None)
def catalog_spec(name, type_tag=2):
    return builtin(name, type_tag)


def so2_block(n):
    """span{E12} inside so(n)."""
    return LieSubalgebra(n, [skew_unit(n, 1, 2)], name="so2")


def abelian_pair(n):
    """span{E12, E34} inside so(n), n >= 4."""
    return LieSubalgebra(n, [skew_unit(n, 1, 2), skew_unit(n, 3, 4)], name="so2+so2")


def abelian_triple(n=6):
    """span{E12, E34, E56} inside so(n), n >= 6."""
    return LieSubalgebra(n, [skew_unit(n, 1, 2), skew_unit(n, 3, 4), skew_unit(n, 5, 6)])


def split_family(h):
    """One P per basis element of an abelian block-diagonal h: P_k has image span{B_k}."""
    basis = pspace_basis(h)
    pick = [next(b for b in basis if all(not v[j] for v in b.values for j in range(h.dim) if j != k))
            for k in range(h.dim)]
    return validate_family(h, pick)


@lru_cache(maxsize=None)
def type4_toy(n=3, m=2, family="full", psi=None):
    h = so2_block(n)
    fam = select_family(h, family)
    return assemble_metric(fam, 4, m=m, psi=psi)


@lru_cache(maxsize=None)
def type4_pair(n=5, m=4, family="full"):
    h = abelian_pair(n)
    fam = select_family(h, family)
    return assemble_metric(fam, 4, m=m)


@pytest.fixture(scope="session")
def g2_bundle():
    return catalog_spec("g2")


@pytest.fixture(scope="session")
def spin7_bundle():
    return catalog_spec("spin7")


@pytest.fixture(scope="session")
def ikemakhen_bundle():
    return catalog_spec("ikemakhen-so3")


# ---------------------------------------------------------------- acceptance report

ACCEPTANCE: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    num, label = mark.args
    ok = rep.passed and rep.when == "call"
    prev = ACCEPTANCE.get(num)
    ACCEPTANCE[num] = (label, ok if prev is None else prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        label, ok = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {label}")
