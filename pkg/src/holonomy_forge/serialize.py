"""JSON and LaTeX forms of algebras, metrics and certificates.

Scalars travel as strings ("p", "p/q", "a+b*sqrt(d)"); every document carries
``"schema": "holonomy-forge/1"`` and a ``"kind"`` tag.
"""
from __future__ import annotations

import json
from typing import Any, Optional

from .exact import Matrix, format_scalar, parse_scalar
from .holonomy import Classification, HolonomyCertificate
from .lie import LieSubalgebra, LorTriple, TargetAlgebra, target_algebra
from .metric import MetricSpec
from .poly import Poly, to_latex
from .weak_curvature import PFamily, WeakCurvTensor, validate_family

SCHEMA = "holonomy-forge/1"


class SchemaError(ValueError):
    pass


def dumps(doc: dict) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _doc(kind: str, body: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, **body}


def _expect(doc: Any, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected a JSON object for {kind}")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("kind", kind) != kind:
        raise SchemaError(f"expected kind {kind!r}, got {doc.get('kind')!r}")
    return doc


def _field(doc: dict, key: str):
    try:
        return doc[key]
    except KeyError:
        raise SchemaError(f"missing field {key!r}") from None


# ---------------------------------------------------------------- pieces


def scalar_to_json(x) -> str:
    return format_scalar(x)


def scalar_from_json(x):
    try:
        return parse_scalar(x)
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


def vector_to_json(v) -> list:
    return [format_scalar(x) for x in v]


def vector_from_json(v) -> tuple:
    if not isinstance(v, list):
        raise SchemaError("expected a list of scalars")
    return tuple(scalar_from_json(x) for x in v)


def matrix_to_json(m: Matrix) -> list:
    return [[format_scalar(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(rows) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SchemaError("matrix must be a non-empty list of rows")
    if len({len(r) for r in rows}) != 1:
        raise SchemaError("ragged matrix rows")
    return Matrix.from_rows([[scalar_from_json(x) for x in r] for r in rows])


def poly_to_json(p: Poly) -> list:
    return [{"coeff": format_scalar(c), "exps": list(e)} for e, c in p.sorted_terms()]


def poly_from_json(terms, nvars: int) -> Poly:
    if not isinstance(terms, list):
        raise SchemaError("polynomial must be a list of terms")
    try:
        return Poly(nvars, [(tuple(t["exps"]), scalar_from_json(t["coeff"])) for t in terms])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed polynomial term: {exc}") from None


def triple_to_json(t: LorTriple) -> dict:
    return {"a": format_scalar(t.a), "A": matrix_to_json(t.A), "X": vector_to_json(t.X)}


def triple_from_json(doc) -> LorTriple:
    return LorTriple(scalar_from_json(_field(doc, "a")), matrix_from_json(_field(doc, "A")),
                     vector_from_json(_field(doc, "X")))


# ---------------------------------------------------------------- algebras


def algebra_to_json(h: LieSubalgebra) -> dict:
    body = {"n": h.n, "basis": [matrix_to_json(b) for b in h.basis]}
    if h.name:
        body["name"] = h.name
    return _doc("algebra", body)


def algebra_from_json(doc) -> LieSubalgebra:
    doc = _expect(doc, "algebra")
    n = _field(doc, "n")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer")
    basis = [matrix_from_json(m) for m in _field(doc, "basis")]
    return LieSubalgebra(n, basis, name=doc.get("name"))


def family_to_json(fam: PFamily) -> dict:
    return _doc("family", {
        "algebra": algebra_to_json(fam.h),
        "members": [[matrix_to_json(m) for m in p.images()] for p in fam.members],
    })


def family_from_json(doc, h: Optional[LieSubalgebra] = None) -> PFamily:
    """Members are lists of n image matrices P(e_1), ..., P(e_n)."""
    doc = _expect(doc, "family")
    if h is None:
        h = algebra_from_json(_field(doc, "algebra"))
    members = []
    for imgs in _field(doc, "members"):
        mats = [matrix_from_json(m) for m in imgs]
        if len(mats) != h.n:
            raise SchemaError(f"each member needs {h.n} image matrices")
        members.append(WeakCurvTensor.from_matrices(h, mats))
    return validate_family(h, members)


def target_to_json(t: TargetAlgebra) -> dict:
    body = {"type": t.type_tag, "algebra": algebra_to_json(t.h)}
    if t.phi is not None:
        body["phi"] = vector_to_json(t.phi)
    if t.m is not None:
        body["m"] = t.m
    if t.psi is not None:
        body["psi"] = [vector_to_json(v) for v in t.psi]
    return body


def target_from_json(doc) -> TargetAlgebra:
    h = algebra_from_json(_field(doc, "algebra"))
    phi = vector_from_json(doc["phi"]) if "phi" in doc else None
    psi = [vector_from_json(v) for v in doc["psi"]] if "psi" in doc else None
    return target_algebra(_field(doc, "type"), h, phi=phi, m=doc.get("m"), psi=psi)


# ---------------------------------------------------------------- metrics


def metric_to_json(spec: MetricSpec) -> dict:
    body = {
        "n": spec.n,
        "n0": spec.n0,
        "type": spec.type_tag,
        "u": [poly_to_json(p) for p in spec.u],
        "f": poly_to_json(spec.f),
        "permutation": list(spec.permutation),
    }
    if spec.name:
        body["name"] = spec.name
    if spec.m is not None:
        body["m"] = spec.m
    if spec.phi_coeffs is not None:
        body["phi"] = [vector_to_json(row) for row in spec.phi_coeffs]
    if spec.psi_coeffs is not None:
        body["psi"] = [[vector_to_json(v) for v in rows] for rows in spec.psi_coeffs]
    if spec.target is not None:
        body["target"] = target_to_json(spec.target)
    if spec.family is not None:
        body["family"] = [[matrix_to_json(m) for m in p.images()] for p in spec.family.members]
    return _doc("metric", body)


def metric_from_json(doc) -> MetricSpec:
    doc = _expect(doc, "metric")
    n = _field(doc, "n")
    nv = n + 2
    u = [poly_from_json(p, nv) for p in _field(doc, "u")]
    f = poly_from_json(_field(doc, "f"), nv)
    target = target_from_json(doc["target"]) if "target" in doc else None
    family = None
    if "family" in doc:
        if target is None:
            raise SchemaError("a family needs the target algebra")
        h = target.h
        family = validate_family(h, [WeakCurvTensor.from_matrices(h, [matrix_from_json(m) for m in imgs])
                                     for imgs in doc["family"]])
    phi = [list(vector_from_json(r)) for r in doc["phi"]] if "phi" in doc else None
    psi = [[list(vector_from_json(v)) for v in rows] for rows in doc["psi"]] if "psi" in doc else None
    return MetricSpec(n=n, n0=_field(doc, "n0"), type_tag=_field(doc, "type"), u=u, f=f,
                      family=family, target=target, m=doc.get("m"), phi_coeffs=phi,
                      psi_coeffs=psi, permutation=list(doc.get("permutation", range(n))),
                      name=doc.get("name"))


def metric_to_latex(spec: MetricSpec) -> str:
    t = spec.n + 1
    lines = [
        r"\begin{align*}",
        rf"g &= 2\,dx^{{0}}dx^{{{t}}} + \sum_{{i=1}}^{{{spec.n}}}(dx^{{i}})^2"
        rf" + 2\sum_{{\hat i=1}}^{{{spec.n0}}} u^{{\hat i}}\,dx^{{\hat i}}dx^{{{t}}}"
        rf" + f\,(dx^{{{t}}})^2,\\",
    ]
    for i, p in enumerate(spec.u, start=1):
        lines.append(rf"u^{{{i}}} &= {to_latex(p)},\\")
    lines.append(rf"f &= {to_latex(spec.f)}.")
    lines.append(r"\end{align*}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- certificates


def classification_to_json(c: Classification) -> dict:
    body = {"type": c.type_tag, "algebra": algebra_to_json(c.h), "translations": c.translations}
    if c.phi is not None:
        body["phi"] = vector_to_json(c.phi)
    if c.m is not None:
        body["m"] = c.m
    if c.psi is not None:
        body["psi"] = [vector_to_json(v) for v in c.psi]
    if c.reason:
        body["reason"] = c.reason
    return body


def classification_from_json(doc) -> Classification:
    return Classification(
        type_tag=doc.get("type"), h=algebra_from_json(_field(doc, "algebra")),
        translations=_field(doc, "translations"),
        phi=vector_from_json(doc["phi"]) if "phi" in doc else None, m=doc.get("m"),
        psi=tuple(vector_from_json(v) for v in doc["psi"]) if "psi" in doc else None,
        reason=doc.get("reason", ""),
    )


def certificate_to_json(cert: HolonomyCertificate) -> dict:
    body = {
        "n": cert.n,
        "dim": cert.dim,
        "generated": [triple_to_json(t) for t in cert.generated],
        "max_order_used": cert.max_order_used,
        "stabilized": cert.stabilized,
        "stable_from": cert.stable_from,
        "stabilization_note": "span dimension unchanged for two consecutive orders; "
                              "a heuristic completeness check",
        "trajectory": list(cert.trajectory),
        "full_directions": cert.full_directions,
        "verdict": cert.verdict,
    }
    if cert.spec is not None and cert.spec.name:
        body["metric"] = cert.spec.name
    if cert.classified is not None:
        body["classified"] = classification_to_json(cert.classified)
    if cert.target is not None:
        body["target"] = target_to_json(cert.target)
    if cert.witness is not None:
        body["witness"] = triple_to_json(cert.witness)
    return _doc("certificate", body)


def certificate_from_json(doc) -> HolonomyCertificate:
    doc = _expect(doc, "certificate")
    return HolonomyCertificate(
        n=_field(doc, "n"),
        generated=[triple_from_json(t) for t in _field(doc, "generated")],
        max_order_used=_field(doc, "max_order_used"),
        stabilized=_field(doc, "stabilized"),
        stable_from=doc.get("stable_from"),
        trajectory=list(_field(doc, "trajectory")),
        full_directions=doc.get("full_directions", False),
        classified=classification_from_json(doc["classified"]) if "classified" in doc else None,
        target=target_from_json(doc["target"]) if "target" in doc else None,
        verdict=doc.get("verdict"),
        witness=triple_from_json(doc["witness"]) if "witness" in doc else None,
    )


def certificate_to_latex(cert: HolonomyCertificate) -> str:
    c = cert.classified
    kind = "none" if c is None or c.type_tag is None else str(c.type_tag)
    rows = [
        r"\begin{tabular}{ll}",
        rf"$\dim\mathfrak{{hol}}_0$ & {cert.dim} \\",
        rf"type & {kind} \\",
        rf"$\dim\mathfrak{{h}}$ & {c.h.dim if c else '-'} \\",
        rf"orders used & {cert.max_order_used} \\",
        rf"trajectory & {', '.join(map(str, cert.trajectory))} \\",
        rf"stabilized & {'yes' if cert.stabilized else 'no'} \\",
        rf"verdict & {cert.verdict or '-'} \\",
        r"\end{tabular}",
    ]
    return "\n".join(rows) + "\n"
