"""Command line: catalog, pspace, forge, curvature, holonomy, verify.

Exit status 0 on success, 1 when ``verify`` ends with a verdict other than
``equal``, 2 on bad input. Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .catalog import CATALOG, catalog_family
from .curvature import CurvatureEngine, CurvatureError
from .exact import format_scalar
from .holonomy import EQUAL, certify
from .lie import AlgebraError
from .metric import ForgeError, MetricSpec, assemble_metric
from .poly import PolyError, to_latex
from .serialize import (
    SchemaError,
    algebra_from_json,
    certificate_to_json,
    certificate_to_latex,
    dumps,
    family_from_json,
    family_to_json,
    metric_from_json,
    metric_to_json,
    metric_to_latex,
    poly_to_json,
    vector_from_json,
    SCHEMA,
)
from .weak_curvature import PFamily, pspace_basis, select_family, validate_family

INPUT_ERRORS = (AlgebraError, ForgeError, SchemaError, PolyError, ValueError, KeyError,
                OSError, json.JSONDecodeError)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def _load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _algebra_and_family(args, need_family: bool = True):
    """(h, family or None) from --algebra/--builtin and --family."""
    if bool(args.algebra) == bool(args.builtin):
        raise UsageError("give exactly one of --algebra FILE or --builtin NAME")
    strategy = getattr(args, "family", None)
    if args.builtin:
        if args.builtin not in CATALOG:
            raise UsageError(f"unknown builtin {args.builtin!r}; known: {', '.join(sorted(CATALOG))}")
        h = CATALOG[args.builtin].algebra()
        if not need_family:
            return h, None
        if strategy is None:
            return h, catalog_family(args.builtin)
    else:
        h = algebra_from_json(_load_json(args.algebra))
        if not need_family:
            return h, None
    return h, _family(h, strategy or "greedy")


def _family(h, strategy: str) -> PFamily:
    if strategy in ("full", "greedy"):
        return select_family(h, strategy)
    return family_from_json(_load_json(strategy), h=h)


def _param_values(source: Optional[str], key: str):
    if source is None or source == "auto":
        return None
    doc = _load_json(source)
    if isinstance(doc, dict):
        doc = doc.get(key, doc)
    if not isinstance(doc, list):
        raise SchemaError(f"--{key} file must hold a list (or an object with {key!r})")
    if key == "phi":
        return vector_from_json(doc)
    return [vector_from_json(v) for v in doc]


def _forge(args) -> MetricSpec:
    if getattr(args, "metric", None):
        return metric_from_json(_load_json(args.metric))
    if args.type is None:
        raise UsageError("--type is required")
    if args.type == 4 and args.m is None:
        raise UsageError("type 4 requires --m")
    h, fam = _algebra_and_family(args)
    name = args.builtin or h.name
    return assemble_metric(fam, args.type, phi=_param_values(args.phi, "phi"), m=args.m,
                           psi=_param_values(args.psi, "psi"), name=name)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_index(text: str, D: int) -> list:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok == "*":
            out.append(None)
        else:
            k = int(tok)
            if not 0 <= k < D:
                raise UsageError(f"index {k} out of range 0..{D - 1}")
            out.append(k)
    return out


# ---------------------------------------------------------------- commands


def cmd_catalog(args) -> int:
    if args.format == "json":
        doc = {"schema": SCHEMA, "kind": "catalog",
               "entries": [{"name": k, "note": CATALOG[k].note} for k in sorted(CATALOG)]}
        _emit(dumps(doc), args.out)
    else:
        _emit("".join(f"{k}\n    {CATALOG[k].note}\n" for k in sorted(CATALOG)), args.out)
    return 0


def cmd_pspace(args) -> int:
    h, _ = _algebra_and_family(args, need_family=False)
    basis = pspace_basis(h)
    if args.basis:
        doc = family_to_json(PFamily(h, basis, 0))
        doc["dim"] = len(basis)
        _emit(dumps(doc), args.out)
    else:
        _emit(f"{len(basis)}\n", args.out)
    return 0


def cmd_forge(args) -> int:
    spec = _forge(args)
    if args.format == "latex":
        _emit(metric_to_latex(spec), args.out)
    else:
        _emit(dumps(metric_to_json(spec)), args.out)
    return 0


def cmd_curvature(args) -> int:
    spec = _forge(args)
    D = spec.n + 2
    dirs = tuple(_parse_index(args.dirs, D)) if args.dirs else (D - 1,) * args.order
    if len(dirs) != args.order or None in dirs:
        raise UsageError("--dirs must list exactly --order explicit indices")
    width = 3 if args.christoffel else 4
    pattern = _parse_index(args.index, D) if args.index else [None] * width
    if len(pattern) != width:
        shape = "b,c,d" if args.christoffel else "b,c,d,f"
        raise UsageError(f"--index takes {width} entries {shape} (integers or *)")
    eng = CurvatureEngine(spec)
    rows = []
    if args.christoffel:
        for b in range(D):
            for c in range(D):
                for d in range(c, D):
                    val = eng.ct(b, c, d)
                    if val and all(p is None or p == v for p, v in zip(pattern, (b, c, d))):
                        rows.append(((b, c, d), val))
    else:
        for b in range(D):
            for c in range(D):
                for d in range(D):
                    for f in range(d + 1, D):
                        if not all(p is None or p == v for p, v in zip(pattern, (b, c, d, f))):
                            continue
                        val = eng.component(b, c, d, f, dirs)
                        if args.at_origin:
                            val = val.truncate(0)
                        if val:
                            rows.append(((b, c, d, f) + dirs, val))
    kind = "christoffel" if args.christoffel else "curvature"
    if args.format == "latex":
        sym = r"\Gamma" if args.christoffel else "R"
        lines = []
        for idx, val in rows:
            lower = ",".join(map(str, idx[1:4] if not args.christoffel else idx[1:]))
            tail = "".join(f";{k}" for k in idx[4:])
            lines.append(rf"{sym}^{{{idx[0]}}}_{{{lower}{tail}}} &= {to_latex(val)}\\")
        _emit("\\begin{align*}\n" + "\n".join(lines) + "\n\\end{align*}\n", args.out)
    else:
        doc = {"schema": SCHEMA, "kind": kind, "order": 0 if args.christoffel else args.order,
               "dirs": [] if args.christoffel else list(dirs), "at_origin": bool(args.at_origin),
               "components": [{"index": list(idx), "value": poly_to_json(v)} for idx, v in rows]}
        _emit(dumps(doc), args.out)
    return 0


def _certificate(args):
    spec = _forge(args)
    cert = certify(spec, max_order=args.max_order, full_directions=args.full_directions)
    text = certificate_to_latex(cert) if args.format == "latex" else dumps(certificate_to_json(cert))
    _emit(text, args.out)
    c = cert.classified
    print(f"dim hol_0 = {cert.dim}; type = {c.type_tag if c else None}; trajectory = "
          f"{cert.trajectory}; stabilized = {cert.stabilized}; verdict = {cert.verdict}",
          file=sys.stderr)
    return cert


def cmd_holonomy(args) -> int:
    _certificate(args)
    return 0


def cmd_verify(args) -> int:
    cert = _certificate(args)
    return 0 if cert.verdict == EQUAL else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holonomy-forge",
                                description="Forge Lorentzian metrics with prescribed holonomy.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, forge_opts=True, metric_file=False):
        sp.add_argument("--algebra", metavar="FILE", help="algebra JSON")
        sp.add_argument("--builtin", metavar="NAME", help="catalog entry")
        sp.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
        sp.add_argument("--format", choices=("json", "latex"), default="json")
        if forge_opts:
            sp.add_argument("--type", type=int, choices=(1, 2, 3, 4))
            sp.add_argument("--m", type=int)
            sp.add_argument("--phi", metavar="FILE|auto", default="auto")
            sp.add_argument("--psi", metavar="FILE|auto", default="auto")
            sp.add_argument("--family", metavar="full|greedy|FILE")
        if metric_file:
            sp.add_argument("--metric", metavar="FILE", help="metric JSON from forge")

    sp = sub.add_parser("catalog", help="list built-in algebras")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("pspace", help="dimension of the weak-curvature space")
    common(sp, forge_opts=False)
    sp.add_argument("--basis", action="store_true", help="print a basis as JSON")
    sp.set_defaults(func=cmd_pspace)

    sp = sub.add_parser("forge", help="build the metric")
    common(sp)
    sp.set_defaults(func=cmd_forge)

    sp = sub.add_parser("curvature", help="dump Christoffel or curvature components")
    common(sp, metric_file=True)
    sp.add_argument("--order", type=int, default=0)
    sp.add_argument("--dirs", help="comma list of derivative directions (default all n+1)")
    sp.add_argument("--index", help="pattern b,c,d,f (b,c,d with --christoffel); * is a wildcard")
    sp.add_argument("--christoffel", action="store_true")
    sp.add_argument("--at-origin", action="store_true", help="evaluate at 0")
    sp.set_defaults(func=cmd_curvature)

    for name, func, text in (("holonomy", cmd_holonomy, "generate and classify hol_0"),
                             ("verify", cmd_verify, "full pipeline; exit 0 iff verdict is equal")):
        sp = sub.add_parser(name, help=text)
        common(sp, metric_file=True)
        sp.add_argument("--max-order", type=int)
        sp.add_argument("--full-directions", action="store_true")
        sp.set_defaults(func=func)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CurvatureError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
