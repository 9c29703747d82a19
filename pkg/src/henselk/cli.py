"""Command-line front-end: every operation, structured output.

Each invocation prints line-delimited JSON records with stable field
ordering (or aligned text with --format text) and exits 0 on success,
1 on domain errors, 2 on parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import dsl, numberfield
from .arcs_loja import (Arc, anisotropic_form, loja_exponent, parity_check,
                        select_arc)
from .closedness import (ClosurePointResult, FiberShrink,
                         construct_closure_point, fiber_shrink, is_in_closure)
from .errors import DslParseError, HenselkError
from .hensel_puiseux import (AT_INFINITY, branch_limits, hensel_decompose,
                             hensel_lift, newton_polygon, puiseux_expand)
from .presburger import find_ray, qe, render as render_formula, sat
from .presburger import NoRay, Ray, extremum
from .series import LaurentSeries


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _frac(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 \
        else str(q.numerator)


def _series(s: LaurentSeries, var: str = "t") -> str:
    text = str(s)
    return text if var == "t" else text.replace("t", var)


def _qpoly(coeffs, var: str) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(_frac(c))
        else:
            head = "" if c == 1 else ("-" if c == -1 else _frac(c) + "*")
            parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
    out = " + ".join(parts) if parts else "0"
    return out.replace("+ -", "- ")


def _value(obj):
    if obj is AT_INFINITY:
        return "infinity"
    if isinstance(obj, Fraction):
        return _frac(obj)
    return str(obj)


def _slope_line(sl):
    if sl is None:
        return None
    if sl is AT_INFINITY:
        return "infinity"
    p, q, beta = sl
    return {"p": int(p), "q": int(q), "beta": _frac(beta)}


def _field(field) -> str | None:
    if field is None:
        return None
    return _qpoly(field.min_poly, field.name)


def _model(model):
    if model is None:
        return None
    return {k: model[k] for k in sorted(model)}


def _ray(ray: Ray) -> dict:
    return {"variables": list(ray.variables), "base": list(ray.base),
            "direction": list(ray.direction)}


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------


def _cmd_qe(args) -> list[dict]:
    f = dsl.cond_to_formula(dsl.parse_condition(args.formula))
    return [{"result": render_formula(qe(f))}]


def _cmd_sat(args) -> list[dict]:
    f = dsl.cond_to_formula(dsl.parse_condition(args.formula))
    model = sat(f)
    return [{"satisfiable": model is not None, "model": _model(model)}]


def _cmd_extremum(args) -> list[dict]:
    f = dsl.cond_to_formula(dsl.parse_condition(args.formula))
    obj = dsl.value_term_to_linterm(dsl.parse_value_term(args.objective))
    ext = extremum(f, obj, args.mode)
    return [{"kind": ext.kind, "mode": ext.mode, "value": ext.value,
             "witness": _model(ext.witness),
             "ray": _ray(ext.ray) if ext.ray else None}]


def _cmd_ray(args) -> list[dict]:
    f = dsl.cond_to_formula(dsl.parse_condition(args.formula))
    variables = args.vars.split(",") if args.vars else None
    got = find_ray(f, variables)
    if isinstance(got, NoRay):
        return [{"found": False, "reason": got.reason, "bound": got.bound}]
    return [{"found": True, **_ray(got)}]


def _cmd_hensel_lift(args) -> list[dict]:
    F = dsl.expr_to_polyk(dsl.parse_expression(args.poly))
    r0 = dsl.expr_to_series(dsl.parse_expression(args.start))
    root = hensel_lift(F, r0, args.precision)
    return [{"root": _series(root),
             "residual_valuation": str(F(root).valuation())}]


def _cmd_hensel_decompose(args) -> list[dict]:
    P = dsl.expr_to_polyk(dsl.parse_expression(args.poly))
    fz = hensel_decompose(P, args.precision)
    factors = []
    for fac in fz.factors:
        factors.append({
            "poly": str(fac.poly),
            "residue": _qpoly(fac.residue, "y"),
            "multiplicity": fac.multiplicity,
            "center": _value(fac.center),
            "field": _field(fac.field),
        })
    return [{"unit": _series(fz.unit), "precision": fz.precision,
             "factors": factors}]


def _polygon_input(text: str):
    node = dsl.parse_expression(text)
    names = dsl.expr_names(node)
    if "x" in names:
        return dsl.expr_to_bivar(node)
    return dsl.expr_to_polyk(node)


def _cmd_polygon(args) -> list[dict]:
    poly = _polygon_input(args.poly)
    ng = newton_polygon(poly)
    edges = [{"slope": _frac(e.slope), "start": [int(e.start[0]), _frac(e.start[1])],
              "end": [int(e.end[0]), _frac(e.end[1])], "length": int(e.length)}
             for e in ng.edges]
    return [{"vertices": [[int(i), _frac(v)] for i, v in ng.vertices],
             "edges": edges}]


def _branch_record(b) -> dict:
    return {"ram_index": b.ram_index,
            "series": _series(b.series, "s"),
            "field": _field(b.field),
            "limit": _value(b.limit),
            "K_rational": b.is_K_rational,
            "multiplicity": b.multiplicity,
            "covers": b.covers,
            "slope_line": _slope_line(b.slope_line)}


def _cmd_puiseux(args) -> list[dict]:
    P = dsl.expr_to_bivar(dsl.parse_expression(args.poly))
    return [_branch_record(b) for b in puiseux_expand(P, args.order)]


def _cmd_limits(args) -> list[dict]:
    P = dsl.expr_to_bivar(dsl.parse_expression(args.poly))
    out = []
    for rec in branch_limits(P, args.order):
        out.append({"limit": _value(rec.limit),
                    "K_rational": rec.is_K_rational,
                    "slope_line": _slope_line(rec.slope_line),
                    "field": _field(rec.field),
                    "multiplicity": rec.multiplicity,
                    "covers": rec.covers})
    return out


def _cmd_closure(args) -> list[dict]:
    B = dsl.cond_to_cellset(dsl.parse_condition(args.condition))
    got = construct_closure_point(B, args.steps)
    if not isinstance(got, ClosurePointResult):
        return [{"found": False, "bound": got.bound, "detail": got.detail}]
    trace = [{"level": s.level, "digit": _frac(s.digit),
              "region": render_formula(s.region)} for s in got.trace.steps]
    certs = [{"nu": nu, "witness": _model(w)} for nu, w in got.certificates]
    return [{"found": True, "point": _series(got.w),
             "outcome": got.trace.outcome, "disjunct": got.disjunct,
             "trace": trace, "certificates": certs}]


def _cmd_shrink(args) -> list[dict]:
    A = dsl.cond_to_cellset(dsl.parse_condition(args.condition))
    got = fiber_shrink(A, args.steps)
    if not isinstance(got, FiberShrink):
        return [{"found": False, "bound": got.bound, "detail": got.detail}]
    return [{"found": True, "permutation": list(got.permutation),
             "step": got.step, "direction": list(got.direction),
             "ray": _ray(got.ray), "description": got.description}]


def _cmd_member(args) -> list[dict]:
    B = dsl.cond_to_cellset(dsl.parse_condition(args.condition))
    point = [dsl.expr_to_series(dsl.parse_expression(p)) for p in args.point]
    got = is_in_closure(B, point, args.steps)
    certs = [{"nu": nu, "witness": _model(w)} for nu, w in got.certificates]
    return [{"member": got.value, "failed_at": got.failed_at,
             "disjunct": got.disjunct, "certificates": certs}]


def _cmd_arc(args) -> list[dict]:
    cond = dsl.cond_to_plane(dsl.parse_condition(args.condition))
    got = select_arc(cond, args.order, args.exponent_bound)
    if not isinstance(got, Arc):
        return [{"found": False, "reason": got.reason,
                 "exponent_bound": got.exponent_bound, "order": got.order}]
    return [{"found": True,
             "components": [_series(c, "z") for c in got.components],
             "domain": got.domain, "order": got.order}]


def _cmd_loja(args) -> list[dict]:
    f = dsl.expr_to_polyk(dsl.parse_expression(args.f))
    g = dsl.expr_to_polyk(dsl.parse_expression(args.g))
    cert = loja_exponent(f, g, args.order)
    roots = [{"root": _series(rd.root), "mult_f": rd.mult_f,
              "mult_g": rd.mult_g, "c_f": _frac(rd.c_f),
              "c_g": _frac(rd.c_g)} for rd in cert.common_roots]
    return [{"s": cert.s, "gamma0": cert.gamma0, "slack": _frac(cert.slack),
             "h": None if cert.h is None else str(cert.h),
             "h_spec": cert.h_spec, "minimality": cert.minimality,
             "common_roots": roots}]


def _render_form(poly) -> str:
    parts = []
    for expo in sorted(poly, reverse=True):
        c = poly[expo]
        cs = _series(c)
        monos = [f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                 for i, e in enumerate(expo) if e > 0]
        if not monos:
            parts.append(f"({cs})" if ("+" in cs or " " in cs) else cs)
            continue
        if cs == "1":
            parts.append("*".join(monos))
        elif ("+" in cs) or (" " in cs):
            parts.append(f"({cs})*" + "*".join(monos))
        else:
            parts.append(f"{cs}*" + "*".join(monos))
    return " + ".join(parts).replace("+ -", "- ")


def _cmd_gform(args) -> list[dict]:
    form = anisotropic_form(args.r)
    record = {"r": form.r, "poly": _render_form(form.poly),
              "degrees": list(form.degrees),
              "levels": [lv.statement for lv in form.levels],
              "parity_check": parity_check(form)}
    if args.check:
        rng = random.Random(args.seed)
        failures = 0
        for _ in range(args.samples):
            while True:
                vals = [LaurentSeries({
                    e: Fraction(rng.randint(-3, 3)) for e in range(-3, 4)})
                    for _ in range(form.r)]
                if any(not v.is_exact_zero for v in vals):
                    break
            if form.evaluate(vals).is_exact_zero:
                failures += 1
        record["samples"] = args.samples
        record["all_nonzero"] = failures == 0
    return [record]


def _cmd_parse(args) -> list[dict]:
    node = dsl.parse_expr(args.text)
    kind = "condition" if isinstance(node, dsl.COND_NODES) else "expression"
    return [{"kind": kind, "pretty": dsl.render(node)}]


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--precision", type=int,
                        default=int(os.environ.get("HENSELK_PRECISION", "32")))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--degree-cap", type=int, default=None)

    top = argparse.ArgumentParser(prog="henselk",
                                  description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("qe", _cmd_qe, "eliminate quantifiers from a value-group formula")
    p.add_argument("formula")
    p = add("sat", _cmd_sat, "satisfiability with a model")
    p.add_argument("formula")
    p = add("extremum", _cmd_extremum, "sup or inf of a linear objective")
    p.add_argument("formula")
    p.add_argument("--objective", required=True)
    p.add_argument("--mode", choices=("sup", "inf"), default="sup")
    p = add("ray", _cmd_ray, "all-positive ray inside the solution set")
    p.add_argument("formula")
    p.add_argument("--vars", default=None)
    p = add("hensel-lift", _cmd_hensel_lift,
            "lift a simple residue root to a series root")
    p.add_argument("poly")
    p.add_argument("start")
    p = add("hensel-decompose", _cmd_hensel_decompose,
            "factor along the residue factorization")
    p.add_argument("poly")
    p = add("polygon", _cmd_polygon, "valuation polygon of a polynomial")
    p.add_argument("poly")
    p = add("puiseux", _cmd_puiseux, "fractional-power branch expansions")
    p.add_argument("poly")
    p.add_argument("--order", type=int, default=16)
    p = add("limits", _cmd_limits, "branch limits as the parameter shrinks")
    p.add_argument("poly")
    p.add_argument("--order", type=int, default=16)
    p = add("closure", _cmd_closure, "closure point of a cell-form set")
    p.add_argument("condition")
    p.add_argument("-N", "--steps", type=int, default=16)
    p = add("shrink", _cmd_shrink, "fiber-shrinking ray of a cell-form set")
    p.add_argument("condition")
    p.add_argument("-N", "--steps", type=int, default=16)
    p = add("member", _cmd_member, "closure membership of a point")
    p.add_argument("condition")
    p.add_argument("point", nargs="+")
    p.add_argument("-N", "--steps", type=int, default=16)
    p = add("arc", _cmd_arc, "arc into a plane valuative set")
    p.add_argument("condition")
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--exponent-bound", type=int, default=12)
    p = add("loja", _cmd_loja, "division exponent with certificate")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--order", type=int, default=32)
    p = add("gform", _cmd_gform, "anisotropic form in r variables")
    p.add_argument("r", type=int)
    p.add_argument("--check", action="store_true")
    p.add_argument("--samples", type=int, default=200)
    p = add("parse", _cmd_parse, "parse and pretty-print")
    p.add_argument("text")
    return top


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec) + "\n")
        return
    for i, rec in enumerate(records):
        if i:
            out.write("\n")
        for key, value in rec.items():
            if isinstance(value, (str, int, bool)) or value is None:
                out.write(f"{key}: {value}\n")
            else:
                out.write(f"{key}: {json.dumps(value)}\n")


def run_command(argv) -> tuple[list[dict], int]:
    """Records and exit code for one invocation (no printing)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.degree_cap is not None:
        numberfield.DEGREE_CAP = args.degree_cap
    try:
        records = args.handler(args)
        for rec in records:
            rec_items = list(rec.items())
            rec.clear()
            rec["status"] = "ok"
            rec.update(rec_items)
        return records, 0
    except DslParseError as e:
        return [{"status": "error", "kind": e.kind, "message": e.message,
                 "line": e.line, "column": e.column,
                 "expected": list(e.expected)}], 2
    except HenselkError as e:
        data = {k: str(v) for k, v in e.data.items()}
        return [{"status": "error", "kind": e.kind, "message": e.message,
                 **data}], 1


def main(argv=None) -> int:
    source = list(sys.argv[1:] if argv is None else argv)
    try:
        records, code = run_command(source)
    except SystemExit as e:
        return 2 if e.code else 0
    fmt = "json"
    for i, tok in enumerate(source):
        if tok == "--format" and i + 1 < len(source):
            fmt = source[i + 1]
        elif tok.startswith("--format="):
            fmt = tok.split("=", 1)[1]
    _emit(records, fmt, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
