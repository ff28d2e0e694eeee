"""Canonical JSON documents (schema ``germ-forge/1``) and their readers.

Polynomials travel as canonical strings in the parser's grammar, scalars as
``"p/q"`` (or ``"(a + b*i)"`` in complex mode), infinite orders as
``"inf"``. :func:`dumps` sorts keys so equal values give identical bytes.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .arcs import ArcComparison, ComparisonReport, MembershipCertificate, TruncatedArc, T
from .cascade import DeformationFamily, Level, NormalSystem
from .discriminants import GenDiscVector
from .equisingularity import ConditionResult, EquisingVerdict, Witness
from .parser import parse_poly
from .poly import Poly
from .scalars import format_scalar, parse_scalar
from .series import LinearChange, PseudoPoly, TruncSeries
from .tangency import TangencyMap
from .valuation import ValSet

SCHEMA = "germ-forge/1"


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _order(o):
    if o is None:
        return None
    return "inf" if o == math.inf else o


def _read_order(o):
    return math.inf if o == "inf" else o


def _poly(s: str, vars, field) -> Poly:
    return parse_poly(s, vars, field, allow_t=False)


# -- building blocks ----------------------------------------------------------------


def series_to_json(s: TruncSeries) -> dict:
    return {"body": s.body.to_str(), "order": s.order}


def series_from_json(d, vars, field) -> TruncSeries:
    return TruncSeries(_poly(d["body"], vars, field), d["order"])


def pseudo_to_json(F: PseudoPoly) -> dict:
    return {
        "main": F.main_var,
        "degree": F.degree,
        "coeffs": [series_to_json(a) for a in F.coeffs],
        "params": list(F.params),
        "text": str(F),
    }


def pseudo_from_json(d, vars, field) -> PseudoPoly:
    return PseudoPoly(
        vars.index(d["main"]),
        tuple(series_from_json(a, vars, field) for a in d["coeffs"]),
        vars,
        field,
        tuple(d["params"]),
    )


def change_to_json(c: LinearChange | None):
    if c is None:
        return None
    return {"matrix": [[format_scalar(x) for x in row] for row in c.matrix], "seed": c.seed}


def change_from_json(d):
    if d is None:
        return None
    return LinearChange(tuple(tuple(Fraction(x) for x in row) for row in d["matrix"]), d["seed"])


def arc_to_json(a: TruncatedArc) -> dict:
    return {"components": [c.to_str() for c in a.components], "order": a.order}


def arc_from_json(d, field) -> TruncatedArc:
    return TruncatedArc(tuple(_poly(c, (T,), field) for c in d["components"]), d["order"], field)


# -- normal systems ----------------------------------------------------------------


def _level_to_json(lv: Level) -> dict:
    return {
        "index": lv.index,
        "p": lv.p,
        "j": lv.j,
        "f": pseudo_to_json(lv.f),
        "unit": None if lv.unit is None else series_to_json(lv.unit),
        "disc": None if lv.disc is None else series_to_json(lv.disc),
        "change": change_to_json(lv.change),
        "qualifier": lv.qualifier,
    }


def _level_from_json(d, vars, field) -> Level:
    return Level(
        d["index"],
        pseudo_from_json(d["f"], vars, field),
        d["p"],
        d["j"],
        None if d["unit"] is None else series_from_json(d["unit"], vars, field),
        None if d["disc"] is None else series_from_json(d["disc"], vars, field),
        change_from_json(d["change"]),
        d["qualifier"],
    )


def _system_body(ns: NormalSystem) -> dict:
    return {
        "vars": list(ns.vars),
        "field": ns.field,
        "order": ns.order,
        "seed": ns.seed,
        "inputs": [series_to_json(g) for g in ns.inputs],
        "preliminary": change_to_json(ns.preliminary),
        "composite_change": change_to_json(ns.change),
        "degrees": list(ns.degrees),
        "indices": list(ns.indices),
        "levels": [_level_to_json(lv) for lv in ns.levels],
    }


def normal_system_to_json(ns: NormalSystem) -> dict:
    return {"schema": SCHEMA, "kind": "normal-system", **_system_body(ns)}


def _system_from_body(d) -> NormalSystem:
    vars, field = tuple(d["vars"]), d["field"]
    return NormalSystem(
        vars,
        tuple(series_from_json(g, vars, field) for g in d["inputs"]),
        tuple(_level_from_json(lv, vars, field) for lv in d["levels"]),
        d["order"],
        d["seed"],
        change_from_json(d["preliminary"]),
        field,
    )


def deformation_to_json(fam: DeformationFamily) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "deformation",
        "param": fam.param,
        "m": fam.m,
        "vars": list(fam.vars),
        "members": [pseudo_to_json(F) for F in fam.members],
        "system": _system_body(fam.system),
    }


def _deformation_from_json(d) -> DeformationFamily:
    vars = tuple(d["vars"])
    ns = _system_from_body(d["system"])
    members = tuple(pseudo_from_json(F, vars, ns.field) for F in d["members"])
    return DeformationFamily(ns, members, d["m"], d["param"])


# -- discriminants ------------------------------------------------------------------


def discriminants_to_json(F: PseudoPoly, vec: GenDiscVector, first=None, distinct=None) -> dict:
    doc = {
        "schema": SCHEMA,
        "kind": "discriminants",
        "vars": list(F.vars),
        "field": F.field,
        "input": pseudo_to_json(F),
        "degree": vec.degree,
        "route": vec.route,
        "deltas": [series_to_json(x) for x in vec.deltas],
        "vanishing": [v.value for v in vec.vanishing_pattern()],
        "first_nonvanishing": None,
        "distinct_roots": distinct,
    }
    if first is not None:
        j, _, qual = first
        doc["first_nonvanishing"] = {"j": j, "qualifier": qual}
    return doc


def _discriminants_from_json(d):
    vars, field = tuple(d["vars"]), d["field"]
    F = pseudo_from_json(d["input"], vars, field)
    vec = GenDiscVector(d["degree"], tuple(series_from_json(x, vars, field) for x in d["deltas"]), d["route"])
    return F, vec


# -- equisingularity ----------------------------------------------------------------


def _scalar_map(d):
    return {k: format_scalar(v) for k, v in d.items()}


def _witness_to_json(w: Witness) -> dict:
    data = {}
    for k, v in w.data.items():
        if isinstance(v, Poly):
            data[k] = v.to_str()
        elif isinstance(v, dict):
            data[k] = _scalar_map(v)
        elif isinstance(v, int):
            data[k] = v
        else:
            data[k] = format_scalar(v)
    return {"condition": w.condition, "level": w.level, "kind": w.kind, "description": w.description, "data": data}


_POLY_KEYS = {"value"}
_INT_KEYS = {"coefficient", "roots_at_point", "generic_roots", "degree"}


def _witness_from_json(d, vars, field) -> Witness:
    data = {}
    for k, v in d["data"].items():
        if k in _INT_KEYS:
            data[k] = v
        elif k in _POLY_KEYS:
            data[k] = _poly(v, vars, field)
        elif isinstance(v, dict):
            data[k] = {kk: parse_scalar(vv) for kk, vv in v.items()}
        else:
            data[k] = parse_scalar(v)
    return Witness(d["condition"], d["level"], d["kind"], d["description"], data)


def verdict_to_json(v: EquisingVerdict, vars, field) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "equisingularity",
        "vars": list(vars),
        "field": field,
        "order": v.order,
        "params": list(v.params),
        "verdict": v.verdict,
        "conditions": {
            str(k): {
                "verdict": c.verdict,
                "levels": {str(i): lv for i, lv in c.levels.items()},
                "notes": list(c.notes),
            }
            for k, c in v.conditions.items()
        },
        "witnesses": [_witness_to_json(w) for w in v.witnesses],
        "metadata": v.metadata,
    }


def _verdict_from_json(d) -> EquisingVerdict:
    vars, field = tuple(d["vars"]), d["field"]
    conds = {
        int(k): ConditionResult(c["verdict"], {int(i): lv for i, lv in c["levels"].items()}, tuple(c["notes"]))
        for k, c in d["conditions"].items()
    }
    wits = tuple(_witness_from_json(w, vars, field) for w in d["witnesses"])
    return EquisingVerdict(conds, d["order"], tuple(d["params"]), wits, d["metadata"])


# -- arcs ----------------------------------------------------------------------------


def _payload_to_json(cert: MembershipCertificate) -> dict:
    out = {}
    for k, v in cert.payload.items():
        if isinstance(v, TruncatedArc):
            out[k] = arc_to_json(v)
        elif k == "components":
            out[k] = [s.to_dict() for s in v]
        elif k == "groups":
            out[k] = [{"terms": g["terms"].to_str(), "orders": g["orders"].to_dict(),
                       "orders_text": g["orders"].describe()} for g in v]
        elif k == "equation":
            out[k] = {"vars": list(v.vars), "poly": v.to_str()}
        elif k == "forced":
            out[k] = [[d, name, format_scalar(val)] for d, name, val in v]
        elif isinstance(v, float):
            out[k] = _order(v)
        else:
            out[k] = v
    return out


def _payload_from_json(p: dict, vars, field) -> dict:
    out = {}
    for k, v in p.items():
        if k == "witness":
            out[k] = arc_from_json(v, field)
        elif k == "components":
            out[k] = [ValSet.from_dict(s) for s in v]
        elif k == "groups":
            out[k] = [{"terms": _poly(g["terms"], vars, field), "orders": ValSet.from_dict(g["orders"])} for g in v]
        elif k == "equation":
            out[k] = _poly(v["poly"], tuple(v["vars"]), field)
        elif k == "forced":
            out[k] = [(d, name, parse_scalar(val)) for d, name, val in v]
        elif k in ("jacobian_order", "value_order"):
            out[k] = _read_order(v)
        else:
            out[k] = v
    return out


def _cert_body(cert: MembershipCertificate) -> dict:
    return {
        "certificate": cert.kind,
        "arc": arc_to_json(cert.arc),
        "K": cert.K,
        "field": cert.field,
        "payload": _payload_to_json(cert),
    }


def _cert_from_body(d, vars) -> MembershipCertificate:
    field = d["field"]
    return MembershipCertificate(
        d["certificate"], arc_from_json(d["arc"], field), d["K"], field, _payload_from_json(d["payload"], vars, field)
    )


def certificate_to_json(f: Poly, cert: MembershipCertificate) -> dict:
    return {"schema": SCHEMA, "kind": "membership", "vars": list(f.vars), "poly": f.to_str(), **_cert_body(cert)}


def comparison_to_json(f: Poly, g: Poly, report: ComparisonReport) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "arc-comparison",
        "vars": list(f.vars),
        "first": f.to_str(),
        "second": g.to_str(),
        "m": report.m,
        "K": report.K,
        "field": report.field,
        "spaces_differ": report.spaces_differ,
        "entries": [
            {"arc": arc_to_json(e.arc), "status": e.status, "first": _cert_body(e.first), "second": _cert_body(e.second)}
            for e in report.entries
        ],
    }


def _comparison_from_json(d):
    vars, field = tuple(d["vars"]), d["field"]
    entries = tuple(
        ArcComparison(arc_from_json(e["arc"], field), _cert_from_body(e["first"], vars), _cert_from_body(e["second"], vars))
        for e in d["entries"]
    )
    return ComparisonReport(d["m"], d["K"], field, entries)


# -- tangency ------------------------------------------------------------------------


def tangency_to_json(phi: TangencyMap, order, holds: bool, arc_result: TruncatedArc | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "tangency",
        "vars": list(phi.vars),
        "field": phi.tau.field,
        "tau": phi.tau.to_str(),
        "delta": format_scalar(phi.delta),
        "m": phi.m,
        "map": [c.to_str() for c in phi.components],
        "rho": phi.rho,
        "order": _order(order),
        "holds": holds,
        "arc": None if arc_result is None else arc_to_json(arc_result),
    }


def _tangency_from_json(d):
    vars, field = tuple(d["vars"]), d["field"]
    phi = TangencyMap(_poly(d["tau"], vars, field), Fraction(d["delta"]), d["m"])
    arc = None if d["arc"] is None else arc_from_json(d["arc"], field)
    return phi, _read_order(d["order"]), d["holds"], arc


# -- reader ---------------------------------------------------------------------------


def from_json(doc):
    """Rebuild the in-memory value of any document written by this module."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    kind = doc["kind"]
    if kind == "normal-system":
        return _system_from_body(doc)
    if kind == "deformation":
        return _deformation_from_json(doc)
    if kind == "discriminants":
        return _discriminants_from_json(doc)
    if kind == "equisingularity":
        return _verdict_from_json(doc)
    if kind == "membership":
        return _cert_from_body(doc, tuple(doc["vars"]))
    if kind == "arc-comparison":
        return _comparison_from_json(doc)
    if kind == "tangency":
        return _tangency_from_json(doc)
    raise ValueError(f"unknown document kind {kind!r}")
