"""JSON forms for elements, modules, tables and verdicts (schema "ahlib/1")."""

from __future__ import annotations

import json

from .ahalg import AhContext, AhElement
from .analysis import SubmoduleLattice, Verdict
from .errors import ParseError
from .linalg import Matrix, Subspace
from .partitions import PartitionCoeffTable
from .poly import Poly
from .representations import FinModule, custom_module
from .scalars import field_from_spec

SCHEMA = "ahlib/1"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def context_from_json(d: dict) -> AhContext:
    try:
        F = field_from_spec(d.get("field", "q"))
        return AhContext(F, Poly.parse(F, d["h"]))
    except KeyError as e:
        raise ParseError(f"missing key {e} in JSON input") from None


def element_to_json(a: AhElement) -> dict:
    F = a.ctx.field
    raw = a.raw_terms()
    order = sorted(raw, key=lambda mn: (-mn[1], -mn[0]))
    return {
        "schema": SCHEMA,
        "h": str(a.ctx.h),
        "field": F.spec(),
        "terms": [{"x": m, "y": n, "c": F.format(raw[(m, n)])} for m, n in order],
    }


def element_from_json(d: dict) -> AhElement:
    ctx = context_from_json(d)
    F = ctx.field
    return ctx.from_terms({(int(t["x"]), int(t["y"])): F.parse(str(t["c"])) for t in d.get("terms", [])})


def module_to_json(M: FinModule) -> dict:
    return {
        "schema": SCHEMA,
        "h": str(M.ctx.h),
        "field": M.field.spec(),
        "dim": M.dim,
        "X": M.X.to_strings(),
        "Y": M.Y.to_strings(),
        "provenance": M.provenance,
    }


def matrix_from_json(F, rows) -> Matrix:
    return Matrix(F, [[F.parse(str(v)).v for v in r] for r in rows])


def module_from_json(d: dict) -> FinModule:
    ctx = context_from_json(d)
    F = ctx.field
    try:
        X = matrix_from_json(F, d["X"])
        Y = matrix_from_json(F, d["Y"])
    except KeyError as e:
        raise ParseError(f"missing key {e} in module JSON") from None
    if "dim" in d and int(d["dim"]) != X.nrows:
        raise ParseError("dim does not match the matrices")
    M = custom_module(ctx, X, Y)
    prov = d.get("provenance") or {"kind": "Custom"}
    return FinModule(ctx, M.X, M.Y, dict(prov))


def table_to_json(t: PartitionCoeffTable) -> dict:
    return {
        "schema": SCHEMA,
        "k": t.k,
        "entries": [{"parts": list(mu.parts), "coeff": str(c)} for mu, c in t.entries()],
        "sum": str(t.total()),
    }


def subspace_to_json(S: Subspace) -> list:
    return [[S.ctx.format(a) for a in r] for r in S.basis]


def witness_to_json(F, w):
    if w is None:
        return None
    if isinstance(w, Matrix):
        return w.to_strings()
    if isinstance(w, Subspace):
        return subspace_to_json(w)
    if isinstance(w, tuple):
        return [witness_to_json(F, x) for x in w]
    if isinstance(w, int):
        return w
    if isinstance(w, list):
        return [F.format(a) for a in w]
    return str(w)


def verdict_to_json(v: Verdict, F) -> dict:
    return {"schema": SCHEMA, "value": v.value.value, "method": v.method, "witness": witness_to_json(F, v.witness)}


def lattice_to_json(L: SubmoduleLattice) -> dict:
    return {
        "schema": SCHEMA,
        "dim": L.n,
        "is_chain": L.is_chain,
        "subspaces": [subspace_to_json(S) for S in L.subspaces],
    }
