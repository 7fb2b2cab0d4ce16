"""Command-line interface: ``ahlib [global flags] <command> ...``.

Exit codes: 0 success, 1 domain error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .ahalg import AhContext, commutator, embed_weyl, is_normal_bounded
from .analysis import (
    DEFAULT_SEED,
    ann_bounded,
    classify_char_p,
    d_annihilator,
    is_indecomposable,
    is_irreducible,
    is_uniserial,
    submodule_lattice,
    weight_decomposition,
)
from .errors import AhlibError, ParseError
from .partitions import coeff_rows, expand_delta_x
from .poly import Poly
from .representations import (
    FinModule,
    l_module_factor,
    l_z_beta,
    n_module,
    one_dim,
    truncated_weyl_module,
    verify_relation,
    weyl_restrict,
)
from .scalars import field_from_spec
from .serialization import (
    SCHEMA,
    dumps,
    element_to_json,
    lattice_to_json,
    matrix_from_json,
    module_from_json,
    module_to_json,
    subspace_to_json,
    table_to_json,
    verdict_to_json,
)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ahlib",
        description="Exact computations in the algebra A_h = F<x,y>/(yx - xy - h).",
    )
    ap.add_argument("--field", default="q", help="q, fp:<p>, or an extension such as fp:2:t^2+t+1 (default q)")
    ap.add_argument("--h", default="x", help='the polynomial h, e.g. "x^2" (default x)')
    ap.add_argument("--json", action="store_true", help="emit JSON instead of text")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for randomized searches (default {DEFAULT_SEED})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="product of two elements in normal form")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("commutator", help="[a, b] = ab - ba")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("ctable", help="coefficient table rows 1..k for delta^k(x)")
    p.add_argument("k", type=int)

    p = sub.add_parser("delta", help="delta^k(r) with delta(r) = r'h")
    p.add_argument("r")
    p.add_argument("k", type=int, nargs="?", default=1)
    p.add_argument("--expand", action="store_true", help="for r = x, also assemble the value from the coefficient table")

    sub.add_parser("zp", help="the central element z_p and delta^p(x)/h (characteristic p)")

    p = sub.add_parser("center", help="basis of the centralizer inside a degree window")
    p.add_argument("dx", type=int)
    p.add_argument("dy", type=int)

    p = sub.add_parser("embed", help="image of an element in the Weyl algebra A_1")
    p.add_argument("a")

    p = sub.add_parser("normal", help="window test of b A_h = A_h b")
    p.add_argument("b")
    p.add_argument("dx", type=int)
    p.add_argument("dy", type=int)

    p = sub.add_parser("classify", help="irreducible modules for (lambda, beta) in characteristic p")
    p.add_argument("lam")
    p.add_argument("beta")

    mod = sub.add_parser("module", help="build or analyse a finite-dimensional module")
    msub = mod.add_subparsers(dest="action", required=True)
    b = msub.add_parser("build", help="construct a module and print it as JSON")
    bsub = b.add_subparsers(dest="kind", required=True)
    q = bsub.add_parser("one-dim", help="X = [lam], Y = [mu] with h(lam) = 0")
    q.add_argument("lam")
    q.add_argument("mu")
    q = bsub.add_parser("n-module", help="D/(x - lam)^(n+1) with y acting as q + delta")
    q.add_argument("lam")
    q.add_argument("q")
    q.add_argument("n", type=int)
    q = bsub.add_parser("l-factor", help="f and a monic y-polynomial such as 'y^2 + 1'")
    q.add_argument("f")
    q.add_argument("g")
    q = bsub.add_parser("l-z-beta", help="dimension-p module with h(lam) != 0 (characteristic p)")
    q.add_argument("lam")
    q.add_argument("beta")
    q = bsub.add_parser("weyl-restrict", help="restrict an A_1-module given as JSON with X and Y")
    q.add_argument("file")
    q = bsub.add_parser("truncated-weyl", help="restriction of F[x]/(x^p - lam^p) with Y = d/dx")
    q.add_argument("lam")

    for name, helptext in [
        ("check", "verify YX - XY = h(X)"),
        ("lattice", "all submodules (small finite fields)"),
        ("irreducible", "irreducibility verdict"),
        ("indecomposable", "indecomposability verdict"),
        ("uniserial", "uniseriality verdict"),
        ("weights", "generalized weight spaces"),
        ("dann", "minimal polynomial of X"),
    ]:
        q = msub.add_parser(name, help=helptext)
        q.add_argument("file", help="module JSON file, or - for stdin")
    q = msub.add_parser("ann", help="annihilator inside a degree window")
    q.add_argument("file")
    q.add_argument("dx", type=int)
    q.add_argument("dy", type=int)
    return ap


def _read_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read JSON from {path}: {e}") from None


def _module_text(M: FinModule) -> str:
    lines = [f"dim {M.dim}", "X:", str(M.X), "Y:", str(M.Y)]
    lines.append("provenance: " + json.dumps(M.provenance, sort_keys=True))
    return "\n".join(lines)


def _verdict_text(v, F) -> str:
    from .serialization import witness_to_json

    out = f"{v.value.value} ({v.method})"
    w = witness_to_json(F, v.witness)
    if w is not None:
        out += f" witness={json.dumps(w)}"
    return out


def _g_from_text(ctx: AhContext, text: str) -> list[Poly]:
    g = ctx.parse(text)
    n = g.y_degree
    if n < 1 or g.coeff(n) != Poly.const(ctx.field, 1):
        raise ParseError("the y-polynomial must be monic of positive degree in y")
    return [-g.coeff(j) for j in range(n)]


def run(args, out) -> int:
    F = field_from_spec(args.field)
    ctx = AhContext(F, Poly.parse(F, args.h))
    cmd = args.command

    def emit(text, obj):
        out.write((dumps(obj) if args.json else text) + "\n")

    if cmd in ("mul", "commutator"):
        a, b = ctx.parse(args.a), ctx.parse(args.b)
        r = a * b if cmd == "mul" else commutator(a, b)
        emit(str(r), element_to_json(r))
    elif cmd == "ctable":
        rows = coeff_rows(args.k)
        text = []
        for t in rows:
            s = t.total()
            mark = "=" if s == math.factorial(t.k - 1) else "!="
            text.append(f"k={t.k}: {t.row_text()} sum={s}{mark}{t.k - 1}!")
        emit("\n".join(text), {"schema": SCHEMA, "rows": [table_to_json(t) for t in rows]})
    elif cmd == "delta":
        r = Poly.parse(F, args.r)
        val = ctx.delta_apply(r, args.k)
        obj = {"schema": SCHEMA, "h": str(ctx.h), "field": F.spec(), "r": str(r), "k": args.k, "value": str(val)}
        text = str(val)
        if args.expand:
            if r != Poly.x(F):
                raise ParseError("--expand applies to r = x only")
            exp = expand_delta_x(args.k, ctx)
            obj["expanded"] = str(exp)
            obj["agree"] = exp == val
            text += f"\nexpanded: {exp} ({'agree' if exp == val else 'DISAGREE'})"
        emit(text, obj)
    elif cmd == "zp":
        z = ctx.make_z_p()
        c = ctx.delta_p_x_over_h()
        emit(f"z_p = {z}\ndelta^p(x)/h = {c}", {"schema": SCHEMA, "z_p": element_to_json(z), "delta_p_x_over_h": str(c)})
    elif cmd == "center":
        basis = ctx.centralizer_bounded(args.dx, args.dy)
        emit("\n".join(str(e) for e in basis), {"schema": SCHEMA, "basis": [element_to_json(e) for e in basis]})
    elif cmd == "embed":
        a = ctx.parse(args.a)
        r = embed_weyl(a)
        emit(str(r), element_to_json(r))
    elif cmd == "normal":
        res = is_normal_bounded(ctx.parse(args.b), args.dx, args.dy)
        emit(str(res).lower(), {"schema": SCHEMA, "normal": res})
    elif cmd == "classify":
        c = classify_char_p(ctx, F.parse(args.lam), F.parse(args.beta))
        text = [f"case ({c.case})"]
        if c.roots:
            text.append("roots: " + ", ".join(str(t) for t in c.roots))
        text.extend(_module_text(M) for M in c.modules)
        emit(
            "\n".join(text),
            {
                "schema": SCHEMA,
                "case": c.case,
                "roots": [str(t) for t in c.roots],
                "modules": [module_to_json(M) for M in c.modules],
            },
        )
    elif cmd == "module":
        return _run_module(args, ctx, emit)
    return 0


def _run_module(args, ctx, emit) -> int:
    F = ctx.field
    act = args.action
    if act == "build":
        kind = args.kind
        if kind == "one-dim":
            M = one_dim(ctx, F.parse(args.lam), F.parse(args.mu))
        elif kind == "n-module":
            M = n_module(ctx, F.parse(args.lam), Poly.parse(F, args.q), args.n)
        elif kind == "l-factor":
            M = l_module_factor(ctx, Poly.parse(F, args.f), _g_from_text(ctx, args.g))
        elif kind == "l-z-beta":
            M = l_z_beta(ctx, F.parse(args.lam), F.parse(args.beta))
        elif kind == "weyl-restrict":
            d = _read_json(args.file)
            M = weyl_restrict(matrix_from_json(F, d["X"]), matrix_from_json(F, d["Y"]), ctx)
        else:
            X, Y = truncated_weyl_module(F, F.parse(args.lam))
            M = weyl_restrict(X, Y, ctx)
        # modules are data: always JSON so they can be piped into the analyses
        emit(dumps(module_to_json(M)), module_to_json(M))
        return 0
    d = _read_json(args.file)
    if act == "check":
        from .serialization import context_from_json

        mctx = context_from_json(d)
        M = FinModule(mctx, matrix_from_json(mctx.field, d["X"]), matrix_from_json(mctx.field, d["Y"]))
        ok = verify_relation(M)
        emit(str(ok).lower(), {"schema": SCHEMA, "relation": ok})
        return 0
    M = module_from_json(d)
    MF = M.field
    if act == "lattice":
        L = submodule_lattice(M)
        text = [f"{len(L)} submodules, chain: {str(L.is_chain).lower()}"]
        text.extend(json.dumps(subspace_to_json(S)) for S in L.subspaces)
        emit("\n".join(text), lattice_to_json(L))
    elif act in ("irreducible", "indecomposable", "uniserial"):
        if act == "irreducible":
            v = is_irreducible(M, seed=args.seed)
        elif act == "indecomposable":
            v = is_indecomposable(M)
        else:
            v = is_uniserial(M)
        emit(_verdict_text(v, MF), verdict_to_json(v, MF))
    elif act == "weights":
        W = weight_decomposition(M)
        text, obj = [], []
        for f, ws in W.items():
            text.append(
                f"{f}: generalized dim {ws.generalized.dim}, weight dim {ws.weight.dim}, "
                f"weight space: {str(ws.is_weight_space).lower()}"
            )
            obj.append(
                {
                    "prime": str(f),
                    "generalized": subspace_to_json(ws.generalized),
                    "weight": subspace_to_json(ws.weight),
                    "is_weight_space": ws.is_weight_space,
                }
            )
        emit("\n".join(text), {"schema": SCHEMA, "spaces": obj})
    elif act == "dann":
        r = d_annihilator(M)
        emit(str(r), {"schema": SCHEMA, "d_annihilator": str(r)})
    elif act == "ann":
        basis = ann_bounded(M, args.dx, args.dy)
        emit("\n".join(str(e) for e in basis), {"schema": SCHEMA, "basis": [element_to_json(e) for e in basis]})
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return run(args, sys.stdout)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AhlibError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
