"""Command-line entry point: ``arcalg <subcommand> --m M --n N [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

from . import arc_algebra as aa
from . import presentation as pres
from . import rep_theory as rt
from .combinatorics import (Partition, Rect, enumerate_partitions, format_partition,
                            parse_partition, pkl, regular_partitions)
from .dyck import canonical_add_split, dyck_tiling, regularise

log = logging.getLogger("arcalg")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def threads() -> int:
    raw = os.environ.get("ARCALG_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"ARCALG_THREADS must be a positive integer, got {raw!r}")
    if k < 1:
        raise UsageError(f"ARCALG_THREADS must be a positive integer, got {raw!r}")
    return k


def _p(text: str, ctx: Rect) -> Partition:
    try:
        return parse_partition(text, ctx)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}")


def _name(lam: Partition) -> str:
    return format_partition(lam)


# emitters ----------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _dot_quiver(q: rt.ExtQuiver) -> str:
    lines = [f'digraph "ext_{q.ctx.m}_{q.ctx.n}_p{q.p}" {{']
    for v in q.vertices:
        lines.append(f'  "{_name(v)}";')
    for a in q.vertices:
        for b in q.vertices:
            for _ in range(q.mult.get((a, b), 0)):
                lines.append(f'  "{_name(a)}" -> "{_name(b)}";')
    lines.append("}")
    return "\n".join(lines)


def _dot_edges(name: str, verts: list[Partition], edges) -> str:
    lines = [f'digraph "{name}" {{']
    lines += [f'  "{_name(v)}";' for v in verts]
    lines += [f'  "{_name(a)}" -> "{_name(b)}";' for a, b in edges]
    lines.append("}")
    return "\n".join(lines)


def _tikz_partition(lam: Partition) -> str:
    """Russian-convention Young diagram inside its rectangle."""
    m, n = lam.ctx.m, lam.ctx.n
    out = ["\\begin{tikzpicture}[scale=0.4]",
           "  \\begin{scope}[rotate=45]",
           f"    \\draw[thin, gray] (0,0) grid ({m},{-n});"]
    for r, c in sorted(lam.cells):
        out.append(f"    \\draw[fill=gray!40] ({c - 1},{-(r - 1)}) rectangle ({c},{-r});")
    out += ["  \\end{scope}", "\\end{tikzpicture}"]
    return "\n".join(out)


def _tikz_cups(lam: Partition) -> str:
    w = lam.weight
    cd = lam.cups
    out = ["\\begin{tikzpicture}[scale=0.6]"]
    for j in range(1, lam.ctx.size + 1):
        sym = "\\wedge" if w[j] == "^" else "\\vee"
        out.append(f"  \\node at ({j},0) {{${sym}$}};")
    for p, q in cd.sorted_cups():
        out.append(f"  \\draw ({p},-0.2) to[out=-90,in=-90] ({q},-0.2);")
    for j in sorted(cd.sw_rays):
        out.append(f"  \\draw ({j},-0.2) -- ({j - 0.5},-1.2);")
    for j in sorted(cd.se_rays):
        out.append(f"  \\draw ({j},-0.2) -- ({j + 0.5},-1.2);")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


# subcommands ---------------------------------------------------------------

def cmd_enumerate(args, ctx):
    what = args.what
    if what == "basis":
        items = [d.encode() for d in aa.basis_H(ctx)]
    elif what == "basis-k":
        items = [d.encode() for d in aa.basis_K(ctx)]
    elif what == "regular":
        items = [_name(x) for x in regular_partitions(ctx)]
    else:
        items = [_name(x) for x in enumerate_partitions(ctx)]
    if args.format == "json":
        return _dump({"ctx": [ctx.m, ctx.n], "kind": what, "items": items})
    return "\n".join(items)


def cmd_cupdiagram(args, ctx):
    lam = _p(args.lam, ctx)
    cd = lam.cups
    if args.format == "tikz":
        return _tikz_cups(lam)
    data = {"partition": _name(lam), "weight": lam.weight.labels,
            "cups": [list(c) for c in cd.sorted_cups()],
            "sw_rays": sorted(cd.sw_rays), "se_rays": sorted(cd.se_rays),
            "defect": lam.defect}
    if args.format == "json":
        return _dump(data)
    return "\n".join([f"weight  {lam.weight}",
                      f"cups    {' '.join(f'({p},{q})' for p, q in cd.sorted_cups()) or '-'}",
                      f"rays    sw={sorted(cd.sw_rays)} se={sorted(cd.se_rays)}",
                      f"defect  {lam.defect}"])


def cmd_pkl(args, ctx):
    lam, mu = _p(args.lam, ctx), _p(args.mu, ctx)
    poly = pkl(lam, mu)
    if args.format == "json":
        return _dump({"lambda": _name(lam), "mu": _name(mu),
                      "coefficients": {str(e): c for e, c in sorted(poly.coeffs.items())}})
    return repr(poly)


def cmd_tiling(args, ctx):
    lam, mu = _p(args.lam, ctx), _p(args.mu, ctx)
    t = dyck_tiling(lam, mu)
    if t is None:
        raise UsageError(f"({_name(lam)}, {_name(mu)}) is not a Dyck pair")
    rows = [(str(P), h) for P, h in sorted(t.heights.items())]
    if args.format == "json":
        return _dump({"lambda": _name(lam), "mu": _name(mu), "degree": t.degree,
                      "paths": [{"path": [P.first, P.last], "height": h}
                                for P, h in sorted(t.heights.items())]})
    if args.format == "tikz":
        return _tikz_partition(mu)
    return "\n".join([f"degree {t.degree}"] + [f"{p}  height {h}" for p, h in rows])


def cmd_reg(args, ctx):
    alpha = _p(args.alpha, ctx)
    reg, paths = regularise(alpha)
    if args.format == "json":
        return _dump({"alpha": _name(alpha), "reg": _name(reg), "defect": alpha.defect,
                      "paths": [[P.first, P.last] for P in paths]})
    return "\n".join([f"reg     {_name(reg)}", f"defect  {alpha.defect}",
                      f"paths   {' '.join(map(str, paths)) or '-'}"])


def cmd_plan(args, ctx):
    alpha, mu = _p(args.alpha, ctx), _p(args.mu, ctx)
    try:
        plan = canonical_add_split(alpha, mu)
    except ValueError as exc:
        raise UsageError(str(exc))
    js = lambda d: {str(k): ([[P.first, P.last] for P in v] if isinstance(v, list) else [v.first, v.last])
                    for k, v in sorted(d.items())}
    if args.format == "json":
        return _dump({"alpha": _name(alpha), "mu": _name(mu), "reg": _name(plan.reg),
                      "adds_neg": js(plan.adds_neg), "splits": js(plan.splits),
                      "adds_pos": js(plan.adds_pos), "chain": [_name(x) for x in plan.chain]})
    return "\n".join([f"reg       {_name(plan.reg)}",
                      f"adds_neg  {plan.adds_neg}", f"splits    {plan.splits}",
                      f"adds_pos  {plan.adds_pos}",
                      "chain     " + " -> ".join(_name(x) for x in plan.chain)])


def cmd_multiply(args, ctx):
    try:
        x = aa.BasisDiagram.decode(args.x, ctx)
        y = aa.BasisDiagram.decode(args.y, ctx)
    except ValueError as exc:
        raise UsageError(str(exc))
    prod = aa.multiply_basis(x, y)
    if args.format == "json":
        return _dump({"x": x.encode(), "y": y.encode(),
                      "terms": [{"diagram": d.encode(), "coefficient": c} for d, c in prod.items()]})
    return repr(prod)


def cmd_extquiver(args, ctx):
    q = rt.ext_quiver(ctx, args.p)
    if args.format == "dot":
        return _dot_quiver(q)
    mult = [{"source": _name(a), "target": _name(b), "multiplicity": k}
            for a in q.vertices for b in q.vertices if (k := q.mult.get((a, b), 0))]
    if args.format == "json":
        return _dump({"ctx": [ctx.m, ctx.n], "p": args.p,
                      "vertices": [_name(v) for v in q.vertices], "multiplicities": mult})
    lines = [f"vertices {len(q.vertices)}", f"loops    {' '.join(_name(v) for v in q.loops()) or '-'}"]
    lines += [f"{_name(a)} -- {_name(b)}" for a, b in q.edges()]
    return "\n".join(lines)


def cmd_cellmod(args, ctx):
    lam = _p(args.lam, ctx)
    mod = rt.cell_module(lam, "specht" if args.specht else "standard")
    edges = rt.alperin_edges(lam, specht=args.specht)
    head = rt.simple_head(lam)
    if args.format == "dot":
        return _dot_edges(f"alperin_{_name(lam)}", mod.basis, edges)
    if args.format == "json":
        return _dump({"label": _name(lam), "variant": "specht" if args.specht else "standard",
                      "basis": [{"partition": _name(nu), "degree": mod.degrees[nu]} for nu in mod.basis],
                      "alperin_edges": [[_name(a), _name(b)] for a, b in edges],
                      "simple_head": {"partition": _name(head.label), "shift": head.shift}})
    lines = [f"{'S' if args.specht else 'Delta'}({_name(lam)})  graded dim {mod.graded_dim()}"]
    lines += [f"  {_name(nu)}  deg {mod.degrees[nu]}" for nu in mod.basis]
    lines.append(f"head  {_name(head.label)} shift {head.shift}")
    lines += [f"edge  {_name(a)} -> {_name(b)}" for a, b in edges]
    return "\n".join(lines)


def _verify_one(kind: str, m: int, n: int) -> dict:
    ctx = Rect(m, n)
    if kind == "relations":
        r = pres.verify_relations(ctx)
        return {"check": kind, "total": r.total, "counts": dict(sorted(r.counts.items())),
                "skipped": dict(sorted(r.skipped.items())),
                "failures": [f"{i.tag} {i.witness}" for i, _, _ in r.failed]}
    if kind == "lemmas":
        r = pres.verify_lemma_identities(ctx)
        return {"check": kind, "total": r.total, "counts": dict(sorted(r.counts.items())),
                "skipped": dict(sorted(r.skipped.items())),
                "failures": [f"{t} {w}" for t, w, _, _ in r.failed]}
    cert = pres.verify_isomorphism(ctx)
    out = {"check": kind}
    out.update(cert.to_json())
    return out


def cmd_verify(args, ctx):
    kinds = ["relations", "lemmas", "iso"] if args.what == "all" else [args.what]
    k = threads()
    if k > 1 and len(kinds) > 1:
        with ProcessPoolExecutor(max_workers=min(k, len(kinds))) as ex:
            results = list(ex.map(_verify_one, kinds, [ctx.m] * len(kinds), [ctx.n] * len(kinds)))
    else:
        results = []
        for kind in kinds:
            print(f"verifying {kind} in {ctx} ...", file=sys.stderr)
            results.append(_verify_one(kind, ctx.m, ctx.n))
    failed = any(r["failures"] for r in results)
    if args.format == "json":
        text = _dump({"ctx": [ctx.m, ctx.n], "ok": not failed, "results": results})
    else:
        lines = []
        for r in results:
            status = "FAIL" if r["failures"] else "ok"
            if r["check"] == "iso":
                lines.append(f"iso        {status}  dim H = {r['dim_H']}  snf = {sorted(set(r['snf_invariants']))}")
            else:
                lines.append(f"{r['check']:<10} {status}  {r['total']} instances")
            lines += [f"  failure: {f}" for f in r["failures"]]
        text = "\n".join(lines)
    return text, (EXIT_FAIL if failed else EXIT_OK)


def cmd_dims(args, ctx):
    dh, dk = aa.dim_H(ctx), aa.dim_K(ctx)
    if args.format == "json":
        return _dump({"ctx": [ctx.m, ctx.n], "dim_H": dh, "dim_K": dk})
    return f"dim H = {dh}\ndim K = {dk}"


COMMANDS: dict[str, Callable] = {
    "enumerate": cmd_enumerate, "cupdiagram": cmd_cupdiagram, "pkl": cmd_pkl,
    "tiling": cmd_tiling, "reg": cmd_reg, "plan": cmd_plan, "multiply": cmd_multiply,
    "extquiver": cmd_extquiver, "cellmod": cmd_cellmod, "verify": cmd_verify, "dims": cmd_dims,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--m", type=int, required=True)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--p", type=int, default=0, help="characteristic, 0 for the rationals")
    common.add_argument("--format", choices=["text", "json", "dot", "tikz"], default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="arcalg", description="Khovanov arc algebra computations")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    s = sub.add_parser("enumerate", parents=[common])
    s.add_argument("what", nargs="?", default="partitions",
                   choices=["partitions", "regular", "basis", "basis-k"])
    s = sub.add_parser("cupdiagram", parents=[common])
    s.add_argument("lam")
    for name, fields in (("pkl", ("lam", "mu")), ("tiling", ("lam", "mu")),
                         ("reg", ("alpha",)), ("plan", ("alpha", "mu")), ("multiply", ("x", "y"))):
        s = sub.add_parser(name, parents=[common])
        for f in fields:
            s.add_argument(f)
    sub.add_parser("extquiver", parents=[common])
    s = sub.add_parser("cellmod", parents=[common])
    s.add_argument("lam")
    s.add_argument("--specht", action="store_true")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("what", choices=["relations", "iso", "lemmas", "all"])
    sub.add_parser("dims", parents=[common])
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.p < 0 or (args.p > 1 and any(args.p % d == 0 for d in range(2, int(args.p ** 0.5) + 1))) \
                or args.p == 1:
            raise UsageError(f"--p must be 0 or a prime, got {args.p}")
        threads()
        try:
            ctx = Rect(args.m, args.n)
        except ValueError as exc:
            raise UsageError(str(exc))
        result = COMMANDS[args.command](args, ctx)
    except UsageError as exc:
        print(f"arcalg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
