"""Command-line front end.

Exit status: 0 success, 1 domain error (non-free input, rank mismatch, ...),
2 parse error, 3 when ``verify`` finds an instance violating the bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import graphrank, magnus, stallings, trees, voltage
from .dot import export_dot
from .graphrank import FiniteGraph
from .syntax import (
    SYNTAXES,
    ParseError,
    SubgroupSpec,
    format_word,
    infer_rank,
    load_subgroup,
    parse_word,
)
from .words import RankMismatch

SCHEMA_VERSION = 1


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        payload = {"schemaVersion": SCHEMA_VERSION, "command": args.command, **doc}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _subgroup(args, attr: str = "gens") -> SubgroupSpec:
    return load_subgroup(getattr(args, attr), args.rank, args.modulus, args.syntax)


def _pair(args) -> tuple[SubgroupSpec, SubgroupSpec]:
    a = load_subgroup(args.a, args.rank, args.modulus, args.syntax)
    b = load_subgroup(args.b, args.rank, args.modulus, args.syntax)
    k = args.rank or max(a.ambient_rank, b.ambient_rank)
    if a.ambient_rank != k:
        a = load_subgroup(args.a, k, args.modulus, args.syntax)
    if b.ambient_rank != k:
        b = load_subgroup(args.b, k, args.modulus, args.syntax)
    if a.ambient_rank != b.ambient_rank:
        raise RankMismatch(f"ambient ranks differ: {a.ambient_rank} vs {b.ambient_rank}")
    if a.n != b.n:
        raise RankMismatch(f"moduli differ: {a.modulus} vs {b.modulus}")
    return a, b


def _fold(spec: SubgroupSpec) -> voltage.VoltageGraph:
    return voltage.voltage_fold(spec.generators, spec.ambient_rank, spec.n)


def _elements(els, syntax) -> list[dict]:
    return [{"word": format_word(w, syntax), "residue": c} for w, c in els]


def cmd_rank(args) -> int:
    spec = _subgroup(args)
    v = _fold(spec)
    r = voltage.rank(v)
    doc = {"input": spec.to_json(args.syntax), "rank": r, "free": voltage.is_free(v)}
    text = str(r) if voltage.is_free(v) else f"{r} (projection; subgroup is not free)"
    _emit(args, doc, text)
    if args.dot:
        print(export_dot(v.underlying, voltages=v.voltages if spec.n > 1 else None), end="")
    return 0


def cmd_index(args) -> int:
    spec = _subgroup(args)
    g = _fold(spec).underlying
    idx = stallings.index_or_infinite(g)
    shown = "infinite" if idx == stallings.INFINITE else int(idx)
    _emit(args, {"input": spec.to_json(args.syntax), "index": shown}, str(shown))
    return 0


def cmd_member(args) -> int:
    spec = _subgroup(args)
    w = parse_word(args.word, spec.ambient_rank, args.syntax)
    v = _fold(spec)
    ok = voltage.membership(v, w, args.residue % spec.n)
    doc = {"input": spec.to_json(args.syntax), "word": format_word(w, args.syntax),
           "residue": args.residue % spec.n, "member": ok}
    _emit(args, doc, "true" if ok else "false")
    return 0


def cmd_intersect(args) -> int:
    sa, sb = _pair(args)
    va, vb = _fold(sa), _fold(sb)
    inter = voltage.voltage_fiber_product(va, vb)
    gens = voltage.basis(inter)
    doc = {
        "a": sa.to_json(args.syntax),
        "b": sb.to_json(args.syntax),
        "rank": voltage.rank(inter),
        "basis": _elements(gens, args.syntax),
        "vertices": inter.underlying.n_vertices,
        "edges": len(inter.underlying.edges),
    }
    shown = ", ".join(
        format_word(w, args.syntax) + (f":{c}" if sa.n > 1 else "") for w, c in gens
    )
    _emit(args, doc, f"rank {doc['rank']}\nbasis {shown or '(trivial)'}")
    if args.dot:
        print(export_dot(inter.underlying, voltages=inter.voltages if sa.n > 1 else None), end="")
    return 0


def _report_text(r: voltage.BoundReport) -> str:
    verdict = "EQUALITY" if r.equality else ("HOLDS" if r.holds else "VIOLATED")
    return (
        f"rank(A) = {r.rank_a}, rank(B) = {r.rank_b}, rank(A∩B) = {r.rank_intersection}, "
        f"|G:F| = {r.index}\n"
        f"lhs = {r.lhs}, rhs = {r.rhs_theorem1} (sixfold: {r.rhs_za14}, quadratic: {r.rhs_ass15})\n"
        f"{verdict}"
    )


def cmd_verify(args) -> int:
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise ParseError("verify needs both -a and -b, or neither")
        sa, sb = _pair(args)
        report = voltage.verify_bound(_fold(sa), _fold(sb))
        doc = {"a": sa.to_json(args.syntax), "b": sb.to_json(args.syntax), **report.as_dict()}
        _emit(args, doc, _report_text(report))
        return 0 if report.holds else 3
    k = args.rank or 2
    moduli = args.modulus_list or [max(args.modulus, 1)]
    instances = []
    for n in moduli:
        instances.extend(voltage.random_instances(args.count, n, seed=args.seed, k=k))
    violations = [i for i in instances if not i.report.holds]
    equalities = sum(i.report.equality for i in instances)
    doc = {
        "seed": args.seed,
        "count": args.count,
        "ambientRank": k,
        "moduli": moduli,
        "instances": len(instances),
        "equalities": equalities,
        "violations": [
            {
                "modulus": i.modulus,
                "a": _elements(i.gens_a, args.syntax),
                "b": _elements(i.gens_b, args.syntax),
                **i.report.as_dict(),
            }
            for i in violations
        ],
        "maxLhs": max((i.report.lhs for i in instances), default=0),
    }
    text = (
        f"{len(instances)} instances (moduli {moduli}, seed {args.seed}): "
        f"{len(violations)} violations, {equalities} equalities"
    )
    _emit(args, doc, text)
    return 3 if violations else 0


def cmd_extremal(args) -> int:
    a, b = voltage.extremal_family(args.k, args.l, args.n)
    doc = {
        "k": args.k,
        "l": args.l,
        "n": args.n,
        "a": _elements(voltage.basis(a), args.syntax),
        "b": _elements(voltage.basis(b), args.syntax),
        "rankA": voltage.rank(a),
        "rankB": voltage.rank(b),
    }
    text = f"rank(A) = {doc['rankA']}, rank(B) = {doc['rankB']}"
    if args.verify:
        report = voltage.verify_bound(a, b)
        doc.update(report.as_dict())
        text = _report_text(report)
    _emit(args, doc, text)
    return 0


def _finite_graph(args) -> FiniteGraph:
    if args.gens is not None:
        spec = _subgroup(args)
        return FiniteGraph.from_core_graph(_fold(spec).underlying)
    if args.edges is None:
        raise ParseError("give --edges or -g")
    edges = []
    for item in filter(None, (p.strip() for p in args.edges.split(","))):
        try:
            s, t = (int(x) for x in item.replace("-", ">").split(">"))
        except ValueError:
            raise ParseError(f"bad edge {item!r}; expected 'u>v'") from None
        edges.append((s, t))
    top = max((max(s, t) for s, t in edges), default=-1) + 1
    n = args.vertices if args.vertices is not None else max(top, 1)
    return FiniteGraph(n, tuple(edges))


def cmd_reduced_rank(args) -> int:
    g = _finite_graph(args)
    chis = graphrank.component_euler_characteristics(g)
    r = graphrank.reduced_rank(g)
    _emit(args, {"eulerCharacteristics": chis, "reducedRank": r}, str(r))
    return 0


def cmd_essential_set(args) -> int:
    g = _finite_graph(args)
    es = graphrank.max_essential_set(g)
    after = graphrank.reduced_rank(g.without(es))
    doc = {"edges": es, "reducedRank": graphrank.reduced_rank(g), "reducedRankAfter": after}
    _emit(args, doc, " ".join(f"e{e}" for e in es) or "(empty)")
    if args.dot:
        print(export_dot(g, removed=es), end="")
    return 0


def cmd_order(args) -> int:
    rank = args.rank or infer_rank([args.u, args.v], args.syntax)
    u = parse_word(args.u, rank, args.syntax)
    v = parse_word(args.v, rank, args.syntax)
    result = magnus.compare(u, v).name
    doc = {"u": format_word(u, args.syntax), "v": format_word(v, args.syntax), "result": result}
    _emit(args, doc, result)
    return 0


def cmd_ball(args) -> int:
    b = trees.build_ball(args.rank or 2, args.radius)
    if args.copies > 1:
        b = trees.induce(b, args.copies)
    doc = {"rank": b.rank, "radius": b.radius, "copies": b.copies,
           "vertices": len(b.vertices), "edges": len(b.edges)}
    _emit(args, doc, f"{len(b.vertices)} vertices, {len(b.edges)} edges")
    if args.dot:
        print(export_dot(b), end="")
    return 0


def cmd_certify(args) -> int:
    spec = _subgroup(args)
    b = trees.build_ball(spec.ambient_rank, args.radius)
    n = max(args.copies, spec.n)
    if n > 1:
        b = trees.induce(b, n)
    gens = [(w, c % n) for w, c in spec.generators]
    cert = trees.certify_order_essential(b, gens, args.depth)

    def show(e):
        return {"copy": e.copy, "anchor": format_word(e.anchor, args.syntax), "gen": e.gen,
                "rank": b.edge_rank[(e.anchor, e.gen)]}

    doc = {
        "input": spec.to_json(args.syntax),
        "radius": args.radius,
        "copies": b.copies,
        "depth": args.depth,
        "orbitCount": cert.orbit_count,
        "representatives": [show(e) for e in cert.representatives],
        "certifiedEdges": len(cert.certified),
        "subforestEdges": len(cert.subforest.edges),
        "truncated": cert.subforest.truncated,
    }
    lines = [f"{cert.orbit_count} certified orbits ({len(cert.certified)} edges, depth {args.depth})"]
    for e in cert.representatives:
        s = show(e)
        lines.append(f"  copy {s['copy']}: {s['anchor']}·e{s['gen']} (order rank {s['rank']})")
    _emit(args, doc, "\n".join(lines))
    if args.dot:
        print(export_dot(cert.subforest, certified=cert.certified), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--syntax", choices=SYNTAXES, default="compact")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    group = _Parser(add_help=False)
    group.add_argument("-k", "--rank", type=int, default=None, help="ambient free rank")
    group.add_argument("-n", "--modulus", type=int, default=0, help="order of the cyclic factor")

    p = _Parser(prog="freesub", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, parents, **kw):
        sp = sub.add_parser(name, parents=parents, **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("rank", cmd_rank, [common, group], help="rank of a subgroup")
    sp.add_argument("-g", "--gens", required=True)
    sp.add_argument("--dot", action="store_true")

    sp = add("index", cmd_index, [common, group], help="index in the free factor")
    sp.add_argument("-g", "--gens", required=True)

    sp = add("member", cmd_member, [common, group], help="subgroup membership")
    sp.add_argument("-g", "--gens", required=True)
    sp.add_argument("-w", "--word", required=True)
    sp.add_argument("-r", "--residue", type=int, default=0)

    sp = add("intersect", cmd_intersect, [common, group], help="intersection of two subgroups")
    sp.add_argument("-a", required=True)
    sp.add_argument("-b", required=True)
    sp.add_argument("--dot", action="store_true")

    sp = add("verify", cmd_verify, [common, group], help="check the intersection rank bound")
    sp.add_argument("-a", default=None)
    sp.add_argument("-b", default=None)
    sp.add_argument("--count", type=int, default=100, help="random pairs per modulus")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--moduli", dest="modulus_list", type=int, nargs="+", default=None)

    sp = add("extremal", cmd_extremal, [common], help="the family attaining the bound")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-l", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--verify", action="store_true")

    for name, func in (("reduced-rank", cmd_reduced_rank), ("essential-set", cmd_essential_set)):
        sp = add(name, func, [common, group], help="reduced rank / maximal essential edge set")
        sp.add_argument("--edges", help="edge list such as '0>1, 1>1'")
        sp.add_argument("--vertices", type=int, default=None)
        sp.add_argument("-g", "--gens", default=None, help="use the core graph of a subgroup")
        if name == "essential-set":
            sp.add_argument("--dot", action="store_true")

    sp = add("order", cmd_order, [common], help="compare two words in the Magnus order")
    sp.add_argument("-u", required=True)
    sp.add_argument("-v", required=True)
    sp.add_argument("-k", "--rank", type=int, default=None)

    sp = add("ball", cmd_ball, [common], help="ball of the Cayley tree")
    sp.add_argument("-k", "--rank", type=int, default=2)
    sp.add_argument("-R", "--radius", type=int, required=True)
    sp.add_argument("-n", "--copies", type=int, default=1)
    sp.add_argument("--dot", action="store_true")

    sp = add("certify", cmd_certify, [common, group], help="certify order-essential edges")
    sp.add_argument("-g", "--gens", required=True)
    sp.add_argument("-R", "--radius", type=int, default=5)
    sp.add_argument("-c", "--copies", type=int, default=1)
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--dot", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"freesub: parse error: {exc}", file=sys.stderr)
        return 2
    except (voltage.NotFreeError, voltage.TrivialSubgroupError, RankMismatch, DomainError) as exc:
        print(f"freesub: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"freesub: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
