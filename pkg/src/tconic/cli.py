"""Command line front end.

    tconic hj expand 9/5
    tconic tchain check 2,5,2
    tconic lcb verify chain:4,1,2,2,2 --json
    tconic classify run --max-vertices 7 --max-weight 6 --index 2 --non-du-val

Exit status: 0 on success or a true verdict, 1 on a false verdict, 2 on bad
input. Graph arguments accept a file path, ``-`` for stdin, or a
``chain:``/``fork:`` shorthand. ``--json`` may go before or after the
subcommand.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable

from . import classify as cl
from . import discrepancy, graph, graphio, hj, lcb, tchain
from .errors import ClassificationGap, GraphParseError, NotATChain, TConicError

OK, FALSE, BAD_INPUT = 0, 1, 2


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _chain_arg(text: str) -> hj.Chain:
    return hj.parse_chain(text)


# -- hj ---------------------------------------------------------------------


def cmd_hj_expand(args) -> int:
    c = hj.hj_expand(hj.HJFraction.parse(args.fraction))
    _emit(args, hj.format_chain(c), {"chain": list(c)})
    return OK


def cmd_hj_eval(args) -> int:
    f = hj.hj_eval(_chain_arg(args.chain))
    _emit(args, str(f), {"n": f.n, "q": f.q})
    return OK


def cmd_hj_conjugate(args) -> int:
    f = hj.conjugate(hj.HJFraction.parse(args.fraction))
    _emit(args, str(f), {"n": f.n, "q": f.q})
    return OK


def cmd_hj_invariants(args) -> int:
    inv = hj.invariants(hj.HJFraction.parse(args.fraction))
    _emit(
        args,
        f"iota={inv.iota} beta={_frac(inv.beta)} gamma={inv.gamma}",
        {"iota": inv.iota, "beta": _frac(inv.beta), "gamma": inv.gamma},
    )
    return OK


# -- tchain -----------------------------------------------------------------


def cmd_tchain_check(args) -> int:
    c = _chain_arg(args.chain)
    f = hj.hj_eval(c)
    try:
        cert = tchain.certify(c)
    except NotATChain:
        if hj.is_du_val(f):
            reason = f"Du Val point {f} (all weights 2)"
        else:
            sq = (f.q + 1) ** 2
            reason = f"(q+1)^2 = {sq} ≢ 0 mod {f.n}"
        _emit(args, f"not a T-chain: {reason}", {"tChain": False, "fraction": str(f), "reason": reason})
        return FALSE
    _emit(
        args,
        f"T-chain {f}: seed {cert.seed_descriptor}, steps {cert.word or '-'}",
        {"tChain": True, "fraction": str(f), "seed": list(cert.seed), "word": cert.word},
    )
    return OK


def cmd_tchain_enum(args) -> int:
    chains = tchain.enumerate_tchains(args.max_len)
    _emit(args, "\n".join(hj.format_chain(c) for c in chains), [list(c) for c in chains])
    return OK


def cmd_tchain_step(args) -> int:
    c = tchain.STEPS[args.step](_chain_arg(args.chain))
    _emit(args, hj.format_chain(c), {"chain": list(c)})
    return OK


# -- graph ------------------------------------------------------------------


def _graph_out(args, g: graph.WeightedGraph) -> int:
    _emit(args, graphio.format_graph(g).rstrip("\n"), graphio.graph_to_json(g))
    return OK


def cmd_graph_classify(args) -> int:
    f = graph.classify_form(graphio.read_graph(args.graph))
    _emit(
        args,
        f"{f.tag} (negatives={f.negatives}, zeros={f.zeros}, positives={f.positives})",
        {"tag": f.tag, "negatives": f.negatives, "zeros": f.zeros, "positives": f.positives},
    )
    return OK


def cmd_graph_kernel(args) -> int:
    x = graph.kernel_vector(graphio.read_graph(args.graph))
    _emit(args, "\n".join(f"{v} {m}" for v, m in x.items()), {str(v): m for v, m in x.items()})
    return OK


def cmd_graph_discrepancies(args) -> int:
    d = discrepancy.solve_codiscrepancy(graphio.read_graph(args.graph))
    lines = [f"{v} d={_frac(x)} alpha={_frac(1 - x)}" for v, x in d.items()]
    _emit(args, "\n".join(lines), {str(v): {"d": _frac(x), "alpha": _frac(1 - x)} for v, x in d.items()})
    return OK


def cmd_graph_canonical(args) -> int:
    code = graph.canonical_form(graphio.read_graph(args.graph))
    _emit(args, code, {"canonical": code})
    return OK


def cmd_graph_blowup_vertex(args) -> int:
    return _graph_out(args, graph.blow_up_vertex(graphio.read_graph(args.graph), args.vertex))


def cmd_graph_blowup_edge(args) -> int:
    return _graph_out(args, graph.blow_up_edge(graphio.read_graph(args.graph), args.u, args.v))


def cmd_graph_contract(args) -> int:
    return _graph_out(args, graph.contract_black(graphio.read_graph(args.graph), args.vertex))


# -- lcb --------------------------------------------------------------------


def _summary(a: lcb.FiberAnalysis) -> list[str]:
    lines = [f"T-conic bundle: {'yes' if a.t_conic_bundle else 'no'}"]
    lines += [f"  {k}: {'ok' if v else 'FAIL'}" for k, v in a.checks.items()]
    lines.append(f"form: {a.form.tag}")
    if a.multiplicities is not None:
        lines.append("multiplicities: " + ",".join(str(a.multiplicities[v]) for v in a.graph.vertices))
    if a.sum_l is not None:
        lines.append(f"sum of black multiplicities: {a.sum_l}")
    for v, x in a.delta_dot_l.items():
        lines.append(f"Delta.L at {v}: {_frac(x)}")
    if a.index is not None:
        lines.append(f"index: {a.index}")
    lines.append("singular points: " + ("; ".join(hj.format_chain(c) for c in a.singular_chains) or "none"))
    if a.t_conic_bundle:
        label = lcb.family_match(a)
        box = f" (box {hj.format_chain(label.box)})" if label.box else ""
        lines.append(f"family: {label.tag}{box}")
    return lines


def cmd_lcb_verify(args) -> int:
    a = lcb.analyze(graphio.read_graph(args.graph))
    _emit(args, "\n".join(_summary(a)), a.to_json())
    return OK if a.t_conic_bundle else FALSE


def cmd_lcb_family(args) -> int:
    label = lcb.family_match(lcb.analyze(graphio.read_graph(args.graph)))
    box = list(label.box) if label.box else None
    text = label.tag + (f" box {hj.format_chain(label.box)}" if label.box else "")
    _emit(args, text, {"family": label.tag, "boxChain": box})
    return FALSE if label.tag == lcb.UNCLASSIFIED else OK


def cmd_lcb_construct(args) -> int:
    b = lcb.construction_step(lcb.analyze(graphio.read_graph(args.graph)), args.black, args.end)
    text = graphio.format_graph(b.graph) + "\n".join(_summary(b))
    _emit(args, text, {"graph": graphio.graph_to_json(b.graph), "analysis": b.to_json()})
    return OK


def cmd_lcb_line(args) -> int:
    par, cond = lcb.check_parabolic_line(_chain_arg(args.left), _chain_arg(args.right))
    _emit(args, f"parabolic={str(par).lower()} condition={str(cond).lower()}", {"parabolic": par, "condition": cond})
    return OK if par else FALSE


# -- classify ---------------------------------------------------------------


def _hit_json(h: cl.Hit) -> dict:
    a = h.analysis
    return {
        "canonical": h.code,
        "family": h.family.tag,
        "boxChain": list(h.family.box) if h.family.box else None,
        "index": a.index,
        "nonDuValCount": a.non_du_val_count,
        "singularChains": [list(c) for c in a.singular_chains],
        "multiplicities": [a.multiplicities[v] for v in a.graph.vertices],
        "checks": a.checks,
    }


def _hits_out(args, hits, header: str) -> None:
    if args.json:
        for h in hits:
            print(json.dumps(_hit_json(h), sort_keys=True))
        return
    print(header)
    print(f"{'vertices':>8}  {'index':>5}  {'non-DV':>6}  {'family':<12}  canonical")
    for h in hits:
        a = h.analysis
        print(f"{len(h.graph):>8}  {a.index:>5}  {a.non_du_val_count:>6}  {h.family.tag:<12}  {h.code}")
    print(f"{len(hits)} graphs")


def cmd_classify_run(args) -> int:
    b = cl.SearchBounds(
        args.max_vertices,
        args.max_weight,
        index_filter=args.index,
        require_irreducible_fiber=args.irreducible,
        require_non_du_val=args.non_du_val,
    )
    hits = cl.enumerate_fibers(b)
    _hits_out(args, hits, f"bounds: max vertices {b.max_vertices}, max weight {b.max_weight}")
    return OK


def cmd_classify_index2(args) -> int:
    try:
        report = cl.classify_index2(args.max_vertices, args.max_weight)
    except ClassificationGap as gap:
        print(f"classification gap: {gap}", file=sys.stderr)
        for g in gap.witnesses:
            print(graph.canonical_form(g))
        return FALSE
    if args.json:
        print(json.dumps({"maxVertices": report.max_vertices, "maxWeight": report.max_weight, "counts": report.counts}, sort_keys=True))
    else:
        print(f"index two, max vertices {report.max_vertices}, max weight {report.max_weight}")
        for tag, n in report.counts.items():
            print(f"  {tag:<6} {n}")
    return OK


def cmd_classify_scan(args) -> int:
    r = cl.scan_multi_singular(args.max_vertices, args.max_weight)
    if args.json:
        print(json.dumps({"byCount": {str(k): v for k, v in r.by_count.items()}, "examplesPresent": r.examples_present}, sort_keys=True))
    else:
        print(f"max vertices {r.max_vertices}, max weight {r.max_weight}")
        for k, v in r.by_count.items():
            print(f"  {k} non-Du-Val points: {v} graphs")
        for name, ok in r.examples_present.items():
            print(f"  example with {name} points found: {'yes' if ok else 'no (out of bounds)'}")
    return OK


def cmd_classify_realize(args) -> int:
    r = cl.realize_tchain(_chain_arg(args.chain), args.max_steps)
    seed = hj.format_chain(r.seed)
    if args.json:
        print(json.dumps({"seed": list(r.seed), "word": r.word, "graph": graphio.graph_to_json(r.final.graph)}, sort_keys=True))
    else:
        print(f"seed {seed}, steps {r.word or '-'}")
        print(graphio.format_graph(r.final.graph), end="")
    return OK


# -- wiring -----------------------------------------------------------------

Handler = Callable[[argparse.Namespace], int]

# (subcommand path, library operation, handler)
COMMANDS: list[tuple[tuple[str, str], Callable, Handler]] = [
    (("hj", "expand"), hj.hj_expand, cmd_hj_expand),
    (("hj", "eval"), hj.hj_eval, cmd_hj_eval),
    (("hj", "conjugate"), hj.conjugate, cmd_hj_conjugate),
    (("hj", "invariants"), hj.invariants, cmd_hj_invariants),
    (("tchain", "check"), tchain.certify, cmd_tchain_check),
    (("tchain", "enum"), tchain.enumerate_tchains, cmd_tchain_enum),
    (("tchain", "step"), tchain.STEPS, cmd_tchain_step),
    (("graph", "classify"), graph.classify_form, cmd_graph_classify),
    (("graph", "kernel"), graph.kernel_vector, cmd_graph_kernel),
    (("graph", "discrepancies"), discrepancy.solve_codiscrepancy, cmd_graph_discrepancies),
    (("graph", "canonical"), graph.canonical_form, cmd_graph_canonical),
    (("graph", "blowup-vertex"), graph.blow_up_vertex, cmd_graph_blowup_vertex),
    (("graph", "blowup-edge"), graph.blow_up_edge, cmd_graph_blowup_edge),
    (("graph", "contract"), graph.contract_black, cmd_graph_contract),
    (("lcb", "verify"), lcb.analyze, cmd_lcb_verify),
    (("lcb", "family"), lcb.family_match, cmd_lcb_family),
    (("lcb", "construct"), lcb.construction_step, cmd_lcb_construct),
    (("lcb", "line"), lcb.check_parabolic_line, cmd_lcb_line),
    (("classify", "run"), cl.enumerate_fibers, cmd_classify_run),
    (("classify", "index2"), cl.classify_index2, cmd_classify_index2),
    (("classify", "scan"), cl.scan_multi_singular, cmd_classify_scan),
    (("classify", "realize"), cl.realize_tchain, cmd_classify_realize),
]


def _add_args(path: tuple[str, str], p: argparse.ArgumentParser) -> None:
    group, name = path
    graph_help = "graph file, '-' for stdin, or chain:/fork: shorthand"
    if group == "hj":
        if name == "eval":
            p.add_argument("chain", help="comma separated weights, e.g. 2,5")
        else:
            p.add_argument("fraction", help="n/q")
    elif group == "tchain":
        if name == "enum":
            p.add_argument("--max-len", type=int, required=True)
        else:
            if name == "step":
                p.add_argument("step", choices=sorted(tchain.STEPS))
            p.add_argument("chain")
    elif group in ("graph", "lcb") and name != "line":
        if name in ("blowup-vertex", "contract"):
            p.add_argument("vertex", type=int)
        elif name == "blowup-edge":
            p.add_argument("u", type=int)
            p.add_argument("v", type=int)
        elif name == "construct":
            p.add_argument("--black", type=int, required=True, help="black leaf next to the chain")
            p.add_argument("--end", type=int, required=True, help="opposite end of the chain")
        p.add_argument("graph", help=graph_help)
    elif name == "line":
        p.add_argument("left")
        p.add_argument("right")
    elif name == "realize":
        p.add_argument("chain")
        p.add_argument("--max-steps", type=int, default=64)
    else:
        p.add_argument("--max-vertices", type=int, required=True)
        p.add_argument("--max-weight", type=int, default=6 if name == "index2" else 5)
        if name == "run":
            p.add_argument("--index", type=int, default=None)
            p.add_argument("--irreducible", action="store_true", help="exactly one black vertex")
            p.add_argument("--non-du-val", action="store_true", help="at least one non-Du-Val point")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tconic", description="T-conic bundle fiber graph toolkit")
    parser.add_argument("--json", action="store_true", help="machine readable output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    groups = parser.add_subparsers(dest="group", required=True)
    subs: dict[str, argparse._SubParsersAction] = {}
    for path, _, handler in COMMANDS:
        group, name = path
        if group not in subs:
            subs[group] = groups.add_parser(group).add_subparsers(dest="command", required=True)
        p = subs[group].add_parser(name, parents=[common])
        _add_args(path, p)
        p.set_defaults(handler=handler)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.handler(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (TConicError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return BAD_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
