"""Unified command line: reductions, lifts, solving, verification, reproduction.

Exit codes: 0 for YES/success, 1 for NO/unsat/unrealizable, 2 for usage or
input errors. With --json a single JSON object goes to stdout (byte-stable
for a fixed configuration and seed); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import reproduce as rep
from .ambiguous import ambiguate_3sat, ambiguous_pipeline, desugar_4sat
from .approx import classify_eps_delta, cycle_approx_decide, round_approximate, verify_approx
from .cnf import CnfFormula, assignment_bits, enumerate_models, format_dimacs, parse_dimacs
from .formats import format_graph, format_realization, parse_graph, parse_realization
from .gadgets import (
    build_rbar,
    clique_gadget,
    expand_weights,
    lift_clique,
    lift_rbar,
    lift_to_plane,
    r_gadget,
    t_gadget,
)
from .graphs import verify_realization
from .realize import bp_enumerate, bp_solve, decide_ambiguous
from .reduce_sat import PartitionInstance, compile_3sat, reduce_partition

GADGET_KINDS = ("T3", "T4", "T5", "T8", "R1", "R2", "clique", "rbar1", "rbar2")


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit(args, payload: dict, human_lines):
    if args.json:
        payload = {"command": args.command, "seed": args.seed, **payload}
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        for line in human_lines:
            sys.stdout.write(line + "\n")


def format_certificate(assignment: dict) -> str:
    return "".join(f"v{j} {1 if assignment[j] else 0}\n" for j in sorted(assignment))


def parse_certificate(text: str) -> dict:
    values = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        var, bit = line.split()
        if not var.startswith("v"):
            raise ValueError(f"bad certificate line {raw!r}")
        values[int(var[1:])] = bit == "1"
    return values


def _cmd_parse(args) -> int:
    if args.dimacs or args.path.endswith(".cnf"):
        f = parse_dimacs(_read(args.dimacs or args.path))
        _emit(args, {"kind": "cnf", "variables": f.variable_count,
                     "clauses": f.clause_count, "width": f.width},
              [f"cnf: {f.variable_count} variables, {f.clause_count} clauses, width {f.width}"])
    else:
        g = parse_graph(_read(args.path))
        _emit(args, {"kind": "graph", "vertices": g.vertex_count, "edges": g.edge_count,
                     "anchors": len(g.anchors), "dimension": g.dimension},
              [f"graph: {g.vertex_count} vertices, {g.edge_count} edges, "
               f"{len(g.anchors)} anchors, dimension {g.dimension}"])
    return 0


def _cmd_reduce(args) -> int:
    if args.target == "sat":
        f = parse_dimacs(_read(args.dimacs))
        compiled, witness = compile_3sat(f)
        _write(args.out, format_graph(compiled.graph))
        lines = [f"wrote {args.out}: {compiled.graph.vertex_count} vertices, "
                 f"{compiled.graph.edge_count} edges"]
        payload = {"vertices": compiled.graph.vertex_count, "edges": compiled.graph.edge_count,
                   "out": args.out}
        if args.witness:
            models, truncated = enumerate_models(f, cap=args.cap)
            table = {
                assignment_bits(m, f.variable_count): format_realization(witness.forward(m))
                for m in models
            }
            _write(args.witness, json.dumps(
                {"kind": "3sat", "variables": f.variable_count,
                 "assignments": table, "truncated": truncated},
                sort_keys=True, indent=1))
            lines.append(f"wrote witness map with {len(table)} assignments to {args.witness}")
            payload["witness_assignments"] = len(table)
        _emit(args, payload, lines)
        return 0
    values = tuple(int(v) for v in args.values.split(","))
    graph, _ = reduce_partition(PartitionInstance(values))
    _write(args.out, format_graph(graph))
    _emit(args, {"vertices": graph.vertex_count, "edges": graph.edge_count, "out": args.out},
          [f"wrote {args.out}: path on {graph.vertex_count} vertices, ends anchored at 0"])
    return 0


def _cmd_expand_weights(args) -> int:
    g = parse_graph(_read(args.infile))
    expanded = expand_weights(g)
    _write(args.outfile, format_graph(expanded))
    _emit(args, {"vertices": expanded.vertex_count, "edges": expanded.edge_count, "out": args.outfile},
          [f"wrote {args.outfile}: {expanded.vertex_count} vertices, {expanded.edge_count} edges"])
    return 0


def _cmd_lift(args) -> int:
    g = parse_graph(_read(args.infile))
    if args.gadget == "plane":
        lifted = lift_to_plane(g)
    elif args.gadget == "clique":
        lifted = lift_clique(g, args.dim, all_edges=args.all_edges)
    else:
        lifted = lift_rbar(g, args.dim)
    _write(args.outfile, format_graph(lifted))
    _emit(args, {"vertices": lifted.vertex_count, "edges": lifted.edge_count,
                 "dimension": lifted.dimension, "out": args.outfile},
          [f"wrote {args.outfile}: {lifted.vertex_count} vertices, "
           f"{lifted.edge_count} edges, dimension {lifted.dimension}"])
    return 0


def _cmd_gadget(args) -> int:
    kind = args.kind
    if kind.startswith("T"):
        template = t_gadget(int(kind[1:]))
    elif kind in ("R1", "R2"):
        template = r_gadget(int(kind[1]))
    elif kind == "clique":
        template = clique_gadget(args.dim, Fraction(args.weight))
    else:
        template = build_rbar(args.dim, int(kind[-1]))
    text = format_graph(template.graph)
    if args.out:
        _write(args.out, text)
    lines = [] if args.json else [text.rstrip("\n")]
    _emit(args, {"kind": kind, "graph": text, "terminals": list(template.terminals)}, lines)
    return 0


def _cmd_solve(args) -> int:
    g = parse_graph(_read(args.path))
    if args.enumerate:
        report = bp_enumerate(g, cap=args.cap)
    else:
        report = bp_solve(g)
    texts = [format_realization(x) for x in report.realizations]
    if args.out and texts:
        _write(args.out, texts[0])
    lines = [f"{report.status} ({len(report.realizations)} realization(s), "
             f"{report.nodes_explored} nodes{', truncated' if report.truncated else ''})"]
    lines += [t.rstrip("\n") for t in texts[: (None if args.enumerate else 1) and len(texts)]]
    _emit(args, {"status": report.status, "count": len(report.realizations),
                 "nodes_explored": report.nodes_explored, "truncated": report.truncated,
                 "realizations": texts}, lines)
    return 0 if report.realizable else 1


def _cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    x = parse_realization(_read(args.realization))
    report = verify_realization(g, x, Fraction(args.tolerance))
    bad = [f"edge ({v.u},{v.v}) weight {v.weight} deviates by {v.deviation}" for v in report.violations]
    bad += [f"anchor mismatch at vertex {v}" for v in report.anchor_violations]
    _emit(args, {"ok": report.ok, "violations": bad}, ["OK" if report.ok else "FAIL"] + bad)
    return 0 if report.ok else 1


def _cmd_verify_approx(args) -> int:
    g = parse_graph(_read(args.graph))
    y = parse_realization(_read(args.realization))
    ok, achieved = verify_approx(g, y, Fraction(args.eps))
    _emit(args, {"ok": ok, "epsilon_achieved": str(achieved)},
          [f"{'OK' if ok else 'FAIL'} epsilon_achieved={achieved}"])
    return 0 if ok else 1


def _cmd_round(args) -> int:
    g = parse_graph(_read(args.graph))
    y = parse_realization(_read(args.realization))
    result = round_approximate(g, y)
    if args.out:
        _write(args.out, format_realization(result.realization))
    resets = [f"{u}->{v}" for u, v in result.integer_resets]
    _emit(args, {"verified": result.verified, "integer_resets": resets,
                 "realization": format_realization(result.realization)},
          [f"{'VERIFIED' if result.verified else 'NOT VERIFIED'}"
           + (f", integer resets at {', '.join(resets)}" if resets else "")])
    return 0 if result.verified else 1


def _cmd_cycle_decide(args) -> int:
    weights = tuple(int(w) for w in args.weights.split(","))
    delta = Fraction(args.delta)
    if args.eps is not None:
        status = classify_eps_delta(weights, Fraction(args.eps), delta)
        decision = cycle_approx_decide(weights, delta)
        payload = {"status": status,
                   "least_tolerance": str(Fraction(decision.analysis.min_closure_gap,
                                                   decision.analysis.total_length))}
        _emit(args, payload, [status])
        return 0 if status in ("YES", "INDETERMINATE") else 1
    decision = cycle_approx_decide(weights, delta)
    payload = {"status": "YES" if decision.realizable else "NO",
               "min_closure_gap": decision.analysis.min_closure_gap,
               "cycle_length": decision.analysis.total_length}
    lines = ["YES" if decision.realizable else "NO"]
    if decision.realizable:
        payload["positions"] = [str(p) for p in decision.positions]
        payload["lengths"] = [str(l) for l in decision.lengths]
        lines.append("positions: " + " ".join(str(p) for p in decision.positions))
    _emit(args, payload, lines)
    return 0 if decision.realizable else 1


def _cmd_ambiguous(args) -> int:
    g = parse_graph(_read(args.graph))
    x = parse_realization(_read(args.realization))
    ambiguous, witness = decide_ambiguous(g, x, cap=args.cap or 200000)
    if ambiguous and args.out:
        _write(args.out, format_realization(witness))
    payload = {"ambiguous": ambiguous}
    lines = ["YES" if ambiguous else "NO"]
    if ambiguous:
        payload["witness"] = format_realization(witness)
        lines.append(format_realization(witness).rstrip("\n"))
    _emit(args, payload, lines)
    return 0 if ambiguous else 1


def _cmd_ambiguate(args) -> int:
    phi = parse_dimacs(_read(args.path))
    instance = ambiguate_3sat(phi)
    _write(args.out, format_dimacs(instance.formula))
    lines = [f"wrote {args.out}: {instance.formula.clause_count} clauses over "
             f"{instance.formula.variable_count} variables"]
    if args.cert:
        _write(args.cert, format_certificate(instance.designated))
        lines.append(f"wrote designated certificate to {args.cert}")
    _emit(args, {"variables": instance.formula.variable_count,
                 "clauses": instance.formula.clause_count, "out": args.out}, lines)
    return 0


def _cmd_desugar(args) -> int:
    psi = parse_dimacs(_read(args.path))
    transformed, _ = desugar_4sat(psi)
    _write(args.out, format_dimacs(transformed))
    _emit(args, {"variables": transformed.variable_count,
                 "clauses": transformed.clause_count, "out": args.out},
          [f"wrote {args.out}: {transformed.clause_count} clauses over "
           f"{transformed.variable_count} variables"])
    return 0


def _cmd_pipeline(args) -> int:
    phi = parse_dimacs(_read(args.path))
    pipe = ambiguous_pipeline(phi)
    _write(args.out, format_graph(pipe.compiled.graph))
    _write(args.cert, format_realization(pipe.designated))
    _emit(args, {"vertices": pipe.compiled.graph.vertex_count,
                 "edges": pipe.compiled.graph.edge_count,
                 "out": args.out, "cert": args.cert},
          [f"wrote {args.out} ({pipe.compiled.graph.vertex_count} vertices) and {args.cert}"])
    return 0


def _cmd_reproduce(args) -> int:
    overrides = {"trials": args.trials, "max_vars": args.n, "max_clauses": args.m,
                 "samples": args.trials}
    if args.suite == "all":
        rows = rep.run_suite("all", seed=args.seed, jobs=args.jobs)
    else:
        fn = rep.SUITES.get(args.suite)
        if fn is None:
            raise ValueError(f"unknown suite {args.suite!r}")
        import inspect

        accepted = set(inspect.signature(fn).parameters)
        kwargs = {k: v for k, v in overrides.items() if v is not None and k in accepted}
        rows = [(args.suite, check) for check in fn(args.seed, jobs=args.jobs, **kwargs)]
    failed = sum(1 for _, check in rows if not check.passed)
    lines = []
    for suite, check in rows:
        status = "PASS" if check.passed else "FAIL"
        extra = " ".join(part for part in (check.detail, check.volatile) if part)
        lines.append(f"[{status}] {suite}: {check.name}" + (f" ({extra})" if extra else ""))
    lines.append(f"{len(rows) - failed}/{len(rows)} checks passed")
    payload = {"suite": args.suite,
               "checks": [{"suite": suite, "name": check.name, "passed": check.passed,
                           "detail": check.detail} for suite, check in rows],
               "passed": len(rows) - failed, "failed": failed}
    _emit(args, payload, lines)
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgp", description=__doc__)
    parser.add_argument("--json", action="store_true", help="single JSON object on stdout")
    parser.add_argument("--seed", type=int, default=rep.DEFAULT_SEED)
    parser.add_argument("--jobs", type=int, default=1, help="parallel trials in property suites")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate and summarize a graph or DIMACS file")
    p.add_argument("path", nargs="?", default="")
    p.add_argument("--dimacs")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("reduce", help="compile a source problem to a line instance")
    target = p.add_subparsers(dest="target", required=True)
    s = target.add_parser("sat")
    s.add_argument("--dimacs", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--witness")
    s.add_argument("--cap", type=int, default=64)
    p.set_defaults(fn=_cmd_reduce)
    s = target.add_parser("partition")
    s.add_argument("--values", required=True)
    s.add_argument("--out", required=True)

    p = sub.add_parser("expand-weights", help="replace weights 3/4/5/8 by segment gadgets")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.set_defaults(fn=_cmd_expand_weights)

    p = sub.add_parser("lift", help="lift a weight-{1,2} instance to higher dimension")
    p.add_argument("--gadget", choices=("plane", "clique", "rbar"), required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--all-edges", action="store_true")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("gadget", help="emit a gadget template in graph format")
    emit = p.add_subparsers(dest="action", required=True)
    e = emit.add_parser("emit")
    e.add_argument("--kind", choices=GADGET_KINDS, required=True)
    e.add_argument("--dim", type=int, default=2)
    e.add_argument("--weight", default="1")
    e.add_argument("--out")
    p.set_defaults(fn=_cmd_gadget)

    p = sub.add_parser("solve", help="branch-and-prune realization search")
    p.add_argument("path")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--cap", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("enumerate", help="enumerate realizations modulo congruence")
    p.add_argument("path")
    p.add_argument("--cap", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_solve, enumerate=True)

    p = sub.add_parser("verify", help="exact or toleranced realization check")
    p.add_argument("graph")
    p.add_argument("realization")
    p.add_argument("--tolerance", default="0")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("verify-approx", help="multiplicative band check")
    p.add_argument("graph")
    p.add_argument("realization")
    p.add_argument("--eps", required=True)
    p.set_defaults(fn=_cmd_verify_approx)

    p = sub.add_parser("round", help="integer rounding of an approximate realization")
    p.add_argument("graph")
    p.add_argument("realization")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_round)

    p = sub.add_parser("cycle-decide", help="approximate realizability of an integer cycle")
    p.add_argument("--weights", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--eps")
    p.set_defaults(fn=_cmd_cycle_decide)

    p = sub.add_parser("ambiguous", help="is there a second, incongruent realization?")
    p.add_argument("graph")
    p.add_argument("realization")
    p.add_argument("--cap", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_ambiguous)

    p = sub.add_parser("ambiguate", help="guarded width-4 instance from a width-3 one")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.add_argument("--cert")
    p.set_defaults(fn=_cmd_ambiguate)

    p = sub.add_parser("desugar", help="width-4 to width-3 with forced fresh variables")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_desugar)

    p = sub.add_parser("pipeline", help="full ambiguity chain to graph plus certificate")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(fn=_cmd_pipeline)

    p = sub.add_parser("reproduce", help="run a named acceptance suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--trials", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(fn=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
