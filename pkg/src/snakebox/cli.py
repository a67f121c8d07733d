"""Command line interface.

Exit codes: 0 success (and valid verifications), 1 invalid solution,
2 usage or validation error, 3 refused resource cap.

All JSON written through --out is byte-deterministic for fixed inputs and
flags; run metadata (including the only timestamp) goes to a sidecar
<out>.manifest.json instead.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .decode import decode, solution_report, verify_sequence
from .errors import CapExceededError, ValidationError
from .formulations import (KIND_CITB, KIND_INDUCED_SUBGRAPH,
                           KIND_LONGEST_CYCLE, KIND_LONGEST_PATH, KIND_MCIS,
                           KIND_SITB, PenaltyWeights, build_citb,
                           build_induced_subgraph, build_longest_induced_cycle,
                           build_longest_induced_path, build_mcis, build_sitb,
                           default_weights, instance_from_meta)
from .graphs import Graph, hypercube_graph
from .oracle import (DEFAULT_BUDGET, longest_induced_cycle,
                     longest_induced_path, max_common_induced_subgraph)
from .qubo import Qubo
from .solver import AnnealConfig, SolveResult, anneal, exact_solve
from .tables import MAX_TABLE_N, best_known

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_CAP = 3

ORACLE_GUARD_MAX_N = 6

PROBLEMS = {
    "sitb": KIND_SITB,
    "citb": KIND_CITB,
    "mcis": KIND_MCIS,
    "induced-subgraph": KIND_INDUCED_SUBGRAPH,
    "longest-path": KIND_LONGEST_PATH,
    "longest-cycle": KIND_LONGEST_CYCLE,
}

_WEIGHT_NAMES = ("alpha", "beta", "gamma", "delta", "epsilon")


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_json(path, obj):
    Path(path).write_text(_dumps(obj))


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ValidationError("no such file: %s" % path) from None
    except json.JSONDecodeError as exc:
        raise ValidationError("%s is not valid JSON: %s" % (path, exc)) from None


def _read_graph(path):
    return Graph.from_json_dict(_read_json(path))


def _write_manifest(out_path, command, parameters, inputs):
    manifest = {
        "command": command,
        "parameters": parameters,
        "inputs": [str(p) for p in inputs],
        "output": str(out_path),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "tool_version": __version__,
    }
    _write_json(str(out_path) + ".manifest.json", manifest)


def _collect_params(args, names):
    return {name: getattr(args, name) for name in names}


def _require(args, names, context):
    for name in names:
        if getattr(args, name) is None:
            raise ValidationError("--%s is required %s" % (name.replace("_", "-"), context))


def _merge_weights(kind, v2_size, args):
    base = default_weights(kind, v2_size).to_json_dict()
    for name in _WEIGHT_NAMES:
        value = getattr(args, name)
        if value is not None:
            base[name] = value
    return PenaltyWeights.from_json_dict(base)


def _cmd_build(args):
    kind = PROBLEMS[args.problem]
    inputs = []
    if kind in (KIND_SITB, KIND_CITB):
        _require(args, ["n"], "for %s" % args.problem)
        weights = _merge_weights(kind, 1 << args.n, args)
        if kind == KIND_SITB:
            qubo, inst = build_sitb(args.n, weights, force=args.force)
        else:
            qubo, inst = build_citb(args.n, weights, force=args.force)
    elif kind in (KIND_LONGEST_PATH, KIND_LONGEST_CYCLE):
        _require(args, ["graph"], "for %s" % args.problem)
        g = _read_graph(args.graph)
        inputs.append(args.graph)
        weights = _merge_weights(kind, g.num_vertices, args)
        if kind == KIND_LONGEST_PATH:
            qubo, inst = build_longest_induced_path(g, weights)
        else:
            qubo, inst = build_longest_induced_cycle(g, weights)
    else:
        _require(args, ["g1", "g2"], "for %s" % args.problem)
        g1 = _read_graph(args.g1)
        g2 = _read_graph(args.g2)
        inputs.extend([args.g1, args.g2])
        weights = _merge_weights(kind, g2.num_vertices, args)
        if kind == KIND_MCIS:
            qubo, inst = build_mcis(g1, g2, weights)
        else:
            qubo, inst = build_induced_subgraph(g1, g2, weights)

    _write_json(args.out, qubo.to_json_dict(meta=inst.meta()))
    params = _collect_params(args, ("problem", "n", "graph", "g1", "g2", "force",
                                    "defaults") + _WEIGHT_NAMES)
    _write_manifest(args.out, "build", params, inputs)
    shown = " ".join("%s=%d" % (k, v) for k, v in inst.weights.to_json_dict().items()
                     if v is not None)
    print("built %s: %d variables, %d terms, weights %s -> %s"
          % (args.problem, qubo.num_vars, qubo.num_terms, shown, args.out))
    return EXIT_OK


def _cmd_solve(args):
    q, _meta = Qubo.from_json_dict(_read_json(args.qubo))
    if args.exact:
        result = exact_solve(q, max_vars=args.max_vars)
        method = "exact"
    else:
        cfg = AnnealConfig(sweeps=args.sweeps, beta_hot=args.beta_hot,
                           beta_cold=args.beta_cold, restarts=args.restarts,
                           seed=args.seed)
        result = anneal(q, cfg)
        method = "anneal"
    _write_json(args.out, result.to_json_dict())
    params = _collect_params(args, ("qubo", "exact", "max_vars", "sweeps",
                                    "beta_hot", "beta_cold", "restarts", "seed"))
    _write_manifest(args.out, "solve", params, [args.qubo])
    print("%s best_energy=%s restart_of_best=%d -> %s"
          % (method, result.best_energy, result.restart_of_best, args.out))
    return EXIT_OK


def _cmd_verify(args):
    if args.sequence is not None:
        _require(args, ["kind", "n"], "with --sequence")
        labels = [part.strip() for part in args.sequence.split(",") if part.strip()]
        report = verify_sequence(args.kind, args.n, labels)
        inputs = []
    else:
        _require(args, ["result", "qubo"], "without --sequence")
        q, meta = Qubo.from_json_dict(_read_json(args.qubo))
        result = SolveResult.from_json_dict(_read_json(args.result))
        graph = _read_graph(args.graph) if args.graph else None
        g1 = _read_graph(args.g1) if args.g1 else None
        g2 = _read_graph(args.g2) if args.g2 else None
        inst = instance_from_meta(meta, graph=graph, g1=g1, g2=g2)
        recomputed = q.energy(result.bits)
        if recomputed != result.best_energy:
            raise ValidationError(
                "result claims best_energy=%r but the qubo gives %r"
                % (result.best_energy, recomputed))
        decoded = decode(inst, result.bits)
        if decoded.total_energy != recomputed:
            raise ValidationError(
                "term energies sum to %r, not the qubo energy %r; "
                "do the supplied graphs match the qubo?"
                % (decoded.total_energy, recomputed))
        report = solution_report(inst, decoded)
        inputs = [p for p in (args.result, args.qubo, args.graph, args.g1, args.g2) if p]

    sys.stdout.write(_dumps(report))
    if args.out:
        _write_json(args.out, report)
        params = _collect_params(args, ("kind", "n", "sequence", "result",
                                        "qubo", "graph", "g1", "g2"))
        _write_manifest(args.out, "verify", params, inputs)
    return EXIT_OK if report["valid"] else EXIT_INVALID


def _cmd_oracle(args):
    problem = args.problem
    if problem in ("sitb", "citb"):
        _require(args, ["n"], "for %s" % problem)
        if problem == "citb" and args.n < 2:
            raise ValidationError("citb needs n >= 2")
        if args.n > ORACLE_GUARD_MAX_N and not args.force:
            raise ValidationError(
                "oracle n=%d exceeds the desk-scale guard (n <= %d); "
                "pass --force to override" % (args.n, ORACLE_GUARD_MAX_N))
        g = hypercube_graph(args.n)
        search = longest_induced_path if problem == "sitb" else longest_induced_cycle
        res = search(g, budget=args.budget, assume_vertex_transitive=True)
        payload = {
            "problem": problem,
            "n": args.n,
            "length": res.best_length,
            "witness": [g.label_of(v) for v in res.witness],
            "nodes_expanded": res.nodes_expanded,
            "exact": res.exact,
        }
        inputs = []
    elif problem in ("longest-path", "longest-cycle"):
        _require(args, ["graph"], "for %s" % problem)
        g = _read_graph(args.graph)
        search = (longest_induced_path if problem == "longest-path"
                  else longest_induced_cycle)
        res = search(g, budget=args.budget)
        payload = {
            "problem": problem,
            "n": None,
            "length": res.best_length,
            "witness": [g.label_of(v) for v in res.witness],
            "nodes_expanded": res.nodes_expanded,
            "exact": res.exact,
        }
        inputs = [args.graph]
    elif problem == "mcis":
        _require(args, ["g1", "g2"], "for mcis")
        g1 = _read_graph(args.g1)
        g2 = _read_graph(args.g2)
        size, mapping = max_common_induced_subgraph(g1, g2, cap=args.cap)
        payload = {
            "problem": problem,
            "size": size,
            "mapping": [[u, i] for u, i in mapping],
            "exact": True,
        }
        inputs = [args.g1, args.g2]
    else:
        raise ValidationError("oracle does not support problem %r" % problem)

    sys.stdout.write(_dumps(payload))
    if args.out:
        _write_json(args.out, payload)
        params = _collect_params(args, ("problem", "n", "graph", "g1", "g2",
                                        "budget", "cap", "force"))
        _write_manifest(args.out, "oracle", params, inputs)
    return EXIT_OK


def _qubo_table_cell(problem, n, seed):
    """(length, method) for one qubo-mode table cell."""
    if problem == "citb" and n < 2:
        # Q_1 has no cycle and no cycle formulation; 0 by definition.
        return 0, "definition"
    builder = build_sitb if problem == "sitb" else build_citb
    q, inst = builder(n)
    if q.num_vars <= 30:
        result = exact_solve(q)
        method = "exact"
    else:
        result = anneal(q, AnnealConfig(seed=seed))
        method = "anneal"
    decoded = decode(inst, result.bits)
    if not decoded.valid:
        return -1, method
    return decoded.length, method


def _cmd_table(args):
    if args.max_n > MAX_TABLE_N:
        raise ValidationError("reference table stops at n=%d" % MAX_TABLE_N)
    if args.mode == "oracle" and args.max_n > ORACLE_GUARD_MAX_N and not args.force:
        raise ValidationError(
            "oracle table above n=%d needs --force" % ORACLE_GUARD_MAX_N)
    header = "%3s  %5s  %5s  %10s  %6s  %5s  %s" % (
        "n", "snake", "coil", "best-known", "proven", "agree", "method")
    print(header)
    all_agree = True
    for n in range(1, args.max_n + 1):
        ref_snake, ref_coil, proven = best_known(n)
        if args.mode == "oracle":
            g = hypercube_graph(n)
            snake = longest_induced_path(g, assume_vertex_transitive=True).best_length
            coil = (longest_induced_cycle(g, assume_vertex_transitive=True).best_length
                    if n >= 2 else 0)
            method = "oracle"
        else:
            snake, m1 = _qubo_table_cell("sitb", n, args.seed)
            coil, m2 = _qubo_table_cell("citb", n, args.seed)
            method = m1 if m1 == m2 else "%s/%s" % (m1, m2)
        agree = (snake == ref_snake) and (coil == ref_coil)
        all_agree = all_agree and agree
        print("%3d  %5d  %5d  %10s  %6s  %5s  %s" % (
            n, snake, coil, "%d/%d" % (ref_snake, ref_coil),
            "yes" if proven else "no", "yes" if agree else "NO", method))
    print("all rows agree" if all_agree else "MISMATCH against reference table")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="snakebox",
        description="Build, solve, and verify QUBO formulations for induced "
                    "path, cycle, and subgraph problems.")
    parser.add_argument("--version", action="version",
                        version="snakebox " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a QUBO and write it as JSON")
    b.add_argument("--problem", required=True, choices=sorted(PROBLEMS))
    b.add_argument("--n", type=int, help="hypercube dimension (sitb/citb)")
    b.add_argument("--graph", help="target graph JSON (longest-path/longest-cycle)")
    b.add_argument("--g1", help="pattern graph JSON (mcis/induced-subgraph)")
    b.add_argument("--g2", help="target graph JSON (mcis/induced-subgraph)")
    for name in _WEIGHT_NAMES:
        b.add_argument("--" + name, type=int, help="override the %s weight" % name)
    b.add_argument("--defaults", action="store_true",
                   help="use the derived default weights (also the default)")
    b.add_argument("--force", action="store_true",
                   help="override the desk-scale size guard")
    b.add_argument("--out", required=True, help="output QUBO JSON path")
    b.set_defaults(func=_cmd_build)

    s = sub.add_parser("solve", help="minimize a QUBO JSON file")
    s.add_argument("qubo", help="QUBO JSON path")
    s.add_argument("--exact", action="store_true",
                   help="exhaustive Gray-code enumeration instead of annealing")
    s.add_argument("--max-vars", type=int, default=30,
                   help="refusal cap for --exact (hard limit 30)")
    cfg = AnnealConfig()
    s.add_argument("--sweeps", type=int, default=cfg.sweeps)
    s.add_argument("--beta-hot", type=float, default=cfg.beta_hot)
    s.add_argument("--beta-cold", type=float, default=cfg.beta_cold)
    s.add_argument("--restarts", type=int, default=cfg.restarts)
    s.add_argument("--seed", type=int, default=cfg.seed)
    s.add_argument("--out", required=True, help="output result JSON path")
    s.set_defaults(func=_cmd_solve)

    v = sub.add_parser("verify", help="verify a sequence or a solve result")
    v.add_argument("--kind", choices=("snake", "coil"),
                   help="sequence mode: what to check the sequence as")
    v.add_argument("--n", type=int, help="sequence mode: hypercube dimension")
    v.add_argument("--sequence",
                   help="comma-separated n-bit vertex labels, path/cycle order")
    v.add_argument("--result", help="result mode: solve result JSON")
    v.add_argument("--qubo", help="result mode: the QUBO JSON it solved")
    v.add_argument("--graph", help="original target graph (generalized kinds)")
    v.add_argument("--g1", help="original pattern graph (mcis/induced-subgraph)")
    v.add_argument("--g2", help="original target graph (mcis/induced-subgraph)")
    v.add_argument("--out", help="also write the report JSON here")
    v.set_defaults(func=_cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive reference search")
    o.add_argument("--problem", required=True,
                   choices=("sitb", "citb", "longest-path", "longest-cycle", "mcis"))
    o.add_argument("--n", type=int, help="hypercube dimension (sitb/citb)")
    o.add_argument("--graph", help="target graph JSON (longest-path/longest-cycle)")
    o.add_argument("--g1", help="pattern graph JSON (mcis)")
    o.add_argument("--g2", help="target graph JSON (mcis)")
    o.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="node expansion budget; exceeding it returns best-so-far")
    o.add_argument("--cap", type=int, default=8, help="mcis vertex cap")
    o.add_argument("--force", action="store_true",
                   help="override the n <= %d guard" % ORACLE_GUARD_MAX_N)
    o.add_argument("--out", help="also write the result JSON here")
    o.set_defaults(func=_cmd_oracle)

    t = sub.add_parser("table", help="compare computed lengths to the reference table")
    t.add_argument("--max-n", type=int, default=4)
    t.add_argument("--mode", choices=("oracle", "qubo"), default="oracle")
    t.add_argument("--seed", type=int, default=1, help="annealer seed (qubo mode)")
    t.add_argument("--force", action="store_true",
                   help="override the oracle size guard")
    t.set_defaults(func=_cmd_table)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
