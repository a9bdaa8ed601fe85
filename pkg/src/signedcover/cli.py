"""Command-line entry point: ``signedcover <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .batch import SUITES, run_batch
from .cover import CoverFamily, NotFlowAdmissible, PreconditionError, scc_8_3, scc_19_6
from .cycles import tau
from .generators import GENERATORS, InstanceSpec, gen
from .graph import GraphError, bridges, core_edges, format_sg, is_flow_admissible, negativeness, read_sg
from .oracle import (
    BudgetExceeded,
    OracleBudget,
    brute_frustration,
    brute_min_tjoin,
    brute_optimal_scc,
    brute_tau,
    enumerate_signed_circuits,
)
from .tjoin import TJoinError, min_tjoin
from .verify import Certificate, verify_cover


def _emit(obj, as_json: bool) -> None:
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")


def _parse_params(items: Sequence[str]) -> dict:
    out = {}
    for item in items or ():
        key, _, value = item.partition("=")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def _budget(args) -> OracleBudget:
    return OracleBudget(args.max_vertices, args.max_edges, args.max_circuits, args.max_seconds)


def _add_budget(p: argparse.ArgumentParser) -> None:
    d = OracleBudget()
    g = p.add_argument_group("budget")
    g.add_argument("--max-vertices", type=int, default=d.max_vertices)
    g.add_argument("--max-edges", type=int, default=d.max_edges)
    g.add_argument("--max-circuits", type=int, default=d.max_circuits)
    g.add_argument("--max-seconds", type=float, default=d.max_seconds)


def _add_spec(p: argparse.ArgumentParser) -> None:
    p.add_argument("--generator", choices=GENERATORS, default="random-multigraph")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--m", type=int, default=12)
    p.add_argument("--p-neg", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="generator parameter, e.g. bridgeless=true or blobs=3")


def _spec(args) -> InstanceSpec:
    return InstanceSpec(args.generator, args.n, args.m, args.p_neg, args.seed, _parse_params(args.param))


def cmd_gen(args) -> int:
    text = format_sg(gen(_spec(args)))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args) -> int:
    G = read_sg(args.input)
    eps, z = negativeness(G)
    report = is_flow_admissible(G)
    out = {
        "n": G.n,
        "m": G.m,
        "negative_edges": len(G.negative_edges()),
        "epsilon": eps,
        "switching": sorted(z.vertices),
        "tau": tau(G),
        "bridges": sorted(bridges(G)),
        "core_edges": sorted(core_edges(G)),
        "flow_admissible": report.verdict,
        "reason": report.reason,
    }
    _emit(out, args.json)
    return 0


def cmd_tjoin(args) -> int:
    from .tjoin import tjoin_upper_bound

    G = read_sg(args.input)
    T = [int(x) for x in args.terminals.split(",") if x.strip()] if args.terminals else []
    J = min_tjoin(G, T)
    bound = tjoin_upper_bound(G)
    out = {"size": len(J), "edges": sorted(J), "bound": str(bound), "tight": len(J) == bound}
    _emit(out, args.json)
    return 0


def _write_cert(cert: Certificate, args) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(cert.to_json(indent=2))
    if args.json:
        print(cert.to_json(indent=2))
    else:
        verdict = "pass" if cert.passed else "FAIL"
        rel = "<" if cert.strict else "<="
        print(f"{cert.bound}: {cert.lhs} {rel} {cert.rhs}  {verdict}")
        for c in cert.circuits:
            print(f"  {c['kind']}: {c['edges']}")
        for f in cert.failures:
            print(f"  failure: {f}")


def cmd_cover(args) -> int:
    G = read_sg(args.input)
    builder = scc_19_6 if args.bound == "19/6" else scc_8_3
    _, cert = builder(G)
    _write_cert(cert, args)
    return 0 if cert.passed else 1


class _Listed:
    def __init__(self, kind, edges):
        self.kind = kind
        self.edges = tuple(edges)

    def __len__(self):
        return len(self.edges)


def cmd_verify(args) -> int:
    G = read_sg(args.input)
    with open(args.certificate) as fh:
        data = json.load(fh)
    fam = CoverFamily([_Listed(c.get("kind"), c["edges"]) for c in data["circuits"]])
    cert = verify_cover(G, fam, data["bound"])
    if data.get("inputs_hash") and data["inputs_hash"] != cert.inputs_hash:
        cert.failures.append("certificate was issued for a different graph")
        cert.passed = False
    args.output = None
    _write_cert(cert, args)
    return 0 if cert.passed else 1


def cmd_oracle(args) -> int:
    G = read_sg(args.input)
    budget = _budget(args)
    if args.what == "scc":
        fam, value = brute_optimal_scc(G, budget)
        out = {"scc": value, "circuits": [{"kind": c.kind, "edges": list(c.edges)} for c in fam]}
    elif args.what == "tau":
        out = {"tau": brute_tau(G, budget)}
    elif args.what == "frustration":
        out = {"epsilon": brute_frustration(G)}
    elif args.what == "tjoin":
        T = [int(x) for x in args.terminals.split(",") if x.strip()] if args.terminals else []
        out = {"size": brute_min_tjoin(G, T, budget)}
    else:
        found = enumerate_signed_circuits(G, budget)
        out = {"count": len(found), "circuits": [{"kind": c.kind, "edges": list(c.edges)} for c in found]}
    _emit(out, args.json)
    return 0


def cmd_bench(args) -> int:
    base = _spec(args)
    seeds = range(args.seed, args.seed + args.count)
    report = run_batch([base], seeds, args.suite, workers=args.workers, budget=_budget(args))
    report.write(args.csv, args.json_out)
    counts = report.counts
    if args.json:
        print(json.dumps(counts))
    else:
        print(f"{args.suite}: {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped of {counts['rows']}")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedcover", description="Signed-circuit covers of signed multigraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated instance in .sg format")
    _add_spec(g)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="negativeness, tau, bridges, core and admissibility")
    a.add_argument("--input", required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tjoin", help="minimum T-join and its bound")
    t.add_argument("--input", required=True)
    t.add_argument("--terminals", default="", help="comma-separated vertex ids")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_tjoin)

    c = sub.add_parser("cover", help="build and certify a signed-circuit cover")
    c.add_argument("--input", required=True)
    c.add_argument("--bound", choices=("19/6", "8/3"), default="19/6")
    c.add_argument("--json", action="store_true")
    c.add_argument("-o", "--output", help="write the certificate JSON here")
    c.set_defaults(func=cmd_cover)

    v = sub.add_parser("verify", help="re-check a certificate against a graph")
    v.add_argument("--input", required=True)
    v.add_argument("--certificate", required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="brute-force ground truth")
    o.add_argument("what", choices=("scc", "tau", "frustration", "tjoin", "enumerate"))
    o.add_argument("--input", required=True)
    o.add_argument("--terminals", default="")
    o.add_argument("--json", action="store_true")
    _add_budget(o)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="run a suite over seeded instances")
    _add_spec(b)
    b.add_argument("--count", type=int, default=100)
    b.add_argument("--suite", choices=SUITES, default="scc-19/6")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--csv")
    b.add_argument("--json-out")
    b.add_argument("--json", action="store_true")
    _add_budget(b)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotFlowAdmissible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, BudgetExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
