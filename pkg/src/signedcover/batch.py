"""Batch runs over generated instances with CSV/JSON reports."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .cover import scc_8_3, scc_19_6, s_cover
from .cycles import tau
from .generators import InstanceSpec, gen
from .graph import GraphError, bridges, core_edges, is_flow_admissible, is_two_edge_connected, minimize_negatives, negativeness
from .oracle import BudgetExceeded, OracleBudget, brute_optimal_scc
from .tjoin import min_tjoin
from .verify import certify_tjoin

SUITES = ("tjoin", "s-cover", "scc-19/6", "scc-8/3", "oracle-compare")

#: Frozen CSV column order.
COLUMNS = (
    "index", "generator", "seed", "n", "m", "suite", "status",
    "epsilon", "tau", "core", "cut_edges", "length", "oracle",
    "bound", "lhs", "rhs", "pass", "detail",
)


@dataclass
class BatchReport:
    suite: str
    rows: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {"rows": len(self.rows), "pass": 0, "fail": 0, "skipped": 0}
        for r in self.rows:
            if r["pass"] is True:
                out["pass"] += 1
            elif r["pass"] is False:
                out["fail"] += 1
            else:
                out["skipped"] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r["pass"] is not False for r in self.rows)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow({k: ("" if r.get(k) is None else r[k]) for k in COLUMNS})
        return buf.getvalue()

    def to_json(self, **kw) -> str:
        return json.dumps({"suite": self.suite, "columns": list(COLUMNS), "rows": self.rows, "counts": self.counts}, **kw)

    def write(self, csv_path: Optional[str] = None, json_path: Optional[str] = None) -> None:
        if csv_path:
            with open(csv_path, "w") as fh:
                fh.write(self.to_csv())
        if json_path:
            with open(json_path, "w") as fh:
                fh.write(self.to_json(indent=2))


def _random_even_subset(items: list[int], rng: np.random.Generator, cap: Optional[int] = None) -> list[int]:
    items = sorted(items)
    k = int(rng.integers(len(items) + 1)) if items else 0
    if cap is not None:
        k = min(k, cap)
    k -= k % 2
    return sorted(int(x) for x in rng.choice(items, size=k, replace=False)) if k else []


def _cert_fields(cert) -> dict:
    return {"bound": cert.bound, "lhs": str(cert.lhs), "rhs": str(cert.rhs), "pass": cert.passed,
            "length": int(cert.lhs), "detail": "; ".join(cert.failures)}


def run_instance(index: int, spec: InstanceSpec, suite: str, budget: Optional[OracleBudget] = None) -> dict:
    """One report row.  Rows whose instance misses the suite's preconditions are skipped."""
    row = {k: None for k in COLUMNS}
    row.update(index=index, generator=spec.generator, seed=spec.seed, suite=suite)
    try:
        G = gen(spec)
    except GraphError as exc:
        row.update(status="error", detail=str(exc), **{"pass": False})
        return row
    row.update(n=G.n, m=G.m, cut_edges=len(bridges(G)))
    rng = np.random.default_rng([spec.seed, 1])
    try:
        if suite != "tjoin":
            row["epsilon"] = negativeness(G)[0]
            row["tau"] = tau(G)
            row["core"] = len(core_edges(G))
        if suite == "tjoin":
            T = _random_even_subset(list(range(G.n)), rng, cap=8)
            J = min_tjoin(G, T)
            cert = certify_tjoin(G, T, J)
            row.update(_cert_fields(cert))
            row["length"] = len(J)
        elif suite == "s-cover":
            if not is_two_edge_connected(G) or not is_flow_admissible(G).verdict:
                row.update(status="skipped", detail="needs a 2-edge-connected flow-admissible graph")
                return row
            Gs, _ = minimize_negatives(G)
            S = _random_even_subset(list(Gs.negative_edges()), rng)
            _, cert = s_cover(Gs, S)
            row.update(_cert_fields(cert))
        elif suite == "scc-19/6":
            _, cert = scc_19_6(G)
            row.update(_cert_fields(cert))
        elif suite == "scc-8/3":
            _, cert = scc_8_3(G)
            row.update(_cert_fields(cert))
        elif suite == "oracle-compare":
            _, cert = scc_19_6(G)
            row.update(_cert_fields(cert))
            try:
                _, opt = brute_optimal_scc(G, budget or OracleBudget())
            except BudgetExceeded as exc:
                row.update(status="ok", detail=f"oracle skipped: {exc}")
                return row
            row["oracle"] = opt
            if opt > cert.lhs:
                row["pass"] = False
                row["detail"] = f"oracle optimum {opt} exceeds constructed {cert.lhs}"
        else:
            raise ValueError(f"unknown suite {suite!r}")
    except GraphError as exc:
        row.update(status="skipped", detail=str(exc))
        return row
    row["status"] = "ok"
    return row


def _run_star(args):
    return run_instance(*args)


def run_batch(
    specs: Iterable[InstanceSpec],
    seeds: Optional[Iterable[int]] = None,
    suite: str = "scc-19/6",
    workers: int = 1,
    budget: Optional[OracleBudget] = None,
) -> BatchReport:
    """Run ``suite`` on every spec (once per seed when ``seeds`` is given).

    Rows come back in instance order whatever ``workers`` is.
    """
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {', '.join(SUITES)}")
    specs = list(specs)
    if seeds is not None:
        seeds = list(seeds)
        specs = [s.with_seed(x) for s in specs for x in seeds]
    jobs = [(i, s, suite, budget) for i, s in enumerate(specs)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_star, jobs))
    else:
        rows = [run_instance(*j) for j in jobs]
    return BatchReport(suite, rows)
