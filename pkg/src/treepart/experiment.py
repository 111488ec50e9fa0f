"""Batch audits: plans, the standard suite, and CSV output."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .bounds import CSV_HEADER, audit
from .errors import InputError
from .generators import gen_family


@dataclass
class ExperimentPlan:
    instances: list[dict[str, Any]] = field(default_factory=list)
    max_n: int = 12
    node_budget: int | None = 200_000
    time_budget: float | None = None
    output: str | None = None

    @classmethod
    def from_json(cls, text: str) -> ExperimentPlan:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"plan is not valid JSON: {exc}") from None
        if isinstance(raw, list):
            raw = {"instances": raw}
        known = {"instances", "max_n", "node_budget", "time_budget", "output"}
        unknown = set(raw) - known
        if unknown:
            raise InputError(f"unknown plan keys: {sorted(unknown)}")
        return cls(**raw)

    def to_json(self) -> str:
        return json.dumps({"instances": self.instances, "max_n": self.max_n,
                           "node_budget": self.node_budget, "time_budget": self.time_budget},
                          indent=1)


class PlanError(InputError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("plan failed preflight:\n" + "\n".join(f"  {p}" for p in problems))


def preflight(plan: ExperimentPlan) -> None:
    problems = []
    for i, desc in enumerate(plan.instances):
        try:
            gen_family(desc["family"], desc.get("params", {}), desc.get("seed", 0))
        except (InputError, KeyError, TypeError) as exc:
            problems.append(f"instance {i} ({desc}): {exc}")
    if problems:
        raise PlanError(problems)


def _run_one(args) -> tuple[str, bool]:
    desc, max_n, node_budget, time_budget = args
    g, meta = gen_family(desc["family"], desc.get("params", {}), desc.get("seed", 0))
    rep = audit(g, meta, max_n=max_n, node_budget=node_budget, time_budget=time_budget)
    return rep.csv_row(), rep.ok


def run_experiment(plan: ExperimentPlan, workers: int = 1) -> tuple[str, int]:
    """Audit every instance; return the CSV text and the exit status.

    The status is 1 iff an asserted inequality failed on some instance
    (theorem1 is reported but never asserted). Rows follow plan order.
    """
    preflight(plan)
    jobs = [(d, plan.max_n, plan.node_budget, plan.time_budget) for d in plan.instances]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    text = "\n".join([CSV_HEADER] + [row for row, _ in results]) + "\n"
    if plan.output:
        Path(plan.output).write_text(text)
    status = 0 if all(ok for _, ok in results) else 1
    return text, status


def standard_plan(ktrees: int = 50, seed: int = 0) -> ExperimentPlan:
    """Paths, cycles, degree-capped random k-trees and the lower-bound families."""
    instances: list[dict[str, Any]] = [
        {"family": "path", "params": {"n": 9}},
        {"family": "path", "params": {"n": 40}},
        {"family": "cycle", "params": {"n": 5}},
        {"family": "cycle", "params": {"n": 40}},
        {"family": "clique", "params": {"n": 6}},
    ]
    caps = {1: 8, 2: 8, 3: 12}
    s = seed
    made = 0
    while made < ktrees:
        k = 1 + made % 3
        n = 12 + (made * 7) % 49
        desc = {"family": "random_ktree", "params": {"n": n, "k": k, "max_degree": caps[k]},
                "seed": s}
        s += 1
        try:
            gen_family(desc["family"], desc["params"], desc["seed"])
        except InputError:
            continue
        instances.append(desc)
        made += 1
    instances += [
        {"family": "lower_general", "params": {"k": 2, "delta": 7, "n": 3}},
        {"family": "lower_general", "params": {"k": 4, "delta": 15, "n": 9}},
        {"family": "lower_tw2", "params": {"delta": 11}},
        {"family": "lower_tw2", "params": {"delta": 13}},
    ]
    return ExperimentPlan(instances=instances)
