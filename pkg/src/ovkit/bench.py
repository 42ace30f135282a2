"""Timing harness over planted 2-OV instances.

Rows record wall time only; nothing here asserts asymptotic behaviour.
"""
from __future__ import annotations

import csv
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, TextIO

from .core import Instance, gen_planted
from .folklore import decide_kov_folklore
from .kov import KovConfig, solve_kov
from .mitm import solve_2ov_mitm
from .oracle import decide_brute
from .representation import ReprConfig, solve_2ov_repr

COLUMNS = ("algo", "d", "n", "k", "seed", "yes", "millis")

SUITES = {
    "quick": {"dims": (8, 10, 12), "n": 16, "reps": 2},
    "full": {"dims": (8, 10, 12, 14, 16, 18, 20), "n": 32, "reps": 3},
}


@dataclass
class BenchRow:
    algo: str
    d: int
    n: int
    k: int
    seed: int
    yes: int
    millis: float


def _solvers(seed: int) -> dict[str, Callable[[Instance], bool]]:
    return {
        "brute": decide_brute,
        "folklore": decide_kov_folklore,
        "mitm": lambda inst: solve_2ov_mitm(*inst.families) is not None,
        "repr": lambda inst: solve_2ov_repr(*inst.families, ReprConfig(seed=seed)) is not None,
        "kov": lambda inst: solve_kov(inst, KovConfig()),
    }


ALGOS = tuple(_solvers(0))


def run_suite(suite: str = "quick", seed: int = 0) -> list[BenchRow]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    plan = SUITES[suite]
    rows = []
    for d in plan["dims"]:
        for rep in range(plan["reps"]):
            inst_seed = seed * 1000 + d * 10 + rep
            inst = gen_planted(d, 2, (1 / 3, 1 / 3), plan["n"], inst_seed).instance
            for algo, solve in _solvers(inst_seed).items():
                start = time.perf_counter()
                yes = solve(inst)
                millis = (time.perf_counter() - start) * 1000
                rows.append(BenchRow(algo, d, plan["n"], inst.k, inst_seed, int(yes), millis))
    return rows


def write_csv(rows: Iterable[BenchRow], fh: TextIO) -> None:
    writer = csv.DictWriter(fh, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        out = asdict(row)
        out["millis"] = f"{row.millis:.6f}"
        writer.writerow(out)
