"""Benchmark harness: timed runs, performance ratios, performance profiles.

For each instance, every algorithm's time is divided by the fastest
completed time on that instance; an algorithm's profile value at ``tau`` is
the fraction of instances where its ratio is at most ``tau``. Instances can
be filtered the usual way before profiling: no completion at all, solved
too fast by the slowest algorithm, or too few backtracks (taken as the
failure count) to be meaningful.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .instances import Instance
from .solver import SearchStatus, build_solver

COMPLETED = (SearchStatus.SATISFIABLE.value, SearchStatus.UNSATISFIABLE.value)


@dataclass(frozen=True)
class RunRecord:
    instance: str
    algorithm: str
    status: str
    time_s: float
    nodes: int
    failures: int

    @property
    def completed(self) -> bool:
        return self.status in COMPLETED


@dataclass(frozen=True)
class ProfileCurve:
    algorithm: str
    points: tuple[tuple[float, float], ...]  # (tau, rho), tau ascending


def run_instance(instance: Instance, algorithm: str, timeout: float | None = None) -> RunRecord:
    """First-solution search in a fresh solver; only search() is timed
    (posting the constraints, like parsing, is setup)."""
    solver = build_solver(instance, algorithm)
    result = solver.search(max_solutions=1, timeout=timeout)
    return RunRecord(
        instance=instance.name,
        algorithm=algorithm,
        status=result.status.value,
        time_s=result.stats.time_s,
        nodes=result.stats.nodes,
        failures=result.stats.failures,
    )


def run_suite(
    instances: Sequence[Instance],
    algorithms: Sequence[str],
    timeout: float | None = None,
    progress=None,
) -> list[RunRecord]:
    records = []
    for instance in instances:
        for algorithm in algorithms:
            record = run_instance(instance, algorithm, timeout)
            records.append(record)
            if progress is not None:
                progress(record)
    return records


# -- ratios and profiles ----------------------------------------------------


def _by_instance(records: Iterable[RunRecord]) -> dict[str, list[RunRecord]]:
    grouped: dict[str, list[RunRecord]] = {}
    for r in records:
        grouped.setdefault(r.instance, []).append(r)
    return grouped


def ratios(records: Sequence[RunRecord]) -> dict[str, float]:
    """Per-algorithm time ratio against the fastest completed run of one
    instance; non-completed runs get +inf. Raises when nothing completed."""
    completed = [r.time_s for r in records if r.completed]
    if not completed:
        raise ValueError("no completed record for this instance")
    best = min(completed)
    out: dict[str, float] = {}
    for r in records:
        if not r.completed:
            out[r.algorithm] = math.inf
        elif best > 0:
            out[r.algorithm] = r.time_s / best
        else:
            out[r.algorithm] = 1.0 if r.time_s == 0 else math.inf
    return out


def filter_instances(
    records: Sequence[RunRecord],
    min_time: float = 0.0,
    min_backtracks: int = 0,
) -> list[str]:
    """Instances retained for profiling, sorted by name.

    Dropped: instances no algorithm completed, instances whose slowest
    completed time is below ``min_time``, and instances whose searches
    needed fewer than ``min_backtracks`` backtracks (= failures; the
    maximum over completed runs, since completed trees coincide)."""
    kept = []
    for name, group in _by_instance(records).items():
        completed = [r for r in group if r.completed]
        if not completed:
            continue
        if max(r.time_s for r in completed) < min_time:
            continue
        if max(r.failures for r in completed) < min_backtracks:
            continue
        kept.append(name)
    return sorted(kept)


def default_tau_grid(max_ratio: float, points: int = 64) -> list[float]:
    """Log-spaced grid over [1, max finite ratio]."""
    if not math.isfinite(max_ratio) or max_ratio <= 1.0:
        return [1.0]
    span = math.log(max_ratio)
    return [math.exp(span * i / (points - 1)) for i in range(points)]


def profiles(
    records: Sequence[RunRecord],
    taus: Sequence[float] | None = None,
    min_time: float = 0.0,
    min_backtracks: int = 0,
) -> list[ProfileCurve]:
    kept = set(filter_instances(records, min_time, min_backtracks))
    if not kept:
        raise ValueError("no instance left after filtering")
    grouped = _by_instance(records)
    per_instance = {name: ratios(grouped[name]) for name in kept}
    algorithms = sorted({r.algorithm for r in records})

    if taus is None:
        finite = [
            r
            for rat in per_instance.values()
            for r in rat.values()
            if math.isfinite(r)
        ]
        taus = default_tau_grid(max(finite))
    else:
        taus = list(taus)
        if any(t < 1 for t in taus):
            raise ValueError("tau grid must start at 1 or above")
        if taus != sorted(taus):
            raise ValueError("tau grid must be ascending")

    n = len(kept)
    curves = []
    for algorithm in algorithms:
        rs = [per_instance[name].get(algorithm, math.inf) for name in kept]
        points = tuple(
            (tau, sum(1 for r in rs if r <= tau) / n) for tau in taus
        )
        curves.append(ProfileCurve(algorithm, points))
    return curves


# -- CSV ---------------------------------------------------------------------

RUNS_HEADER = ["instance", "algorithm", "status", "time_s", "nodes", "failures"]
PROFILE_HEADER = ["algorithm", "tau", "rho"]


def write_runs_csv(records: Sequence[RunRecord], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RUNS_HEADER)
        for r in records:
            writer.writerow(
                [r.instance, r.algorithm, r.status, f"{r.time_s:.6f}", r.nodes, r.failures]
            )


def read_runs_csv(path) -> list[RunRecord]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        return [
            RunRecord(
                instance=row["instance"],
                algorithm=row["algorithm"],
                status=row["status"],
                time_s=float(row["time_s"]),
                nodes=int(row["nodes"]),
                failures=int(row["failures"]),
            )
            for row in reader
        ]


def write_profile_csv(curves: Sequence[ProfileCurve], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(PROFILE_HEADER)
        for curve in curves:
            for tau, rho in curve.points:
                writer.writerow([curve.algorithm, f"{tau:.9f}", f"{rho:.9f}"])
