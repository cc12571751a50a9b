"""Depth-first backtracking search with propagation to fixpoint.

Branching is binary: the left child assigns the selected variable its
smallest value, the right child removes that value. Variable selection
minimizes domain size over static degree, ties broken by declaration
order. Propagation is coarse-grained: a queue of constraints with a
queued flag each; a constraint whose scope variable changed is re-enqueued
until quiescence. Propagators are expected to leave themselves at a
fixpoint, so the constraint that caused a change is not re-enqueued for it.
"""

from __future__ import annotations

import time as _time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Protocol, Sequence

from .ct import DYNAMIC, INCREMENTAL, RESET, CompactTable
from .domain import Inconsistency, ReversibleSparseSet, SparseSetDomain, Variable
from .oracle import OracleTable
from .str2 import Str2Table
from .trail import Trail


class Propagator(Protocol):
    """What the solver requires of a constraint."""

    scope: tuple[Variable, ...]
    table: tuple[tuple[int, ...], ...]
    queued: bool
    solver: object

    def propagate(self) -> bool: ...


class SearchStatus(Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    TIMEOUT = "timeout"
    LIMIT_REACHED = "limit"


@dataclass
class SearchStats:
    nodes: int = 0
    failures: int = 0
    solutions: int = 0
    time_s: float = 0.0


@dataclass
class SearchResult:
    status: SearchStatus
    solutions: list[tuple[int, ...]] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)


class _Stop(Exception):
    def __init__(self, status: SearchStatus) -> None:
        self.status = status


class Solver:
    """One search: variables, posted constraints, a trail, statistics."""

    def __init__(self, name: str = "") -> None:
        self.name = name
        self.trail = Trail()
        self.variables: list[Variable] = []
        self.constraints: list[Propagator] = []
        self.root_failed = False
        self.stats = SearchStats()
        self.last_branched: Variable | None = None
        self._watchers: list[list[Propagator]] = []
        self._degree: list[int] = []
        self._queue: deque[Propagator] = deque()
        self._unbound: ReversibleSparseSet | None = None

    # -- model building --------------------------------------------------

    def add_variable(self, name: str, values: Iterable[int]) -> Variable:
        var = Variable(len(self.variables), name, SparseSetDomain(self.trail, values))
        self.variables.append(var)
        self._watchers.append([])
        self._degree.append(0)
        return var

    def post(self, constraint: Propagator) -> None:
        """Register an already-built constraint and wire its watchers."""
        constraint.solver = self
        self.constraints.append(constraint)
        for var in constraint.scope:
            self._watchers[var.index].append(constraint)
            self._degree[var.index] += 1

    def degree(self, var: Variable) -> int:
        return self._degree[var.index]

    # -- propagation ------------------------------------------------------

    def enqueue(self, constraint: Propagator) -> None:
        if not constraint.queued:
            constraint.queued = True
            self._queue.append(constraint)

    def enqueue_watchers(self, var: Variable) -> None:
        for c in self._watchers[var.index]:
            self.enqueue(c)

    def enqueue_all(self) -> None:
        for c in self.constraints:
            self.enqueue(c)

    def propagate(self) -> bool:
        """Run the queue to quiescence; False empties the queue and means
        the current node is a dead end."""
        queue = self._queue
        while queue:
            c = queue.popleft()
            c.queued = False
            sizes = [v.domain.size for v in c.scope]
            if not c.propagate():
                for d in queue:
                    d.queued = False
                queue.clear()
                return False
            for var, before in zip(c.scope, sizes):
                if var.domain.size != before:
                    for w in self._watchers[var.index]:
                        if w is not c:
                            self.enqueue(w)
        return True

    def propagate_all(self) -> bool:
        """Enqueue every constraint and run to fixpoint (root propagation)."""
        if self.root_failed:
            return False
        self.enqueue_all()
        return self.propagate()

    def current_domains(self) -> list[set[int]]:
        return [v.domain.current_values() for v in self.variables]

    # -- heuristics ---------------------------------------------------------

    def select_variable(self) -> Variable:
        """Unbound variable minimizing |dom| / degree, smallest index first.

        Compared by cross-multiplication, so the choice is exact and a zero
        degree acts as an infinite ratio.
        """
        best: Variable | None = None
        best_size = best_deg = 0
        for var in self.variables:
            size = var.domain.size
            if size <= 1:
                continue
            deg = self._degree[var.index]
            if best is None or size * best_deg < best_size * deg:
                best, best_size, best_deg = var, size, deg
        if best is None:
            raise ValueError("no unbound variable")
        return best

    # -- search -----------------------------------------------------------

    def search(
        self,
        max_solutions: int | None = 1,
        timeout: float | None = None,
        max_nodes: int | None = None,
    ) -> SearchResult:
        """Depth-first search. ``max_solutions=None`` exhausts the space."""
        self.stats = SearchStats()
        solutions: list[tuple[int, ...]] = []
        start = _time.perf_counter()
        deadline = start + timeout if timeout is not None else None

        if self._unbound is None:
            self._unbound = ReversibleSparseSet(self.trail, len(self.variables))

        status: SearchStatus
        if self.root_failed or not self.propagate_all():
            self.stats.failures += 1
            status = SearchStatus.UNSATISFIABLE
        else:
            try:
                self._dfs(solutions, max_solutions, deadline, max_nodes)
                status = (
                    SearchStatus.SATISFIABLE if solutions else SearchStatus.UNSATISFIABLE
                )
            except _Stop as stop:
                status = stop.status

        self.stats.solutions = len(solutions)
        self.stats.time_s = _time.perf_counter() - start
        return SearchResult(status, solutions, self.stats)

    def _dfs(
        self,
        solutions: list[tuple[int, ...]],
        max_solutions: int | None,
        deadline: float | None,
        max_nodes: int | None,
    ) -> None:
        unbound = self._unbound
        assert unbound is not None
        for slot in range(unbound.size - 1, -1, -1):
            idx = unbound.at(slot)
            if self.variables[idx].domain.size == 1:
                unbound.remove(idx)

        if unbound.size == 0:
            values = tuple(v.domain.assigned_value() for v in self.variables)
            self._verify_solution(values)
            solutions.append(values)
            if max_solutions is not None and len(solutions) >= max_solutions:
                raise _Stop(SearchStatus.SATISFIABLE)
            return

        var = self.select_variable()
        code = var.domain.min_code()
        for assign in (True, False):
            if deadline is not None and _time.perf_counter() > deadline:
                raise _Stop(SearchStatus.TIMEOUT)
            if max_nodes is not None and self.stats.nodes >= max_nodes:
                raise _Stop(SearchStatus.LIMIT_REACHED)
            self.trail.push_level()
            self.stats.nodes += 1
            try:
                if assign:
                    var.domain.assign_code(code)
                else:
                    var.domain.remove_code(code)
                self.last_branched = var
                if var.domain.size == 0:
                    self.stats.failures += 1
                    continue
                self.enqueue_watchers(var)
                if self.propagate():
                    self._dfs(solutions, max_solutions, deadline, max_nodes)
                else:
                    self.stats.failures += 1
            finally:
                self.trail.restore_level()

    def _verify_solution(self, values: tuple[int, ...]) -> None:
        for c in self.constraints:
            projected = tuple(values[v.index] for v in c.scope)
            if projected not in c.table:
                raise AssertionError(
                    f"solution {values} violates a table constraint on "
                    f"{[v.name for v in c.scope]}"
                )


# -- instance loading ---------------------------------------------------------

PROPAGATORS = ("ct", "cti", "ctr", "str2", "oracle")


def make_propagator(
    algorithm: str,
    trail: Trail,
    scope: Sequence[Variable],
    table: Iterable[Sequence[int]],
    **kwargs,
):
    if algorithm == "ct":
        return CompactTable(trail, scope, table, update=DYNAMIC, **kwargs)
    if algorithm == "cti":
        return CompactTable(trail, scope, table, update=INCREMENTAL, **kwargs)
    if algorithm == "ctr":
        return CompactTable(trail, scope, table, update=RESET, **kwargs)
    if algorithm == "str2":
        return Str2Table(trail, scope, table, **kwargs)
    if algorithm == "oracle":
        return OracleTable(trail, scope, table, **kwargs)
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {PROPAGATORS}")


def build_solver(instance, algorithm: str = "ct", **kwargs) -> Solver:
    """Fresh solver for ``instance`` with one propagator per constraint.

    A constraint whose table is already unsatisfiable at post time marks the
    solver root-failed; search then reports unsatisfiable with one failure.
    """
    solver = Solver(name=instance.name)
    by_name: dict[str, Variable] = {}
    for name, values in instance.variables:
        by_name[name] = solver.add_variable(name, values)
    for scope_names, table in instance.constraints:
        if solver.root_failed:
            break
        scope = [by_name[name] for name in scope_names]
        try:
            solver.post(make_propagator(algorithm, solver.trail, scope, table, **kwargs))
        except Inconsistency:
            solver.root_failed = True
    return solver
