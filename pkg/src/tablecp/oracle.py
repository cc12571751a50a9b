"""Brute-force GAC reference.

Deliberately naive ground truth: per value, scan the full original table
for a valid supporting tuple; iterate over all constraints until nothing
changes. Operates on plain value sets and never touches a trail, so its
correctness is evident by inspection. Test-scale complexity only.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .domain import Variable


def gac_fixpoint(
    instance, domains: Sequence[Iterable[int]] | None = None
) -> list[set[int]] | None:
    """Largest generalized-arc-consistent subdomains of ``instance``.

    ``domains`` optionally overrides the instance's declared domains (one
    iterable per variable, in declaration order). Returns the filtered
    domains as value sets, or ``None`` when some domain wipes out.
    """
    if domains is None:
        doms = [set(values) for _, values in instance.variables]
    else:
        doms = [set(d) for d in domains]
    if any(not d for d in doms):
        return None
    var_index = {name: i for i, (name, _) in enumerate(instance.variables)}
    constraints = [
        (tuple(var_index[name] for name in scope), table)
        for scope, table in instance.constraints
    ]

    changed = True
    while changed:
        changed = False
        for scope_idx, table in constraints:
            r = len(scope_idx)
            for pos in range(r):
                x = scope_idx[pos]
                for a in list(doms[x]):
                    supported = any(
                        row[pos] == a
                        and all(row[q] in doms[scope_idx[q]] for q in range(r))
                        for row in table
                    )
                    if not supported:
                        doms[x].discard(a)
                        changed = True
                        if not doms[x]:
                            return None
    return doms


class OracleTable:
    """The same brute-force support scan mounted as a propagator.

    Keeps the original unfiltered table and loops to its own per-constraint
    fixpoint (a removal can invalidate a support checked earlier in the same
    pass). Exists so search trees can be cross-checked against an
    implementation with no incremental state at all.
    """

    def __init__(self, trail, scope: Sequence[Variable], table: Iterable[Sequence[int]]) -> None:
        del trail  # stateless between calls; kept for a uniform signature
        self.scope = tuple(scope)
        self.table = tuple(tuple(row) for row in table)
        self.queued = False
        self.solver = None

    def propagate(self) -> bool:
        scope = self.scope
        table = self.table
        r = len(scope)
        changed = True
        while changed:
            changed = False
            for pos in range(r):
                dom = scope[pos].domain
                for slot in range(dom.size - 1, -1, -1):
                    value = dom.value_at(slot)
                    supported = any(
                        row[pos] == value
                        and all(scope[q].domain.contains(row[q]) for q in range(r))
                        for row in table
                    )
                    if not supported:
                        dom.remove(value)
                        changed = True
                if dom.size == 0:
                    return False
        return True
