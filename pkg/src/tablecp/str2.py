"""Tuple-scanning GAC baseline for positive table constraints.

Keeps the still-valid tuples in the prefix of a reversible sparse set and
re-checks validity only against the variables whose domains changed since
the previous call. While scanning, it collects the values occurring in some
valid tuple; a variable drops out of the collection as soon as every one of
its current values has been seen. Values never collected are removed.

Used as a cross-validation and benchmarking baseline: by construction it
enforces the same fixpoints as the bit-set propagator, so both must produce
identical search trees.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .ct import encode_valid_tuples, remove_unsupported_values
from .domain import Inconsistency, ReversibleSparseSet, Variable
from .trail import ReversibleInt, Trail


class Str2Table:
    """Simple-tabular-reduction propagator (validity checks on the delta
    variables only, value collection until saturation)."""

    def __init__(
        self, trail: Trail, scope: Sequence[Variable], table: Iterable[Sequence[int]]
    ) -> None:
        self.scope = tuple(scope)
        if len({v.index for v in self.scope}) != len(self.scope):
            raise ValueError("scope variables must be distinct")
        self.table = tuple(tuple(row) for row in table)
        self.queued = False
        self.solver = None

        # Mirror the bit-set propagator's posting behaviour so that both
        # leave identical root states: drop initially invalid tuples, fail
        # on an empty table, strip values no surviving tuple uses.
        valid = encode_valid_tuples(self.scope, self.table)
        if not valid:
            raise Inconsistency("table constraint has no valid tuple")
        self._codes = tuple(valid)
        remove_unsupported_values(self.scope, valid)
        self._valid = ReversibleSparseSet(trail, len(valid))
        self._last_sizes = [ReversibleInt(trail, v.domain.size) for v in self.scope]

    def propagate(self) -> bool:
        scope = self.scope
        changed: list[int] = []
        for pos, var in enumerate(scope):
            size = var.domain.size
            last = self._last_sizes[pos]
            if size != last.value:
                changed.append(pos)
                last.set(size)
        if not changed:
            # The previous call ended at a fixpoint and nothing moved since,
            # so no tuple can have become invalid.
            return True

        collect = [pos for pos, var in enumerate(scope) if var.domain.size > 1]
        # Validity snapshots: domains do not move during the scan.
        checks = [(pos, scope[pos].domain.positions, scope[pos].domain.size) for pos in changed]
        seen = {pos: bytearray(scope[pos].domain.n) for pos in collect}
        counts = dict.fromkeys(collect, 0)
        targets = {pos: scope[pos].domain.size for pos in collect}
        covered = bytearray(len(scope))
        uncovered = len(collect)

        valid = self._valid
        codes = self._codes
        for slot in range(valid.size - 1, -1, -1):
            t = valid.at(slot)
            row = codes[t]
            ok = True
            for pos, positions, size in checks:
                if positions[row[pos]] >= size:
                    ok = False
                    break
            if not ok:
                valid.remove(t)
                continue
            if uncovered:
                for pos in collect:
                    if covered[pos]:
                        continue
                    marks = seen[pos]
                    code = row[pos]
                    if not marks[code]:
                        marks[code] = 1
                        counts[pos] += 1
                        if counts[pos] == targets[pos]:
                            covered[pos] = 1
                            uncovered -= 1

        if valid.size == 0:
            return False
        for pos in collect:
            if covered[pos]:
                continue
            dom = scope[pos].domain
            marks = seen[pos]
            for slot in range(dom.size - 1, -1, -1):
                code = dom.code_at(slot)
                if not marks[code]:
                    dom.remove_code(code)
            if dom.size == 0:
                return False
            self._last_sizes[pos].set(dom.size)
        return True
