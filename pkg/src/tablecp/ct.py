"""Bit-parallel GAC propagator for positive table constraints.

The propagator keeps a reversible bit-set ``current`` over the initially
valid tuples: bit ``i`` is set iff tuple ``i`` is still valid under the
current domains. Static support words mark, per (variable, value), which
tuples assign that value; a value keeps its place in a domain exactly while
its support words intersect ``current``.

Per changed variable the table is narrowed either incrementally (OR the
support words of the removed values, complement, intersect) or by reset
(OR the support words of the remaining values, intersect). The default
picks whichever side enumerates fewer values; the choice can be pinned to
benchmark the two static strategies.

Residues remember, per (variable, value), the word offset where a support
was last seen. They are plain sentinels: a hit proves support in O(1), a
miss falls back to a full intersection scan, and correctness never depends
on their content.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .bitset import ReversibleSparseBitSet
from .domain import Inconsistency, ReversibleSparseSet, Variable
from .trail import ReversibleInt, Trail

DYNAMIC = "dynamic"
INCREMENTAL = "incremental"
RESET = "reset"

UPDATE_MODES = (DYNAMIC, INCREMENTAL, RESET)


def encode_valid_tuples(
    scope: Sequence[Variable], table: Iterable[Sequence[int]]
) -> list[tuple[int, ...]]:
    """Dense-code the tuples of ``table`` that are valid under the current
    domains of ``scope``, preserving input order. Invalid tuples (any
    component absent from its domain) are dropped."""
    doms = [v.domain for v in scope]
    arity = len(doms)
    valid: list[tuple[int, ...]] = []
    for row in table:
        if len(row) != arity:
            raise ValueError(f"tuple {tuple(row)} has arity {len(row)}, scope has {arity}")
        codes = []
        for value, dom in zip(row, doms):
            code = dom.code_of(value)
            if code is None or not dom.contains_code(code):
                break
            codes.append(code)
        else:
            valid.append(tuple(codes))
    return valid


def remove_unsupported_values(
    scope: Sequence[Variable], valid: Sequence[Sequence[int]]
) -> None:
    """Drop every domain value that appears in no valid tuple."""
    for pos, var in enumerate(scope):
        dom = var.domain
        seen = bytearray(dom.n)
        for row in valid:
            seen[row[pos]] = 1
        for slot in range(dom.size - 1, -1, -1):
            code = dom.code_at(slot)
            if not seen[code]:
                dom.remove_code(code)


class CompactTable:
    """Table-constraint propagator over a reversible sparse bit-set.

    Posting the constraint filters the table against the current domains,
    removes values left without any support, and fails immediately when no
    tuple survives. ``propagate()`` then maintains generalized arc
    consistency during search; it returns False on a dead end (empty table
    or domain wipe-out), leaving cleanup to the trail.

    ``skip_bound`` restricts change detection to a reversible set of scope
    variables not yet seen bound by this propagator (a superset of the
    currently unbound ones, so no change is ever missed).
    ``skip_last_modified`` drops the single changed variable from the
    support checks: its remaining values were all supported at the previous
    fixpoint and the new table was narrowed by its own mask only. Both
    switches are optimizations and never change computed fixpoints.
    """

    def __init__(
        self,
        trail: Trail,
        scope: Sequence[Variable],
        table: Iterable[Sequence[int]],
        update: str = DYNAMIC,
        use_residues: bool = True,
        skip_bound: bool = True,
        skip_last_modified: bool = True,
        debug: bool = False,
    ) -> None:
        if update not in UPDATE_MODES:
            raise ValueError(f"unknown update mode {update!r}")
        self.scope = tuple(scope)
        if len({v.index for v in self.scope}) != len(self.scope):
            raise ValueError("scope variables must be distinct")
        self.table = tuple(tuple(row) for row in table)
        self.update = update
        self.use_residues = use_residues
        self.skip_bound = skip_bound
        self.skip_last_modified = skip_last_modified
        self.debug = debug
        self.queued = False
        self.solver = None  # set when posted; supplies the branching variable
        self.intersect_index_calls = 0

        valid = encode_valid_tuples(self.scope, self.table)
        if not valid:
            raise Inconsistency("table constraint has no valid tuple")
        self._codes = tuple(valid)
        k = len(valid)
        p = (k + 63) >> 6

        # Static support words: _supports[pos][code] marks the tuples
        # assigning that code to that scope position. Immutable after here.
        sup: list[list[list[int]]] = [
            [[0] * p for _ in range(v.domain.n)] for v in self.scope
        ]
        for t, row in enumerate(valid):
            word, bit = t >> 6, 1 << (t & 63)
            for pos, code in enumerate(row):
                sup[pos][code][word] |= bit
        self._supports: tuple[tuple[tuple[int, ...], ...], ...] = tuple(
            tuple(tuple(row) for row in rows) for rows in sup
        )

        remove_unsupported_values(self.scope, valid)

        self.current = ReversibleSparseBitSet(trail, k)
        self._residues: list[list[int]] = [
            [next((off for off, w in enumerate(rows[code]) if w), 0) for code in range(len(rows))]
            for rows in self._supports
        ]
        self._last_sizes = [ReversibleInt(trail, v.domain.size) for v in self.scope]
        self._untouched = ReversibleSparseSet(trail, len(self.scope))
        for pos, var in enumerate(self.scope):
            if var.domain.size == 1:
                self._untouched.remove(pos)

    # -- propagation ---------------------------------------------------------

    def propagate(self) -> bool:
        scope = self.scope
        last_sizes = self._last_sizes

        # Changed variables, each with the domain size recorded at our
        # previous run (the delta lives in the permutation slots between
        # the two sizes).
        changed: list[tuple[int, int]] = []
        if self.skip_bound:
            untouched = self._untouched
            for slot in range(untouched.size - 1, -1, -1):
                pos = untouched.at(slot)
                size = scope[pos].domain.size
                last = last_sizes[pos]
                if size != last.value:
                    changed.append((pos, last.value))
                    last.set(size)
                if size == 1:
                    untouched.remove(pos)
        else:
            for pos, var in enumerate(scope):
                size = var.domain.size
                last = last_sizes[pos]
                if size != last.value:
                    changed.append((pos, last.value))
                    last.set(size)

        support_checks = [pos for pos, var in enumerate(scope) if var.domain.size > 1]
        if self.skip_last_modified and len(changed) == 1:
            only = changed[0][0]
            if only in support_checks:
                support_checks.remove(only)

        if not self._update_table(changed):
            return False
        return self._filter_domains(support_checks)

    def _update_table(self, changed: list[tuple[int, int]]) -> bool:
        current = self.current
        mode = self.update
        for pos, last_size in changed:
            dom = self.scope[pos].domain
            rows = self._supports[pos]
            current.clear_mask()
            removed = last_size - dom.size
            if mode is INCREMENTAL or (mode is DYNAMIC and removed < dom.size):
                for code in dom.delta_codes(last_size):
                    current.add_to_mask(rows[code])
                current.reverse_mask()
            else:
                dense = dom.dense
                for slot in range(dom.size):
                    current.add_to_mask(rows[dense[slot]])
            current.intersect_with_mask()
            if current.is_empty():
                return False
        return True

    def _filter_domains(self, support_checks: list[int]) -> bool:
        current = self.current
        words = current.words
        use_residues = self.use_residues
        for pos in support_checks:
            dom = self.scope[pos].domain
            rows = self._supports[pos]
            residues = self._residues[pos]
            for slot in range(dom.size - 1, -1, -1):
                code = dom.code_at(slot)
                row = rows[code]
                if use_residues and words[residues[code]].value & row[residues[code]]:
                    continue
                self.intersect_index_calls += 1
                off = current.intersect_index(row)
                if off >= 0:
                    residues[code] = off
                else:
                    dom.remove_code(code)
            if dom.size == 0:
                return False
            self._last_sizes[pos].set(dom.size)
        if self.debug:
            self.check_invariants()
        return True

    # -- diagnostics -----------------------------------------------------------

    def support_row(self, pos: int, code: int) -> tuple[int, ...]:
        """Static support words of (scope position, dense value code)."""
        return self._supports[pos][code]

    def check_invariants(self) -> None:
        """Bit i of the table is set iff tuple i is valid right now."""
        self.current.check_invariants()
        doms = [v.domain for v in self.scope]
        for t, row in enumerate(self._codes):
            valid = all(dom.contains_code(code) for dom, code in zip(doms, row))
            assert self.current.contains(t) == valid, (
                f"tuple {t} {'present' if self.current.contains(t) else 'absent'} "
                f"but {'valid' if valid else 'invalid'}"
            )
