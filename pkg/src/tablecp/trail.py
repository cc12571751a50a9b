"""Trail-based state restoration with timestamping.

A :class:`Trail` is an undo log: every write to a reversible cell records the
cell's previous value, and backtracking pops those records and writes the old
values back in LIFO order. Levels delimit search nodes; restoring a level
undoes exactly the writes made since it was opened.

The trail carries a time counter that advances at every level boundary. Each
cell remembers the time of its last save, so within one node a cell is logged
at most once: only its state at node entry matters for restoration.
"""

from __future__ import annotations


class Trail:
    """Undo log shared by all reversible cells of one solver.

    Single-threaded: a trail and every cell registered on it form one
    mutation domain.
    """

    __slots__ = ("_entries", "_marks", "time")

    def __init__(self) -> None:
        self._entries: list[tuple[ReversibleInt, int]] = []
        self._marks: list[int] = []
        self.time = 0

    @property
    def depth(self) -> int:
        """Number of currently open levels."""
        return len(self._marks)

    @property
    def entry_count(self) -> int:
        """Total number of saved (cell, old value) records."""
        return len(self._entries)

    @property
    def level_marks(self) -> list[int]:
        """Entry-stack heights at which each open level started."""
        return list(self._marks)

    def push_level(self) -> None:
        """Open a node: writes made from now on are undone by the matching
        :meth:`restore_level`."""
        self.time += 1
        self._marks.append(len(self._entries))

    def restore_level(self) -> None:
        """Undo every write made since the matching :meth:`push_level`."""
        if not self._marks:
            raise RuntimeError("restore_level() with no open level")
        mark = self._marks.pop()
        entries = self._entries
        while len(entries) > mark:
            cell, old = entries.pop()
            cell.value = old
        # Entering a fresh epoch invalidates stamps recorded inside the
        # popped node; a cell saved only there must be saved again before
        # its next write, or the enclosing level would miss it.
        self.time += 1


class ReversibleInt:
    """Integer cell restored by its trail on backtrack.

    Also used for 64-bit words: Python integers subsume them, and a single
    cell type keeps the trail entry format uniform. Reads go through
    ``.value`` directly; all writes must go through :meth:`set`.
    """

    __slots__ = ("_trail", "value", "_stamp")

    def __init__(self, trail: Trail, value: int = 0) -> None:
        self._trail = trail
        self.value = value
        self._stamp = -1

    def set(self, value: int) -> None:
        """Write, saving the previous value unless already saved this node.

        Equal-value writes are not skipped here; callers that want to avoid
        a no-op save compare first.
        """
        trail = self._trail
        if self._stamp != trail.time:
            self._stamp = trail.time
            trail._entries.append((self, self.value))
        self.value = value

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"ReversibleInt({self.value})"


#: Alias for cells holding 64-bit words; same storage, same trail format.
ReversibleWord = ReversibleInt
