"""Reversible sparse sets and variable domains.

A sparse set keeps its members in the first ``size`` slots of a permutation
array; removal swaps the victim with the last member and shrinks the trailed
size, so removal is O(1) and backtracking restores any number of removals by
restoring the single size cell.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .trail import ReversibleInt, Trail


class Inconsistency(Exception):
    """Raised when a constraint can already not be satisfied at post time."""


class ReversibleSparseSet:
    """Reversible set over the dense universe ``0..n-1``.

    Attributes ``dense`` and ``positions`` are exposed read-only for hot
    loops: ``dense[i]`` is the element in slot ``i`` and ``positions[e]`` is
    the slot of element ``e``; element ``e`` is a member iff
    ``positions[e] < size``.
    """

    __slots__ = ("dense", "positions", "_size")

    def __init__(self, trail: Trail, n: int) -> None:
        if n < 0:
            raise ValueError("sparse set size must be non-negative")
        self.dense = list(range(n))
        self.positions = list(range(n))
        self._size = ReversibleInt(trail, n)

    @property
    def n(self) -> int:
        return len(self.dense)

    @property
    def size(self) -> int:
        return self._size.value

    def __len__(self) -> int:
        return self._size.value

    def __contains__(self, e: int) -> bool:
        return self.positions[e] < self._size.value

    def at(self, slot: int) -> int:
        """Element stored in permutation slot ``slot`` (member iff < size)."""
        return self.dense[slot]

    def members(self) -> list[int]:
        """Current members; order unspecified and unstable under mutation."""
        return self.dense[: self._size.value]

    def _swap(self, i: int, j: int) -> None:
        dense, pos = self.dense, self.positions
        a, b = dense[i], dense[j]
        dense[i], dense[j] = b, a
        pos[a], pos[b] = j, i

    def remove(self, e: int) -> None:
        """Remove ``e``; a no-op if absent (double removal is legal)."""
        size = self._size.value
        if self.positions[e] >= size:
            return
        self._swap(self.positions[e], size - 1)
        self._size.set(size - 1)

    def keep_only(self, e: int) -> None:
        """Shrink the set to the single member ``e`` (which must be one)."""
        self._swap(self.positions[e], 0)
        self._size.set(1)

    def clear(self) -> None:
        self._size.set(0)

    def removed_between(self, last_size: int) -> Iterator[int]:
        """Elements removed since the set had ``last_size`` members.

        A view over permutation slots ``[size, last_size)``; valid only while
        the set is not mutated, order unspecified.
        """
        size = self._size.value
        if last_size < size or last_size > len(self.dense):
            raise ValueError(f"last_size {last_size} outside [{size}, {len(self.dense)}]")
        dense = self.dense
        for slot in range(size, last_size):
            yield dense[slot]

    def check_permutation(self) -> None:
        """Assert the dense/positions arrays are mutually inverse."""
        n = len(self.dense)
        assert sorted(self.dense) == list(range(n))
        for slot, e in enumerate(self.dense):
            assert self.positions[e] == slot


class SparseSetDomain:
    """Domain of one variable as a reversible sparse set over dense codes.

    Arbitrary integer values are mapped once to dense codes ``0..n-1`` in
    ascending value order; propagators address supports, deltas and
    removals by code only. ``size == 0`` signals a wipe-out.
    """

    __slots__ = ("values", "_code_of", "_set")

    def __init__(self, trail: Trail, values: Iterable[int]) -> None:
        vals = tuple(sorted(set(values)))
        if not vals:
            raise ValueError("domain must contain at least one value")
        self.values = vals
        self._code_of = {v: c for c, v in enumerate(vals)}
        self._set = ReversibleSparseSet(trail, len(vals))

    # -- mapping ---------------------------------------------------------

    @property
    def n(self) -> int:
        """Number of initial values (codes run 0..n-1)."""
        return len(self.values)

    def code_of(self, value: int) -> int | None:
        """Dense code of ``value``, or None for values never in the domain."""
        return self._code_of.get(value)

    def value_of(self, code: int) -> int:
        return self.values[code]

    # -- queries ---------------------------------------------------------

    @property
    def size(self) -> int:
        return self._set.size

    @property
    def is_bound(self) -> bool:
        return self._set.size == 1

    def contains_code(self, code: int) -> bool:
        return self._set.positions[code] < self._set.size

    def contains(self, value: int) -> bool:
        code = self._code_of.get(value)
        return code is not None and self.contains_code(code)

    def code_at(self, slot: int) -> int:
        return self._set.dense[slot]

    def value_at(self, slot: int) -> int:
        return self.values[self._set.dense[slot]]

    def codes(self) -> list[int]:
        """Current codes; unstable under mutation."""
        return self._set.members()

    def current_values(self) -> set[int]:
        return {self.values[c] for c in self._set.members()}

    def min_code(self) -> int:
        """Code of the smallest current value (codes follow value order)."""
        return min(self._set.members())

    def min_value(self) -> int:
        return self.values[self.min_code()]

    def assigned_value(self) -> int:
        if self._set.size != 1:
            raise ValueError("domain is not bound")
        return self.values[self._set.dense[0]]

    # -- raw views for hot propagator loops -------------------------------

    @property
    def dense(self) -> list[int]:
        return self._set.dense

    @property
    def positions(self) -> list[int]:
        return self._set.positions

    # -- mutation ----------------------------------------------------------

    def remove_code(self, code: int) -> None:
        self._set.remove(code)

    def remove(self, value: int) -> None:
        code = self._code_of.get(value)
        if code is not None:
            self._set.remove(code)

    def assign_code(self, code: int) -> None:
        """Shrink the domain to ``{code}``; an absent code wipes it out."""
        if self.contains_code(code):
            self._set.keep_only(code)
        else:
            self._set.clear()

    def assign(self, value: int) -> None:
        code = self._code_of.get(value)
        if code is None:
            self._set.clear()
        else:
            self.assign_code(code)

    def delta_codes(self, last_size: int) -> Iterator[int]:
        """Codes removed since the domain had ``last_size`` members."""
        return self._set.removed_between(last_size)

    def check_permutation(self) -> None:
        self._set.check_permutation()


class Variable:
    """Decision variable: a solver index, a name, and a reversible domain."""

    __slots__ = ("index", "name", "domain")

    def __init__(self, index: int, name: str, domain: SparseSetDomain) -> None:
        self.index = index
        self.name = name
        self.domain = domain

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Variable({self.name!r}, dom={sorted(self.domain.current_values())})"
