"""Reversible sparse bit-set over 64-bit words.

Element ``e`` of the universe ``0..n-1`` lives at bit ``e % 64`` (LSB first)
of word ``e // 64``. The words are reversible cells; ``index`` is a plain
permutation of word offsets keeping the non-zero words in its first
``limit + 1`` slots, so every operation skips words that are already empty.

``index`` is deliberately not trailed. Words only ever lose bits between a
push and a restore, and a word that becomes zero is swapped just past the
shrinking limit, i.e. swaps stay inside the prefix that was active at level
entry. Restoring the words and the limit therefore re-establishes the class
invariant without touching ``index``.

The scratch ``mask`` is plain storage rebuilt by each caller: only slots
behind currently active offsets are ever defined; inactive slots may hold
stale garbage and must never be read.
"""

from __future__ import annotations

from typing import Collection, Sequence

from .trail import ReversibleInt, Trail

WORD_BITS = 64
WORD_MASK = (1 << WORD_BITS) - 1


def words_from_indices(indices: Collection[int], n_words: int) -> list[int]:
    """Pack bit indices into a list of ``n_words`` 64-bit words."""
    words = [0] * n_words
    for e in indices:
        words[e >> 6] |= 1 << (e & 63)
    return words


class ReversibleSparseBitSet:
    """Bit-set with trailed words, trailed limit, untrailed index and mask.

    Class invariant (restored by backtracking as well):

    * ``index`` is a permutation of ``0..n_words-1``;
    * ``words[index[i]] != 0`` iff ``i <= limit``.
    """

    __slots__ = ("words", "index", "limit", "mask", "n_words", "n_elements")

    def __init__(
        self,
        trail: Trail,
        n_elements: int,
        present: Collection[int] | None = None,
    ) -> None:
        """Build over ``n_elements`` elements.

        ``present`` lists the initially present elements; ``None`` means all
        of them. Padding bits of the last word stay zero either way.
        """
        if n_elements < 1:
            raise ValueError("bit-set needs at least one element")
        p = (n_elements + WORD_BITS - 1) >> 6
        if present is None:
            raw = [WORD_MASK] * p
            tail = n_elements - (p - 1) * WORD_BITS
            raw[p - 1] = (1 << tail) - 1
        else:
            raw = [0] * p
            for e in present:
                if not 0 <= e < n_elements:
                    raise ValueError(f"element {e} outside 0..{n_elements - 1}")
                raw[e >> 6] |= 1 << (e & 63)
        self.n_elements = n_elements
        self.n_words = p
        self.words = [ReversibleInt(trail, w) for w in raw]
        nonzero = [off for off in range(p) if raw[off]]
        zero = [off for off in range(p) if not raw[off]]
        self.index = nonzero + zero
        self.limit = ReversibleInt(trail, len(nonzero) - 1)
        self.mask = [0] * p

    def is_empty(self) -> bool:
        return self.limit.value == -1

    def contains(self, e: int) -> bool:
        """Membership of one element (not meant for bulk enumeration)."""
        return (self.words[e >> 6].value >> (e & 63)) & 1 == 1

    # -- mask building (active offsets only) --------------------------------

    def clear_mask(self) -> None:
        index, mask = self.index, self.mask
        for i in range(self.limit.value + 1):
            mask[index[i]] = 0

    def reverse_mask(self) -> None:
        index, mask = self.index, self.mask
        for i in range(self.limit.value + 1):
            off = index[i]
            mask[off] = ~mask[off] & WORD_MASK

    def add_to_mask(self, m: Sequence[int]) -> None:
        if len(m) != self.n_words:
            raise ValueError(f"mask operand has {len(m)} words, expected {self.n_words}")
        index, mask = self.index, self.mask
        for i in range(self.limit.value + 1):
            off = index[i]
            mask[off] |= m[off]

    # -- the only mutator ---------------------------------------------------

    def intersect_with_mask(self) -> None:
        """Drop every present element whose mask bit is zero.

        Scans active offsets from the back so that swapping a newly zeroed
        word past the limit never skips an entry.
        """
        index, mask, words = self.index, self.mask, self.words
        lim = self.limit.value
        for i in range(lim, -1, -1):
            off = index[i]
            cell = words[off]
            w = cell.value & mask[off]
            if w != cell.value:
                cell.set(w)
                if w == 0:
                    index[i] = index[lim]
                    index[lim] = off
                    lim -= 1
        if lim != self.limit.value:
            self.limit.set(lim)

    # -- queries --------------------------------------------------------------

    def intersect_index(self, m: Sequence[int]) -> int:
        """Offset of some word where the set intersects ``m``, else -1."""
        if len(m) != self.n_words:
            raise ValueError(f"mask operand has {len(m)} words, expected {self.n_words}")
        index, words = self.index, self.words
        for i in range(self.limit.value + 1):
            off = index[i]
            if words[off].value & m[off]:
                return off
        return -1

    def check_invariants(self) -> None:
        """Assert the class invariant; used by tests and debug runs."""
        p = self.n_words
        assert sorted(self.index) == list(range(p)), "index is not a permutation"
        lim = self.limit.value
        for i in range(p):
            nonzero = self.words[self.index[i]].value != 0
            assert nonzero == (i <= lim), (
                f"word at index slot {i} (offset {self.index[i]}) "
                f"{'non-zero' if nonzero else 'zero'} with limit {lim}"
            )
