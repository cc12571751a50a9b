"""Shared fixtures-by-hand for the test suite."""

from __future__ import annotations

import random

from tablecp import (
    Instance,
    ReversibleSparseBitSet,
    Solver,
    SparseSetDomain,
    Trail,
    generate_random,
    words_from_indices,
)

# Letter values for the worked 3-variable example; the table below leaves
# one tuple invalid at post time (C is not a y-value) and one y-value (D)
# unsupported.
A, B, C, D = 0, 1, 2, 3

XYZ_DOMAINS = {"x": (A, B), "y": (A, B, D), "z": (A, B, C)}
XYZ_TABLE = (
    (A, A, A),
    (A, A, B),
    (A, B, C),
    (B, A, A),
    (A, C, B),
    (A, B, B),
    (B, A, B),
    (B, B, A),
    (B, B, B),
)

# x != y with asymmetric domains, written out as a table.
NE_INSTANCE = Instance(
    "pair-ne",
    (("x", (1, 2, 3)), ("y", (1, 2))),
    ((("x", "y"), ((1, 2), (2, 1), (3, 1), (3, 2))),),
)

XYZ_INSTANCE = Instance(
    "xyz",
    tuple((name, XYZ_DOMAINS[name]) for name in ("x", "y", "z")),
    ((("x", "y", "z"), XYZ_TABLE),),
)


def xyz_solver() -> tuple[Solver, ...]:
    """Solver holding the x, y, z variables (no constraint posted yet)."""
    solver = Solver()
    x = solver.add_variable("x", XYZ_DOMAINS["x"])
    y = solver.add_variable("y", XYZ_DOMAINS["y"])
    z = solver.add_variable("z", XYZ_DOMAINS["z"])
    return solver, x, y, z


def bits(pattern: str) -> int:
    """Bit string to integer, character i giving bit i (element i)."""
    return sum(1 << i for i, ch in enumerate(pattern) if ch == "1")


def bitset_contents(bs: ReversibleSparseBitSet) -> set[int]:
    """Present elements, reconstructed word by word."""
    out = set()
    for off in range(bs.n_words):
        w = bs.words[off].value
        while w:
            low = w & -w
            out.add(off * 64 + low.bit_length() - 1)
            w ^= low
    return out


def small_instance(i: int) -> "Instance":
    """Deterministic small random instance #i for differential testing."""
    rng = random.Random(424200 + i)
    n_vars = rng.randint(2, 5)
    dom = rng.randint(2, 6)
    n_constraints = rng.randint(1, 4)
    arity = rng.randint(2, min(4, n_vars))
    n_tuples = rng.randint(1, min(200, dom**arity))
    return generate_random(n_vars, dom, n_constraints, arity, n_tuples, seed=900000 + i)


def restore_model_sequence(rng: random.Random, max_words: int = 8) -> None:
    """One randomized push/mutate/restore sequence checked against plain-set
    snapshots; asserts bit-set contents, the bit-set class invariant, and
    domain contents after every restore."""
    trail = Trail()
    p = rng.randint(1, max_words)
    n = rng.randint((p - 1) * 64 + 1, p * 64)
    present = {e for e in range(n) if rng.random() < 0.85}
    if not present:
        present = {rng.randrange(n)}
    bs = ReversibleSparseBitSet(trail, n, present)
    model_bits = set(present)

    values = list(range(rng.randint(1, 10)))
    dom = SparseSetDomain(trail, values)
    model_dom = set(values)

    snapshots: list[tuple[set[int], set[int]]] = []

    def check() -> None:
        bs.check_invariants()
        assert bitset_contents(bs) == model_bits
        assert dom.current_values() == model_dom
        dom.check_permutation()

    for _ in range(rng.randint(3, 20)):
        roll = rng.random()
        if roll < 0.25:
            trail.push_level()
            snapshots.append((set(model_bits), set(model_dom)))
        elif roll < 0.45 and snapshots:
            trail.restore_level()
            model_bits, model_dom = snapshots.pop()
            check()
        elif roll < 0.80:
            # one full mask cycle, possibly complemented
            bs.clear_mask()
            union: set[int] = set()
            for _ in range(rng.randint(0, 3)):
                chunk = {e for e in range(n) if rng.random() < 0.3}
                bs.add_to_mask(words_from_indices(chunk, bs.n_words))
                union |= chunk
            if rng.random() < 0.5:
                bs.reverse_mask()
                keep = set(range(n)) - union
            else:
                keep = union
            probe = {e for e in range(n) if rng.random() < 0.1}
            hit = bs.intersect_index(words_from_indices(probe, bs.n_words))
            assert (hit == -1) == (not (model_bits & probe))
            bs.intersect_with_mask()
            model_bits &= keep
        else:
            if model_dom and rng.random() < 0.8:
                v = rng.choice(values)
                dom.remove(v)
                model_dom.discard(v)
            elif model_dom:
                v = rng.choice(sorted(model_dom))
                dom.assign(v)
                model_dom = {v}
    while snapshots:
        trail.restore_level()
        model_bits, model_dom = snapshots.pop()
        check()
    check()
