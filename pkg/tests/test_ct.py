import itertools
import random

import pytest

from helpers import A, B, C, D, XYZ_TABLE, bits, bitset_contents, small_instance, xyz_solver
from tablecp import (
    DYNAMIC,
    INCREMENTAL,
    RESET,
    CompactTable,
    Inconsistency,
    build_solver,
    gac_fixpoint,
)


def post_xyz(**kwargs):
    solver, x, y, z = xyz_solver()
    constraint = CompactTable(solver.trail, [x, y, z], XYZ_TABLE, **kwargs)
    solver.post(constraint)
    return solver, constraint, x, y, z


def test_posting_drops_invalid_tuple_and_unsupported_value():
    _, c, x, y, z = post_xyz()
    # 9 input tuples, one invalid at post time -> 8 indexed tuples
    assert c.current.n_elements == 8
    assert bitset_contents(c.current) == set(range(8))
    # the value D of y occurs in no surviving tuple
    assert sorted(y.domain.current_values()) == [A, B]
    assert sorted(x.domain.current_values()) == [A, B]
    assert sorted(z.domain.current_values()) == [A, B, C]


def test_posting_builds_exact_support_rows():
    _, c, x, y, z = post_xyz()
    rows = {
        (0, A): "11101000",
        (0, B): "00010111",
        (1, A): "11010100",
        (1, B): "00101011",
        (2, A): "10010010",
        (2, B): "01001101",
        (2, C): "00100000",
    }
    for (pos, value), pattern in rows.items():
        var = (x, y, z)[pos]
        code = var.domain.code_of(value)
        assert c.support_row(pos, code) == (bits(pattern),)
    # unsupported value: all-zero row
    assert c.support_row(1, y.domain.code_of(D)) == (0,)


def test_posting_keeps_fully_valid_table():
    solver, x, y, *_ = xyz_solver()
    # x != y over asymmetric domains: all four tuples valid, nothing removed
    c = CompactTable(solver.trail, [x, y], [(A, B), (A, D), (B, A), (B, D)])
    assert c.current.n_elements == 4
    assert x.domain.size == 2 and y.domain.size == 3


def test_posting_unsatisfiable_table_fails_immediately():
    solver, x, y, _ = xyz_solver()
    with pytest.raises(Inconsistency):
        CompactTable(solver.trail, [x, y], [(5, 5)])


def test_duplicate_scope_variable_rejected():
    solver, x, _, _ = xyz_solver()
    with pytest.raises(ValueError):
        CompactTable(solver.trail, [x, x], [(A, A)])


def test_arity_mismatch_rejected():
    solver, x, y, _ = xyz_solver()
    with pytest.raises(ValueError):
        CompactTable(solver.trail, [x, y], [(A, A, A)])


def test_fixpoint_call_does_no_table_work():
    _, c, *_ = post_xyz()
    word_before = c.current.words[0].value
    assert c.propagate()
    assert c.current.words[0].value == word_before
    assert c.intersect_index_calls == 0


def test_propagation_after_external_removal():
    _, c, x, y, z = post_xyz(debug=True)
    x.domain.remove(A)
    assert c.propagate()
    assert c.current.words[0].value == bits("00010111")
    assert sorted(z.domain.current_values()) == [A, B]
    assert sorted(y.domain.current_values()) == [A, B]


@pytest.mark.parametrize("mode", [DYNAMIC, INCREMENTAL, RESET])
def test_update_modes_reach_identical_state(mode):
    _, c, x, y, z = post_xyz(update=mode, debug=True)
    x.domain.remove(A)
    assert c.propagate()
    assert c.current.words[0].value == bits("00010111")
    assert sorted(z.domain.current_values()) == [A, B]


def test_delta_and_domain_masks_are_equivalent():
    # With one value removed, dropping via the complement of the delta rows
    # equals keeping via the union of the remaining rows: both reduce the
    # full table to the same word.
    _, c, x, *_ = post_xyz()
    full = (1 << 8) - 1
    sup_a = c.support_row(0, x.domain.code_of(A))[0]
    sup_b = c.support_row(0, x.domain.code_of(B))[0]
    assert full & ~sup_a & full == full & sup_b == bits("00010111")


def test_assignments_narrow_table_to_brute_force_result():
    _, c, x, y, z = post_xyz(debug=True)
    x.domain.assign(A)
    y.domain.assign(B)
    assert c.propagate()
    # independent enumeration over the 8 indexed tuples
    expected = {
        t
        for t, row in enumerate(c._codes)
        if row[0] == x.domain.code_of(A) and row[1] == y.domain.code_of(B)
    }
    assert expected == {2, 4}
    assert bitset_contents(c.current) == expected
    z_values = {XYZ_TABLE[(0, 1, 2, 3, 5, 6, 7, 8)[t]][2] for t in expected}
    assert z.domain.current_values() == z_values == {B, C}


def test_wipeout_via_empty_table():
    solver, x, y, *_ = xyz_solver()
    c = CompactTable(solver.trail, [x, y], [(A, A), (B, B)])
    solver.post(c)
    x.domain.remove(A)
    assert c.propagate()
    assert sorted(y.domain.current_values()) == [B]
    x.domain.remove(B)
    assert not c.propagate()
    assert c.current.is_empty()


def test_residue_hits_skip_support_scans():
    _, c, x, y, z = post_xyz()
    x.domain.remove(A)
    assert c.propagate()
    calls = c.intersect_index_calls
    assert calls > 0
    residues_before = [list(r) for r in c._residues]
    # nothing changed since: every residue word still witnesses its support
    assert c.propagate()
    assert c.intersect_index_calls == calls
    assert [list(r) for r in c._residues] == residues_before


def test_disabling_residues_changes_scan_count_not_semantics():
    _, with_res, x1, y1, z1 = post_xyz(use_residues=True)
    _, without, x2, y2, z2 = post_xyz(use_residues=False)
    x1.domain.remove(A)
    x2.domain.remove(A)
    assert with_res.propagate() and without.propagate()
    assert with_res.current.words[0].value == without.current.words[0].value
    for v1, v2 in ((x1, x2), (y1, y2), (z1, z2)):
        assert v1.domain.current_values() == v2.domain.current_values()
    assert without.intersect_index_calls > with_res.intersect_index_calls


def test_backtracking_restores_table_and_domains():
    solver, c, x, y, z = post_xyz(debug=True)
    solver.trail.push_level()
    x.domain.remove(A)
    assert c.propagate()
    assert c.current.words[0].value == bits("00010111")
    solver.trail.restore_level()
    c.check_invariants()
    assert c.current.words[0].value == (1 << 8) - 1
    assert sorted(z.domain.current_values()) == [A, B, C]


@pytest.mark.parametrize(
    "flags",
    list(itertools.product([True, False], repeat=3)),
    ids=lambda f: f"res{int(f[0])}-bound{int(f[1])}-last{int(f[2])}",
)
def test_feature_toggles_never_change_search_trees(flags):
    use_residues, skip_bound, skip_last_modified = flags
    for i in range(25):
        instance = small_instance(i)
        reference = build_solver(instance, "ct").search(max_solutions=None)
        tuned = build_solver(
            instance,
            "ct",
            use_residues=use_residues,
            skip_bound=skip_bound,
            skip_last_modified=skip_last_modified,
        ).search(max_solutions=None)
        assert set(tuned.solutions) == set(reference.solutions)
        assert (tuned.stats.nodes, tuned.stats.failures) == (
            reference.stats.nodes,
            reference.stats.failures,
        )


def test_fixpoints_match_brute_force_on_random_instances():
    for i in range(150):
        instance = small_instance(i)
        solver = build_solver(instance, "ct", debug=True)
        ok = solver.propagate_all()
        reference = gac_fixpoint(instance)
        if reference is None:
            assert not ok, instance.name
        else:
            assert ok, instance.name
            assert solver.current_domains() == reference, instance.name


def test_single_value_domains_and_single_tuple_tables():
    rng = random.Random(5)
    for _ in range(30):
        solver, x, y, z = xyz_solver()
        row = (rng.choice((A, B)), rng.choice((A, B, D)), rng.choice((A, B, C)))
        c = CompactTable(solver.trail, [x, y, z], [row])
        solver.post(c)
        assert c.propagate()
        assert (x.domain.assigned_value(), y.domain.assigned_value(),
                z.domain.assigned_value()) == row
