import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import NE_INSTANCE
from tablecp import (
    Instance,
    ParseError,
    build_solver,
    gac_fixpoint,
    generate_alldiff_pairs,
    generate_latin,
    generate_pigeonhole,
    generate_random,
    ne_table,
    parse,
    render,
)

PAIR_TEXT = """\
csp pair-ne
# x and y must differ
var x : 1 2 3
var y : 1 2
table x y
t 1 2
t 2 1
t 3 1
t 3 2
end
"""


def test_parse_pair_instance():
    instance = parse(PAIR_TEXT)
    assert instance == NE_INSTANCE
    assert instance.n_variables == 2
    assert instance.n_constraints == 1
    assert len(instance.constraints[0][1]) == 4


def test_parse_no_constraints():
    instance = parse("csp empty\nvar a : 0 1\n")
    assert instance.n_constraints == 0


def test_round_trip_fixed():
    assert parse(render(NE_INSTANCE)) == NE_INSTANCE


def test_comments_and_blank_lines_ignored():
    text = "\n# header comment\ncsp c  # trailing\n\nvar v : 3 1 2\n"
    instance = parse(text)
    assert instance.variables == (("v", (1, 2, 3)),)


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("var x : 1\n", 1, "header"),
        ("csp a\ncsp b\n", 2, "duplicate 'csp'"),
        ("csp a\nfrob x\n", 2, "unknown keyword"),
        ("csp a\nvar x : 1\nvar x : 2\n", 3, "duplicate variable"),
        ("csp a\nvar x : 1\ntable x y\n", 3, "undeclared"),
        ("csp a\nvar x : 1\ntable x x\n", 3, "repeated variable"),
        ("csp a\nvar x : 1\nvar y : 1\ntable x y\nt 1\nend\n", 5, "arity"),
        ("csp a\nvar x : 1\nt 1\n", 3, "outside"),
        ("csp a\nend\n", 2, "'end' without"),
        ("csp a\nvar x : 1\ntable x\nt 1\n", 5, "missing 'end'"),
        ("csp a\nvar x : one\n", 2, "integer"),
        ("csp a\nvar x :\n", 2, "var"),
        ("", 1, "empty input"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_tuples_may_mention_foreign_values():
    text = "csp a\nvar x : 1 2\nvar y : 1 2\ntable x y\nt 1 9\nt 2 1\nend\n"
    instance = parse(text)
    solver = build_solver(instance, "ct")
    assert solver.propagate_all()
    assert solver.current_domains() == [{2}, {1}]


def test_generator_determinism():
    a = generate_random(5, 4, 3, 2, 10, seed=99)
    b = generate_random(5, 4, 3, 2, 10, seed=99)
    assert a == b
    c = generate_random(5, 4, 3, 2, 10, seed=100)
    assert c != a


def test_generator_rejects_oversized_tables():
    with pytest.raises(ValueError):
        generate_random(4, 3, 1, 2, 10, seed=0)
    with pytest.raises(ValueError):
        generate_random(2, 3, 1, 5, 1, seed=0)
    with pytest.raises(ValueError):
        generate_random(2, 3, 0, 2, 1, seed=0)


def test_full_relation_constrains_nothing():
    instance = generate_random(3, 2, 1, 2, 4, seed=1)
    _, table = instance.constraints[0]
    assert sorted(table) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    solver = build_solver(instance, "ct")
    assert solver.propagate_all()
    assert all(len(d) == 2 for d in solver.current_domains())


def test_generated_instance_agrees_with_reference():
    instance = generate_random(5, 5, 3, 3, 30, seed=7)
    solver = build_solver(instance, "ct")
    ok = solver.propagate_all()
    reference = gac_fixpoint(instance)
    assert ok == (reference is not None)
    if reference is not None:
        assert solver.current_domains() == reference


def test_ne_table_matches_pair_instance():
    assert ne_table((1, 2, 3), (1, 2)) == ((1, 2), (2, 1), (3, 1), (3, 2))


def test_alldiff_pair_generator():
    instance = generate_alldiff_pairs(2, 3)
    assert instance.constraints[0][1] == ne_table((0, 1, 2), (0, 1, 2))
    assert len(instance.constraints) == 1


def test_pigeonhole_shape():
    instance = generate_pigeonhole(4)
    assert instance.n_variables == 4
    assert instance.n_constraints == 6
    assert all(len(values) == 3 for _, values in instance.variables)


def test_latin_shape():
    instance = generate_latin(3)
    assert instance.n_variables == 9
    assert instance.n_constraints == 2 * 3 * 3  # three pairs per row/column


@settings(max_examples=60, deadline=None)
@given(
    n_vars=st.integers(2, 6),
    dom=st.integers(1, 5),
    n_constraints=st.integers(1, 4),
    seed=st.integers(0, 10**6),
    data=st.data(),
)
def test_round_trip_random(n_vars, dom, n_constraints, seed, data):
    arity = data.draw(st.integers(2, n_vars))
    n_tuples = data.draw(st.integers(1, min(50, dom**arity)))
    instance = generate_random(n_vars, dom, n_constraints, arity, n_tuples, seed)
    assert parse(render(instance)) == instance
