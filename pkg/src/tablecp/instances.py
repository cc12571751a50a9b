"""Instance files and instance generators.

The interchange format is line-based UTF-8::

    csp <name>
    var <id> : <v1> <v2> ... <vk>
    table <id1> <id2> ... <idr>
    t <v1> <v2> ... <vr>
    ...
    end

``#`` starts a comment, blank lines are ignored, values are signed
integers. Tuples may mention values outside the declared domains; posting
filters them. Every parse error carries the offending line number.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Instance:
    name: str
    variables: tuple[tuple[str, tuple[int, ...]], ...]
    constraints: tuple[tuple[tuple[str, ...], Table], ...]

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def n_constraints(self) -> int:
        return len(self.constraints)


class ParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"expected an integer, got {token!r}") from None


def parse(text: str) -> Instance:
    name: str | None = None
    variables: list[tuple[str, tuple[int, ...]]] = []
    seen_vars: dict[str, int] = {}
    constraints: list[tuple[tuple[str, ...], Table]] = []
    scope: tuple[str, ...] | None = None
    rows: list[tuple[int, ...]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]

        if name is None:
            if keyword != "csp" or len(tokens) != 2:
                raise ParseError(lineno, "expected header 'csp <name>'")
            name = tokens[1]
            continue

        if keyword == "csp":
            raise ParseError(lineno, "duplicate 'csp' header")

        if keyword == "var":
            if scope is not None:
                raise ParseError(lineno, "'var' inside an open table block")
            if len(tokens) < 4 or tokens[2] != ":":
                raise ParseError(lineno, "expected 'var <id> : <values...>'")
            var_id = tokens[1]
            if var_id in seen_vars:
                raise ParseError(lineno, f"duplicate variable id {var_id!r}")
            values = tuple(sorted({_int(t, lineno) for t in tokens[3:]}))
            seen_vars[var_id] = len(variables)
            variables.append((var_id, values))
        elif keyword == "table":
            if scope is not None:
                raise ParseError(lineno, "'table' inside an open table block")
            if len(tokens) < 2:
                raise ParseError(lineno, "'table' needs at least one variable id")
            ids = tuple(tokens[1:])
            for var_id in ids:
                if var_id not in seen_vars:
                    raise ParseError(lineno, f"undeclared variable {var_id!r}")
            if len(set(ids)) != len(ids):
                raise ParseError(lineno, "repeated variable in scope")
            scope = ids
            rows = []
        elif keyword == "t":
            if scope is None:
                raise ParseError(lineno, "tuple outside a table block")
            values = tuple(_int(t, lineno) for t in tokens[1:])
            if len(values) != len(scope):
                raise ParseError(
                    lineno, f"tuple of arity {len(values)} under a {len(scope)}-ary scope"
                )
            rows.append(values)
        elif keyword == "end":
            if scope is None:
                raise ParseError(lineno, "'end' without an open table block")
            if len(tokens) != 1:
                raise ParseError(lineno, "'end' takes no arguments")
            constraints.append((scope, tuple(rows)))
            scope = None
        else:
            raise ParseError(lineno, f"unknown keyword {keyword!r}")

    if name is None:
        raise ParseError(1, "empty input: expected header 'csp <name>'")
    if scope is not None:
        raise ParseError(len(text.splitlines()) + 1, "unterminated table block (missing 'end')")
    return Instance(name, tuple(variables), tuple(constraints))


def render(instance: Instance) -> str:
    out = [f"csp {instance.name}"]
    for var_id, values in instance.variables:
        out.append(f"var {var_id} : " + " ".join(str(v) for v in values))
    for scope, table in instance.constraints:
        out.append("table " + " ".join(scope))
        for row in table:
            out.append("t " + " ".join(str(v) for v in row))
        out.append("end")
    return "\n".join(out) + "\n"


def load(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def save(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(instance))


# -- generators ---------------------------------------------------------------


def generate_random(
    n_vars: int,
    dom_size: int,
    n_constraints: int,
    arity: int,
    n_tuples: int,
    seed: int,
    name: str | None = None,
) -> Instance:
    """Uniform random instance; a pure function of its parameters and seed.

    Scopes are sampled without replacement among the variables, tuples
    uniformly without duplicates from the full cross product.
    """
    if min(n_vars, dom_size, n_constraints, arity, n_tuples) < 1:
        raise ValueError("all parameters must be positive")
    if arity > n_vars:
        raise ValueError(f"arity {arity} exceeds variable count {n_vars}")
    space = dom_size**arity
    if n_tuples > space:
        raise ValueError(f"cannot draw {n_tuples} distinct tuples from {space}")

    rng = random.Random(seed)
    var_ids = [f"x{i}" for i in range(n_vars)]
    values = tuple(range(dom_size))
    constraints = []
    for _ in range(n_constraints):
        scope = tuple(sorted(rng.sample(var_ids, arity), key=var_ids.index))
        rows = []
        for encoded in rng.sample(range(space), n_tuples):
            row = []
            for _ in range(arity):
                encoded, v = divmod(encoded, dom_size)
                row.append(v)
            rows.append(tuple(row))
        constraints.append((scope, tuple(rows)))
    if name is None:
        name = f"rand-v{n_vars}-d{dom_size}-c{n_constraints}-a{arity}-t{n_tuples}-s{seed}"
    return Instance(name, tuple((v, values) for v in var_ids), tuple(constraints))


def ne_table(values_a: Iterable[int], values_b: Iterable[int]) -> Table:
    """Binary disequality as an explicit table over two value sets."""
    return tuple(
        (a, b) for a in sorted(set(values_a)) for b in sorted(set(values_b)) if a != b
    )


def _pairwise_ne(name: str, var_ids: Sequence[str], values: tuple[int, ...]) -> Instance:
    constraints = tuple(
        ((var_ids[i], var_ids[j]), ne_table(values, values))
        for i in range(len(var_ids))
        for j in range(i + 1, len(var_ids))
    )
    return Instance(name, tuple((v, values) for v in var_ids), constraints)


def generate_pigeonhole(n_pigeons: int, n_holes: int | None = None) -> Instance:
    """``n_pigeons`` pairwise-distinct variables over ``n_holes`` values
    (one fewer than the pigeons by default, i.e. unsatisfiable)."""
    if n_pigeons < 2:
        raise ValueError("need at least two pigeons")
    if n_holes is None:
        n_holes = n_pigeons - 1
    if n_holes < 1:
        raise ValueError("need at least one hole")
    var_ids = [f"p{i}" for i in range(n_pigeons)]
    return _pairwise_ne(
        f"pigeonhole-{n_pigeons}-{n_holes}", var_ids, tuple(range(n_holes))
    )


def generate_alldiff_pairs(n_vars: int, n_values: int) -> Instance:
    """Clique of pairwise disequalities over ``n_values``-value domains."""
    if n_vars < 2 or n_values < 1:
        raise ValueError("need at least two variables and one value")
    var_ids = [f"x{i}" for i in range(n_vars)]
    return _pairwise_ne(f"alldiff-{n_vars}-{n_values}", var_ids, tuple(range(n_values)))


def generate_latin(n: int) -> Instance:
    """n x n Latin square: one variable per cell, disequalities along rows
    and columns."""
    if n < 2:
        raise ValueError("side must be at least 2")
    values = tuple(range(n))
    ids = [[f"c{r}_{c}" for c in range(n)] for r in range(n)]
    variables = tuple((ids[r][c], values) for r in range(n) for c in range(n))
    constraints = []
    for r in range(n):
        for c1 in range(n):
            for c2 in range(c1 + 1, n):
                constraints.append(((ids[r][c1], ids[r][c2]), ne_table(values, values)))
    for c in range(n):
        for r1 in range(n):
            for r2 in range(r1 + 1, n):
                constraints.append(((ids[r1][c], ids[r2][c]), ne_table(values, values)))
    return Instance(f"latin-{n}", variables, tuple(constraints))
