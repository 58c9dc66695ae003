"""CNF data model, DIMACS parsing, NAE semantics, and incidence graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FormatError
from .graphs import Graph

# Total truth assignment, variable index -> value.
Assignment = dict[int, bool]


@dataclass(frozen=True)
class Literal:
    """A variable with a polarity; `var` is a 1-based index."""

    var: int
    negated: bool = False

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"variable index must be >= 1, got {self.var}")

    @property
    def signed(self) -> int:
        return -self.var if self.negated else self.var

    @staticmethod
    def from_signed(lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is reserved as the clause terminator")
        return Literal(abs(lit), lit < 0)

    def value_under(self, assignment: Assignment) -> bool:
        v = assignment[self.var]
        return not v if self.negated else v


@dataclass(frozen=True)
class Clause:
    """An ordered disjunction of 2 or 3 literals over distinct variables."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        if len(self.literals) not in (2, 3):
            raise ValueError(f"clause length must be 2 or 3, got {len(self.literals)}")
        variables = [lit.var for lit in self.literals]
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable in clause")

    @staticmethod
    def from_signed(*lits: int) -> "Clause":
        return Clause(tuple(Literal.from_signed(x) for x in lits))

    def variables(self) -> tuple[int, ...]:
        return tuple(lit.var for lit in self.literals)

    def signed(self) -> tuple[int, ...]:
        return tuple(lit.signed for lit in self.literals)


@dataclass(frozen=True)
class CnfFormula:
    """A CNF formula over variables 1..num_vars; the clause list may be empty."""

    num_vars: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("variable count must be non-negative")
        for clause in self.clauses:
            for lit in clause.literals:
                if lit.var > self.num_vars:
                    raise ValueError(
                        f"variable {lit.var} exceeds declared count {self.num_vars}"
                    )

    @staticmethod
    def from_ints(num_vars: int, clause_lists) -> "CnfFormula":
        return CnfFormula(
            num_vars, tuple(Clause.from_signed(*lits) for lits in clause_lists)
        )


def parse_cnf(text: str | bytes) -> CnfFormula:
    """Parse DIMACS CNF: `c` comments, one `p cnf <n> <m>` header, 0-terminated clauses."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    tokens: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise FormatError("duplicate 'p cnf' header")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise FormatError(f"malformed header: {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError(f"malformed header: {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise FormatError(f"malformed header: {line!r}")
            continue
        if header is None:
            raise FormatError("clause data before 'p cnf' header")
        tokens.extend(line.split())
    if header is None:
        raise FormatError("missing 'p cnf' header")
    num_vars, num_clauses = header

    clauses: list[Clause] = []
    current: list[int] = []
    for tok in tokens:
        try:
            lit = int(tok)
        except ValueError:
            raise FormatError(f"non-integer token {tok!r} in clause data") from None
        if lit == 0:
            clauses.append(_build_clause(current, num_vars))
            current = []
        else:
            if abs(lit) > num_vars:
                raise FormatError(f"variable {abs(lit)} out of range 1..{num_vars}")
            current.append(lit)
    if current:
        raise FormatError("unterminated clause at end of input")
    if len(clauses) != num_clauses:
        raise FormatError(
            f"header promises {num_clauses} clauses, found {len(clauses)}"
        )
    return CnfFormula(num_vars, tuple(clauses))


def _build_clause(lits: list[int], num_vars: int) -> Clause:
    if len(lits) not in (2, 3):
        raise FormatError(f"clause length must be 2 or 3, got {len(lits)}")
    variables = [abs(x) for x in lits]
    if len(set(variables)) != len(variables):
        raise FormatError(f"duplicate variable in clause {lits}")
    return Clause.from_signed(*lits)


def emit_cnf(f: CnfFormula) -> str:
    """Emit DIMACS text with LF line endings; parse_cnf(emit_cnf(f)) == f."""
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    for clause in f.clauses:
        lines.append(" ".join(str(s) for s in clause.signed()) + " 0")
    return "\n".join(lines) + "\n"


def is_monotone_3sat(f: CnfFormula) -> bool:
    """True iff every clause has exactly three literals, all unnegated."""
    return all(
        len(cl.literals) == 3 and not any(lit.negated for lit in cl.literals)
        for cl in f.clauses
    )


def nae_satisfies(f: CnfFormula, assignment: Assignment) -> bool:
    """True iff no clause gets all-equal literal values (2-clauses: values differ)."""
    for x in range(1, f.num_vars + 1):
        if x not in assignment:
            raise ValueError(f"assignment is missing variable {x}")
    for clause in f.clauses:
        values = [lit.value_under(assignment) for lit in clause.literals]
        if all(values) or not any(values):
            return False
    return True


def complement_assignment(assignment: Assignment) -> Assignment:
    return {x: not v for x, v in assignment.items()}


def occurrence_counts(f: CnfFormula) -> dict[int, int]:
    """Clause-membership count per variable, including zeroes for unused ones."""
    counts = {x: 0 for x in range(1, f.num_vars + 1)}
    for clause in f.clauses:
        for x in clause.variables():
            counts[x] += 1
    return counts


def incidence_graph(
    f: CnfFormula, variant: str
) -> tuple[Graph, dict[int, int], dict[int, int]]:
    """Co-occurrence graph of a monotone 3-SAT formula.

    Variant "A": one vertex per variable, an edge between two variables iff
    they share a clause.  Variant "B": variant A plus one vertex per clause,
    adjacent to that clause's three variable vertices.

    Returns (graph, variable -> vertex, clause index -> vertex); the clause
    map is empty for variant A.  Clause indices are 1-based.
    """
    if variant not in ("A", "B"):
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    if not is_monotone_3sat(f):
        raise ValueError("incidence graph requires monotone 3-SAT input")
    n = f.num_vars
    edges: set[tuple[int, int]] = set()
    for clause in f.clauses:
        for u, v in itertools.combinations(clause.variables(), 2):
            edges.add((u, v) if u < v else (v, u))
    var_vertex = {x: x for x in range(1, n + 1)}
    clause_vertex: dict[int, int] = {}
    num_vertices = n
    if variant == "B":
        for j, clause in enumerate(f.clauses, start=1):
            cv = n + j
            clause_vertex[j] = cv
            for x in clause.variables():
                edges.add((x, cv))
        num_vertices = n + len(f.clauses)
    return Graph(num_vertices, edges), var_vertex, clause_vertex
