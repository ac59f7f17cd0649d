"""CNF formulas, DIMACS parsing, and a brute-force model enumeration oracle.

Clauses store literals positionally, duplicates included (repeating a literal
does not change the truth value, and downstream compilers want the literals
as written); width counts distinct literals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

ENUMERATION_GUARD = 24


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple = ()

    def __post_init__(self):
        if self.variable_count < 1:
            raise ValueError("variable_count must be positive")
        norm = []
        for clause in self.clauses:
            lits = tuple(int(l) for l in clause)
            for l in lits:
                if l == 0 or abs(l) > self.variable_count:
                    raise ValueError(f"literal {l} out of range 1..{self.variable_count}")
            norm.append(lits)
        object.__setattr__(self, "clauses", tuple(norm))

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    @property
    def width(self) -> int:
        """Max number of distinct literals in any clause (k of k-SAT)."""
        return max((len(set(c)) for c in self.clauses), default=0)

    @property
    def has_empty_clause(self) -> bool:
        return any(len(c) == 0 for c in self.clauses)


def distinct_literals(clause) -> tuple:
    """Clause literals deduplicated, first-occurrence order preserved."""
    seen = []
    for l in clause:
        if l not in seen:
            seen.append(l)
    return tuple(seen)


def parse_dimacs(text: str) -> CnfFormula:
    n = m = None
    clauses = []
    current = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if n is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            n, m = int(parts[2]), int(parts[3])
            continue
        if n is None:
            raise ValueError(f"line {lineno}: clause before 'p cnf' header")
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > n:
                    raise ValueError(f"line {lineno}: literal {lit} exceeds {n} variables")
                current.append(lit)
    if n is None:
        raise ValueError("missing 'p cnf' header")
    if current:
        raise ValueError("unterminated clause (missing trailing 0)")
    if len(clauses) != m:
        raise ValueError(f"header declares {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.variable_count} {f.clause_count}"]
    for clause in f.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def evaluate(f: CnfFormula, assignment: dict) -> bool:
    """True iff every clause has a satisfied literal; assignment must be total."""
    for j in range(1, f.variable_count + 1):
        if j not in assignment:
            raise ValueError(f"assignment is partial: variable {j} missing")
    for clause in f.clauses:
        if not any(assignment[abs(l)] == (l > 0) for l in clause):
            return False
    return True


def _assignment_from_index(index: int, n: int) -> dict:
    # s_1 is the most significant bit: lexicographic order over (s_1..s_n), F<T
    return {j: bool((index >> (n - j)) & 1) for j in range(1, n + 1)}


def enumerate_models(f: CnfFormula, cap: int | None = None):
    """All satisfying assignments in lexicographic order; returns (models, truncated)."""
    n = f.variable_count
    if n > ENUMERATION_GUARD:
        raise ValueError(f"{n} variables exceed the enumeration guard ({ENUMERATION_GUARD})")
    clauses = [tuple(c) for c in f.clauses]
    models = []
    truncated = False
    for index in range(1 << n):
        a = _assignment_from_index(index, n)
        if all(any(a[abs(l)] == (l > 0) for l in clause) for clause in clauses):
            if cap is not None and len(models) >= cap:
                truncated = True
                break
            models.append(a)
    return models, truncated


def model_count(f: CnfFormula) -> int:
    models, _ = enumerate_models(f)
    return len(models)


def random_cnf(rng: random.Random, max_vars: int = 4, max_clauses: int = 5,
               max_width: int = 3) -> CnfFormula:
    """Seeded random CNF; duplicate literals within a clause are allowed."""
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(m):
        w = rng.randint(1, max_width)
        clause = tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(w))
        clauses.append(clause)
    return CnfFormula(n, tuple(clauses))


def assignment_bits(assignment: dict, n: int) -> str:
    return "".join("1" if assignment[j] else "0" for j in range(1, n + 1))
