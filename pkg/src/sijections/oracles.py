"""Counting oracles that do not go through any sijection.

The operator formula expands
``prod_{p<q} (E_{k_p} + E_{k_q}^{-1} - E_{k_p} E_{k_q}^{-1})`` into monomials.
Each monomial is a pure shift of the arguments, so applying it to the
Gelfand-Tsetlin polynomial and then specializing is the same as evaluating
the polynomial at the shifted point.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from fractions import Fraction
from math import factorial

from .codec import FormatError
from .gt import gt_polynomial

DEFAULT_CAP = 7

# P shifts k_p up, Q shifts k_q down, PQ does both with a minus sign
CHOICES = ("P", "Q", "PQ")


def monomial_shift(choice, n):
    """Shift vector and sign of one monomial, given as a choice per pair ``p < q``."""
    shift = [0] * n
    sign = 1
    for (p, q), c in zip(itertools.combinations(range(n), 2), choice):
        if c in ("P", "PQ"):
            shift[p] += 1
        if c in ("Q", "PQ"):
            shift[q] -= 1
        if c == "PQ":
            sign = -sign
    return tuple(shift), sign


def operator_terms(n: int) -> dict:
    """Coefficient of each shift vector in the expanded operator, built pair by pair."""
    terms = {(0,) * n: 1}
    for p, q in itertools.combinations(range(n), 2):
        nxt = defaultdict(int)
        for shift, coef in terms.items():
            up = list(shift)
            up[p] += 1
            nxt[tuple(up)] += coef
            down = list(shift)
            down[q] -= 1
            nxt[tuple(down)] += coef
            both = list(up)
            both[q] -= 1
            nxt[tuple(both)] -= coef
        terms = {s: c for s, c in nxt.items() if c}
    return terms


def operator_formula(k, cap: int = DEFAULT_CAP, method: str = "grouped") -> int:
    """Signed number of monotone triangles with bottom row ``k``.

    ``method="monomials"`` walks all ``3^C(n,2)`` monomials one by one and is
    the reference; ``"grouped"`` collects equal shifts first.
    """
    k = tuple(int(v) for v in k)
    n = len(k)
    if n > cap:
        raise ValueError(f"n = {n} exceeds the cap {cap}")
    if method == "monomials":
        total = 0
        for choice in itertools.product(CHOICES, repeat=n * (n - 1) // 2):
            shift, sign = monomial_shift(choice, n)
            total += sign * gt_polynomial(tuple(a + s for a, s in zip(k, shift)))
        return total
    if method == "grouped":
        return sum(coef * gt_polynomial(tuple(a + s for a, s in zip(k, shift)))
                   for shift, coef in operator_terms(n).items())
    raise ValueError(f"unknown method {method!r}")


def asm_formula(n: int) -> int:
    """``prod_{i=0}^{n-1} (3i+1)! / (n+i)!``."""
    if n < 1:
        raise ValueError("n must be positive")
    value = Fraction(1)
    for i in range(n):
        value *= Fraction(factorial(3 * i + 1), factorial(n + i))
    return int(value)


# alternating sign matrices

class ASMError(FormatError):
    """A matrix that is not an alternating sign matrix."""


def _line_problem(line):
    running = 0
    for v in line:
        if v not in (-1, 0, 1):
            return f"entry {v} not in {{-1, 0, 1}}"
        running += v
        if running not in (0, 1):
            return "nonzero entries do not alternate starting with 1"
    if running != 1:
        return f"sum is {running}, not 1"
    return None


def check_asm(A):
    """Raise :class:`ASMError` naming every violated row and column."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise ASMError("matrix is not square")
    problems = []
    for i, r in enumerate(A):
        why = _line_problem(r)
        if why:
            problems.append(f"row {i + 1}: {why}")
    for j in range(n):
        why = _line_problem([A[i][j] for i in range(n)])
        if why:
            problems.append(f"column {j + 1}: {why}")
    if problems:
        raise ASMError("; ".join(problems))


def asm_list(n: int):
    """All ``n x n`` alternating sign matrices, built row by row on partial column sums."""
    out = []

    def rows_for(sums):
        # next row r with sums + r in {0,1}^n and r alternating from +1 with total 1
        def extend(j, acc, running):
            if j == n:
                if running == 1:
                    yield tuple(acc)
                return
            for v in (0, 1, -1):
                s = sums[j] + v
                r = running + v
                if s in (0, 1) and r in (0, 1):
                    acc.append(v)
                    yield from extend(j + 1, acc, r)
                    acc.pop()
        yield from extend(0, [], 0)

    def grow(rows, sums):
        if len(rows) == n:
            if all(s == 1 for s in sums):
                out.append(tuple(rows))
            return
        for r in rows_for(sums):
            grow(rows + [r], [a + b for a, b in zip(sums, r)])

    grow([], [0] * n)
    return out


def asm_to_mt(A):
    """Row ``i`` of the triangle lists the columns whose first ``i`` entries sum to 1."""
    A = [list(r) for r in A]
    check_asm(A)
    n = len(A)
    sums = [0] * n
    rows = []
    for r in A:
        sums = [a + b for a, b in zip(sums, r)]
        rows.append(tuple(j + 1 for j in range(n) if sums[j] == 1))
    return tuple(rows)


def mt_to_asm(rows):
    """Inverse of :func:`asm_to_mt` on triangles with bottom row ``1..n``."""
    rows = [tuple(r) for r in rows]
    n = len(rows)
    if rows and rows[-1] != tuple(range(1, n + 1)):
        raise FormatError(f"bottom row must be 1..{n}")
    for i, r in enumerate(rows):
        if len(r) != i + 1:
            raise FormatError(f"row {i + 1} has length {len(r)}")
        if any(u >= v for u, v in zip(r, r[1:])):
            raise FormatError(f"row {i + 1} is not strictly increasing")
        if i and not all(rows[i][j] <= r_ <= rows[i][j + 1] for j, r_ in enumerate(rows[i - 1])):
            raise FormatError(f"row {i} does not interlace row {i + 1}")
    A = []
    prev = set()
    for r in rows:
        cur = set(r)
        A.append(tuple((j in cur) - (j in prev) for j in range(1, n + 1)))
        prev = cur
    check_asm(A)
    return tuple(A)


def parse_asm_text(text: str):
    """Read an ASM from a JSON array of arrays or a whitespace-separated grid."""
    text = text.strip()
    try:
        if text.startswith("["):
            A = json.loads(text)
        else:
            A = [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]
    except ValueError as exc:
        raise FormatError(f"cannot read matrix: {exc}") from exc
    if not isinstance(A, list) or not all(isinstance(r, list) for r in A):
        raise FormatError("matrix must be a list of rows")
    if any(isinstance(v, bool) or not isinstance(v, int) for r in A for v in r):
        raise FormatError("matrix entries must be integers")
    return A
