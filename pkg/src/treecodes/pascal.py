"""Pascal matrix, exact minor determinants and the total-non-singularity oracle.

A lower-triangular matrix is totally-non-singular (TNS) when every
"staircase" minor -- row set I and column set J of equal size r, both
strictly increasing and with i_s >= j_s for every s -- is non-singular.
The staircase condition includes all 1x1 minors on or below the diagonal,
so a TNS matrix has no zero entries in its lower triangle.

All arithmetic is exact over Python ints; determinants use fraction-free
(Bareiss) elimination so minors of the Pascal matrix (magnitudes up to
roughly 2^(n^2)) lose no precision.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .core import BudgetExceededError

DEFAULT_MINOR_BUDGET = 2_000_000


@dataclass(frozen=True)
class LowerTriangularMatrix:
    """Exact-integer lower-triangular matrix; row i stores entries (i,0..i)."""

    rows: tuple

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != i + 1:
                raise ValueError("row %d must have %d entries" % (i, i + 1))

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError("entry (%d,%d) outside %dx%d matrix" % (i, j, self.n, self.n))
        return self.rows[i][j] if j <= i else 0

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LowerTriangularMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "LowerTriangularMatrix":
        return cls(tuple(tuple(1 if j == i else 0 for j in range(i + 1)) for i in range(n)))


@dataclass(frozen=True)
class MinorIndexPair:
    """Row/column index sets of a minor; both strictly increasing, same size."""

    I: tuple
    J: tuple

    def __post_init__(self):
        if len(self.I) != len(self.J) or not self.I:
            raise ValueError("I and J must be non-empty and of equal size")
        for seq in (self.I, self.J):
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise ValueError("index sets must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.I)

    def is_staircase(self) -> bool:
        return all(i >= j for i, j in zip(self.I, self.J))


@dataclass(frozen=True)
class TnsVerdict:
    ok: bool
    witness: Optional[MinorIndexPair]
    minors_checked: int

    def __bool__(self):
        return self.ok


def binomial(i: int, j: int) -> int:
    """Exact binomial coefficient C(i, j); zero when j > i."""
    if i < 0 or j < 0:
        raise ValueError("binomial arguments must be non-negative")
    if j > i:
        return 0
    return math.comb(i, j)


def pascal_matrix(n: int) -> LowerTriangularMatrix:
    """The (n+1) x (n+1) Pascal matrix, entry(i, j) = C(i, j), 0-indexed."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return LowerTriangularMatrix(
        tuple(tuple(math.comb(i, j) for j in range(i + 1)) for i in range(n + 1))
    )


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination with row pivoting."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def minor_determinant(A: LowerTriangularMatrix, minor: MinorIndexPair) -> int:
    """Exact determinant of the submatrix A[I | J]."""
    if minor.I[-1] >= A.n or minor.J[-1] >= A.n:
        raise ValueError("minor indices outside matrix dimension")
    sub = [[A.entry(i, j) for j in minor.J] for i in minor.I]
    return bareiss_determinant(sub)


def staircase_pair_count(n: int) -> int:
    """Number of staircase (I, J) pairs of an n x n lower-triangular matrix.

    Counted exactly by dynamic programming over (rows left, columns left,
    pairs chosen); used only as the enumeration budget guard, so a simple
    upper bound would also do, but the exact count is cheap.
    """
    total = 0
    for r in range(1, n + 1):
        for I in itertools.combinations(range(n), r):
            # J must be strictly increasing with j_s <= i_s.
            total += _count_dominated(I)
    return total


def _count_dominated(I: tuple) -> int:
    # Count strictly increasing J with j_s <= i_s for all s.
    r = len(I)
    # ways[v] = number of ways to pick prefix ending with j_last = v
    ways = {-1: 1}
    for s in range(r):
        new = {}
        acc = 0
        run = 0
        # j_s ranges over (previous j) + 1 .. I[s]
        for v in range(0, I[s] + 1):
            run += ways.get(v - 1, 0)
            new[v] = run
        ways = new
        ways[-1] = 0
    return sum(v for k, v in ways.items() if k >= 0)


def iter_staircase_pairs(n: int) -> Iterator[MinorIndexPair]:
    """All staircase minors in canonical order: increasing r, then lex (I, J)."""
    for r in range(1, n + 1):
        for I in itertools.combinations(range(n), r):
            for J in itertools.combinations(range(n), r):
                if all(i >= j for i, j in zip(I, J)):
                    yield MinorIndexPair(I, J)


def is_totally_nonsingular(
    A: LowerTriangularMatrix, budget: int = DEFAULT_MINOR_BUDGET
) -> TnsVerdict:
    """Exhaustively check every staircase minor of A for non-singularity.

    Returns the first failing minor (in canonical order) as a witness.
    Raises BudgetExceededError instead of returning a partial answer.
    """
    count = staircase_pair_count(A.n)
    if count > budget:
        raise BudgetExceededError(
            "TNS check needs %d minors, budget is %d" % (count, budget)
        )
    checked = 0
    for pair in iter_staircase_pairs(A.n):
        checked += 1
        if minor_determinant(A, pair) == 0:
            return TnsVerdict(False, pair, checked)
    return TnsVerdict(True, None, checked)


def all_staircase_minors_positive(A: LowerTriangularMatrix, budget: int = DEFAULT_MINOR_BUDGET) -> bool:
    """Strict positivity of every staircase minor (Gessel-Viennot property)."""
    count = staircase_pair_count(A.n)
    if count > budget:
        raise BudgetExceededError(
            "minor scan needs %d minors, budget is %d" % (count, budget)
        )
    return all(minor_determinant(A, pair) > 0 for pair in iter_staircase_pairs(A.n))


def search_tns(
    n: int,
    bound: int,
    seed: Optional[int] = None,
    budget: int = DEFAULT_MINOR_BUDGET,
    attempts: int = 10_000,
) -> Optional[LowerTriangularMatrix]:
    """Find a TNS lower-triangular n x n matrix with |entries| <= bound.

    Exhaustive mode (seed None) scans all lower-triangle fillings with
    non-zero entries in [-bound, bound] in a fixed order (1, -1, 2, -2, ...)
    and either returns the first TNS matrix or proves none exists (None).
    Seeded mode samples fillings at random and returns None only when the
    attempt budget runs out, which proves nothing.

    Entries must be non-zero because every lower-triangle entry is itself a
    1x1 staircase minor.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if bound < 1:
        return None
    nfree = n * (n + 1) // 2
    values = [v for k in range(1, bound + 1) for v in (k, -k)]
    if seed is None:
        space = len(values) ** nfree
        if space > budget:
            raise BudgetExceededError(
                "exhaustive TNS search space %d exceeds budget %d" % (space, budget)
            )
        for fill in itertools.product(values, repeat=nfree):
            cand = _matrix_from_fill(n, fill)
            if is_totally_nonsingular(cand, budget=budget):
                return cand
        return None
    rng = random.Random(seed)
    for _ in range(attempts):
        fill = tuple(rng.choice(values) for _ in range(nfree))
        cand = _matrix_from_fill(n, fill)
        if is_totally_nonsingular(cand, budget=budget):
            return cand
    return None


def _matrix_from_fill(n: int, fill: Sequence[int]) -> LowerTriangularMatrix:
    rows = []
    it = iter(fill)
    for i in range(n):
        rows.append(tuple(next(it) for _ in range(i + 1)))
    return LowerTriangularMatrix(tuple(rows))
