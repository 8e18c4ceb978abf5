"""Ground-truth machinery for checking the decision algorithm.

Everything here is deliberately independent of the word-based
decision: uniform matrices are enumerated by brute force, verdicts are
cross-checked against the greedy execution, determinants come from
fraction-free elimination, and the cyclic family's structure claims
are verified entry by entry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Callable

from .generators import cyclic_matrix
from .optimality import decide_optimal
from .scheme import BinaryScheme, binary_dual
from .simulate import SpeedModel, _greedy_is_stall_free, _stage_ticks

EXHAUSTIVE_GUARD = 7

DEFAULT_SPEED_RATIOS = (Fraction(3, 2), Fraction(2), Fraction(10))


@dataclass(frozen=True)
class EnumerationReport:
    """Census of the n x n matrices with all line sums k."""

    n: int
    k: int
    total_uniform: int
    optimal_count: int
    nonoptimal_count: int
    mismatches: tuple = ()
    minimal_nonoptimal_examples: tuple[BinaryScheme, ...] = ()


@dataclass(frozen=True)
class Mismatch:
    """A matrix where the word verdict and the executions disagree."""

    scheme: BinaryScheme
    dyck_optimal: bool
    stall_free: tuple[bool, ...]


def enumerate_uniform(
    n: int,
    k: int,
    visitor: Callable[[BinaryScheme, bool], None] | None = None,
    *,
    force: bool = False,
    max_examples: int = 4,
) -> EnumerationReport:
    """Visit every n x n binary matrix whose rows and columns all sum to k.

    Columns are generated left to right, choosing each column's
    support in lexicographic order; a row whose missing rides equal
    the remaining columns is forced into every one of them, which
    prunes dead branches early.  The visitor, when given, is called
    once per matrix with (matrix, optimal flag).

    Raises:
        ValueError: k out of range, or n beyond the exhaustive guard
            without force=True.
    """
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"bad parameters n={n}, k={k}")
    if n > EXHAUSTIVE_GUARD and not force:
        raise ValueError(
            f"exhaustive enumeration at n={n} is enormous; pass force=True to insist"
        )
    caps = [k] * n
    bits: list[list[int]] = [[] for _ in range(n)]
    total = optimal = 0
    examples: list[BinaryScheme] = []

    def place(j: int):
        nonlocal total, optimal
        if j == n:
            M = BinaryScheme(bits)
            verdict = decide_optimal(M)
            total += 1
            if verdict.optimal:
                optimal += 1
            elif len(examples) < max_examples:
                examples.append(M)
            if visitor is not None:
                visitor(M, verdict.optimal)
            return
        cols_left = n - j
        forced = [i for i in range(n) if caps[i] == cols_left]
        if len(forced) > k:
            return
        free = [i for i in range(n) if 0 < caps[i] < cols_left]
        need = k - len(forced)
        if need > len(free):
            return
        for combo in combinations(free, need):
            support = set(forced)
            support.update(combo)
            for i in range(n):
                inside = i in support
                bits[i].append(1 if inside else 0)
                if inside:
                    caps[i] -= 1
            place(j + 1)
            for i in range(n):
                if bits[i].pop():
                    caps[i] += 1

    place(0)
    return EnumerationReport(
        n=n,
        k=k,
        total_uniform=total,
        optimal_count=optimal,
        nonoptimal_count=total - optimal,
        minimal_nonoptimal_examples=tuple(examples),
    )


def cross_validate(
    n: int,
    k: int,
    *,
    speed_ratios: tuple[Fraction, ...] = DEFAULT_SPEED_RATIOS,
    force: bool = False,
) -> list[Mismatch]:
    """Compare the word verdict with greedy execution over all (n, k) matrices.

    Every enumerated uniform matrix is executed at each speed ratio;
    any disagreement with the word-based verdict (or among the ratios)
    is returned.  An empty list is the expected outcome.
    """
    ticks = [_stage_ticks(SpeedModel(1, Fraction(r))) for r in speed_ratios]
    mismatches: list[Mismatch] = []

    def probe(M: BinaryScheme, dyck_optimal: bool):
        flags = tuple(_greedy_is_stall_free(M.rows, w, r) for w, r in ticks)
        if any(flag != dyck_optimal for flag in flags):
            mismatches.append(Mismatch(M, dyck_optimal, flags))

    enumerate_uniform(n, k, probe, force=force)
    return mismatches


def random_uniform(n: int, k: int, rng: random.Random) -> BinaryScheme:
    """A random n x n matrix with all line sums k.

    Built as a union of k pairwise disjoint random permutation
    matrices (every uniform matrix is such a union), sampling
    permutations by rejection; for k > n/2 the complement is sampled
    instead.  Not a uniform distribution over uniform matrices, which
    no caller here needs.
    """
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"bad parameters n={n}, k={k}")
    if 2 * k > n:
        return binary_dual(random_uniform(n, n - k, rng))
    taken: list[set[int]] = [set() for _ in range(n)]
    for _ in range(k):
        while True:
            perm = rng.sample(range(n), n)
            if all(perm[i] not in taken[i] for i in range(n)):
                break
        for i in range(n):
            taken[i].add(perm[i])
    return BinaryScheme(
        tuple(1 if j in taken[i] else 0 for j in range(n)) for i in range(n)
    )


def determinant_exact(M: BinaryScheme) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination.

    Raises:
        ValueError: M is not square.
    """
    if not M.is_square:
        raise ValueError("determinant of a non-square scheme")
    n = M.n
    a = [list(row) for row in M.rows]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) // prev
            a[r][col] = 0
        prev = a[col][col]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class CyclicStructureReport:
    """Entry-level verification of the cyclic family's inner structure.

    rotation_offset is the column-block rotation step r with
    k*r = d (mod n); moving one block of d columns to the right
    rotates every column downward by r rows.
    """

    n: int
    k: int
    d: int
    n_prime: int
    k_prime: int
    rotation_offset: int
    row_classes_ok: bool
    column_blocks_ok: bool
    quotient_ok: bool
    rotation_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.row_classes_ok
            and self.column_blocks_ok
            and self.quotient_ok
            and self.rotation_ok
        )


def verify_cyclic_structure(n: int, k: int) -> CyclicStructureReport:
    """Check rows, column blocks, quotient and rotations of cyclic(n, k).

    Rows are equal exactly within residue classes mod n/d; columns are
    equal exactly within blocks of d consecutive ones; collapsing both
    gives cyclic(n/d, k/d); and the column blocks are rotations of one
    another with offset r solving k*r = d (mod n).
    """
    M = cyclic_matrix(n, k)
    d = gcd(n, k) if k else n
    n_p, k_p = n // d, k // d
    rows = M.rows
    cols = list(zip(*rows))

    row_classes_ok = all(
        (rows[i] == rows[j]) == (i % n_p == j % n_p)
        for i in range(n)
        for j in range(i + 1, n)
    )
    column_blocks_ok = all(
        (cols[p] == cols[q]) == (p // d == q // d)
        for p in range(n)
        for q in range(p + 1, n)
    )

    quotient_ok = True
    quotient = []
    for cls in range(n_p):
        class_rows = [rows[i] for i in range(n) if i % n_p == cls]
        qrow = []
        for block in range(n_p):
            cell = {
                row[c] for row in class_rows for c in range(block * d, block * d + d)
            }
            if len(cell) != 1:
                quotient_ok = False
                cell = {0}
            qrow.append(cell.pop())
        quotient.append(tuple(qrow))
    if quotient_ok:
        quotient_ok = tuple(quotient) == cyclic_matrix(n_p, k_p).rows

    rotation_offset = 0 if n_p == 1 else pow(k_p, -1, n_p)
    rotation_ok = all(
        cols[j][(i + (j // d) * rotation_offset) % n] == cols[0][i]
        for j in range(n)
        for i in range(n)
    )
    return CyclicStructureReport(
        n=n,
        k=k,
        d=d,
        n_prime=n_p,
        k_prime=k_p,
        rotation_offset=rotation_offset,
        row_classes_ok=row_classes_ok,
        column_blocks_ok=column_blocks_ok,
        quotient_ok=quotient_ok,
        rotation_ok=rotation_ok,
    )
