"""Binary scheme matrices for the shared-bicycle relay problem.

A journey of m unit stages is travelled by n people sharing k bicycles.
A scheme assigns each traveller, for each stage, either walking or
riding; it is stored as an n x m 0/1 matrix where entry (i, j) = 1
means traveller i rides stage j.  Rows are travellers, columns are
stages, and "boundary b" refers to the staging post between columns b
and b+1 (0-based everywhere).

This module holds the matrix data model (validation, cached sums), the
text file format, and the structural transforms used by the rest of the
package: row permutation, stage reversal, row reversal, the binary dual
(bit flip), and transposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Sequence


class SchemeFormatError(ValueError):
    """Raised when matrix file text is malformed; carries a line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BinaryScheme:
    """An immutable n x m 0/1 matrix with cached row and column sums.

    Attributes:
        rows: tuple of n row tuples, each of m ints in {0, 1}.
        n: number of travellers (rows).
        m: number of stages (columns).
        row_sums: per-traveller count of ridden stages.
        col_sums: per-stage count of riders.
    """

    __slots__ = ("rows", "n", "m", "row_sums", "col_sums")

    def __init__(self, rows: Iterable[Sequence[int]]):
        tup = tuple(tuple(r) for r in rows)
        if not tup:
            raise ValueError("a scheme needs at least one traveller")
        m = len(tup[0])
        if m == 0:
            raise ValueError("a scheme needs at least one stage")
        for i, row in enumerate(tup):
            if len(row) != m:
                raise ValueError(f"row {i} has {len(row)} entries, expected {m}")
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"entry ({i},{j}) is {v!r}, expected 0 or 1")
        object.__setattr__(self, "rows", tup)
        object.__setattr__(self, "n", len(tup))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "row_sums", tuple(sum(r) for r in tup))
        object.__setattr__(
            self, "col_sums", tuple(sum(col) for col in zip(*tup))
        )

    def __setattr__(self, name, value):
        raise AttributeError("BinaryScheme is immutable")

    def __eq__(self, other):
        return isinstance(other, BinaryScheme) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"BinaryScheme({self.n}x{self.m})"

    @property
    def is_square(self) -> bool:
        return self.n == self.m


@dataclass(frozen=True)
class UniformityReport:
    """Whether all column sums equal some k and all row sums equal some l.

    For a uniform matrix l*n = k*m (both count the 1-entries); square
    uniform matrices have l = k.
    """

    is_uniform: bool
    k: int | None  # common column sum (bicycles) when uniform
    l: int | None  # common row sum (rides per traveller) when uniform


@dataclass(frozen=True)
class PrefixSums:
    """Cumulative ride counts: table[i][t] = #rides of traveller i among columns 0..t-1.

    table[i][0] == 0 and table[i][m] == row_sums[i].
    """

    table: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class StageCut:
    """The partition of travellers at boundary b by their (col b, col b+1) bits.

    x11 keep riding, x10 drop a bike, x01 take a bike, x00 keep
    walking.  Indices are ascending row numbers.
    """

    boundary: int
    x11: tuple[int, ...]
    x10: tuple[int, ...]
    x01: tuple[int, ...]
    x00: tuple[int, ...]


def parse_scheme(text: str) -> BinaryScheme:
    """Parse matrix file text into a BinaryScheme.

    Format: optional comment lines starting with '#'; the first
    non-comment line is '<rows> <cols>'; then that many rows of
    space-separated 0/1 tokens.  Trailing newline optional.

    Raises:
        SchemeFormatError: malformed header, non-binary entry, or
            ragged row, reported with its 1-based line number.
    """
    lines = text.splitlines()
    header = None
    header_line = 0
    body_start = 0
    for idx, raw in enumerate(lines):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        header = stripped
        header_line = idx + 1
        body_start = idx + 1
        break
    if header is None:
        raise SchemeFormatError(len(lines) or 1, "missing header line '<rows> <cols>'")

    parts = header.split()
    if len(parts) != 2:
        raise SchemeFormatError(header_line, f"header must be '<rows> <cols>', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise SchemeFormatError(header_line, f"header must be two integers, got {header!r}") from None
    if n < 1 or m < 1:
        raise SchemeFormatError(header_line, f"dimensions must be positive, got {n}x{m}")

    rows: list[tuple[int, ...]] = []
    for idx in range(body_start, len(lines)):
        stripped = lines[idx].strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != m:
            raise SchemeFormatError(idx + 1, f"expected {m} entries, got {len(tokens)}")
        row = []
        for tok in tokens:
            if tok == "0":
                row.append(0)
            elif tok == "1":
                row.append(1)
            else:
                raise SchemeFormatError(idx + 1, f"entry {tok!r} not binary")
        rows.append(tuple(row))
        if len(rows) == n:
            # Anything non-blank after the last row is a format error.
            for later in range(idx + 1, len(lines)):
                tail = lines[later].strip()
                if tail and not tail.startswith("#"):
                    raise SchemeFormatError(later + 1, "trailing data after last row")
            break
    if len(rows) != n:
        raise SchemeFormatError(len(lines) or 1, f"expected {n} rows, got {len(rows)}")
    return BinaryScheme(rows)


def format_scheme(M: BinaryScheme, comment: str | None = None) -> str:
    """Render a scheme in the matrix file format (bit-exact round trip)."""
    out = []
    if comment:
        for line in comment.splitlines():
            out.append(f"# {line}".rstrip())
    out.append(f"{M.n} {M.m}")
    for row in M.rows:
        out.append(" ".join(str(v) for v in row))
    return "\n".join(out) + "\n"


def uniformity(M: BinaryScheme) -> UniformityReport:
    """Report whether every column sums to one constant k and every row to one constant l."""
    ks = set(M.col_sums)
    ls = set(M.row_sums)
    if len(ks) == 1 and len(ls) == 1:
        return UniformityReport(True, M.col_sums[0], M.row_sums[0])
    return UniformityReport(False, None, None)


def prefix_sums(M: BinaryScheme) -> PrefixSums:
    """Cumulative ride-count table; see PrefixSums."""
    return PrefixSums(tuple(tuple(accumulate(row, initial=0)) for row in M.rows))


def stage_cut(M: BinaryScheme, boundary: int) -> StageCut:
    """Partition of travellers by their behavior across the given boundary.

    Args:
        M: the scheme.
        boundary: 0-based; between columns boundary and boundary+1,
            so valid values are 0..m-2.
    """
    if not 0 <= boundary <= M.m - 2:
        raise ValueError(f"boundary {boundary} out of range 0..{M.m - 2}")
    x11, x10, x01, x00 = [], [], [], []
    b = boundary
    for i, row in enumerate(M.rows):
        pair = (row[b], row[b + 1])
        if pair == (1, 1):
            x11.append(i)
        elif pair == (1, 0):
            x10.append(i)
        elif pair == (0, 1):
            x01.append(i)
        else:
            x00.append(i)
    return StageCut(boundary, tuple(x11), tuple(x10), tuple(x01), tuple(x00))


def permute_rows(M: BinaryScheme, pi: Sequence[int]) -> BinaryScheme:
    """Row i of the result is row pi[i] of M.

    Raises:
        ValueError: pi is not a permutation of 0..n-1.
    """
    if sorted(pi) != list(range(M.n)):
        raise ValueError("pi is not a permutation of the row indices")
    return BinaryScheme(M.rows[p] for p in pi)


def reverse_stages(M: BinaryScheme) -> BinaryScheme:
    """Reverse the column (stage) order."""
    return BinaryScheme(tuple(reversed(row)) for row in M.rows)


def reverse_rows(M: BinaryScheme) -> BinaryScheme:
    """Reverse the row (traveller) order."""
    return BinaryScheme(reversed(M.rows))


def binary_dual(M: BinaryScheme) -> BinaryScheme:
    """Flip every bit: walkers ride and riders walk.

    A k-uniform square input yields an (n-k)-uniform output.
    """
    return BinaryScheme(tuple(1 - v for v in row) for row in M.rows)


def transpose(M: BinaryScheme) -> BinaryScheme:
    """Standard transpose; result is m x n."""
    return BinaryScheme(zip(*M.rows))
