"""Deciding whether a uniform scheme admits a stall-free execution.

At the staging post between stages b and b+1, the travellers who drop
a bicycle there (rows going 1 -> 0) and those who pick one up (rows
going 0 -> 1) are ranked by how many stages they have ridden so far.
Writing droppers as 'a' and takers as 'b' in descending rank order
gives one word per boundary; the scheme can be executed with nobody
ever waiting if and only if every boundary word is a Dyck word, i.e.
every prefix contains at least as many a's as b's.

Two tie-break orders are implemented for equal ride counts.  The
default, DROP_FIRST, places droppers ahead of takers (equal counts
mean simultaneous arrivals, so the handover is feasible).  The
alternative TAKE_FIRST order, kept for comparison, is the reverse of
the ascending melded ranking and puts takers first on ties; it rejects
some schemes the default accepts.

Assignment plans make the execution explicit: a per-boundary partial
bijection saying who rides each bicycle next.  A plan is feasible when
it fixes exactly the keep-riding rows and never hands a bicycle to
somebody who has ridden more stages than the donor (the receiver would
otherwise already be further down the road than the bicycle).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .scheme import (
    BinaryScheme,
    PrefixSums,
    prefix_sums,
    stage_cut,
    uniformity,
)


class TieOrder(enum.Enum):
    """How to order equal ride counts inside a boundary word."""

    DROP_FIRST = "drop-first"
    TAKE_FIRST = "take-first"


@dataclass(frozen=True)
class CanonicalWord:
    """Boundary word over {a, b} with the contributing rows.

    letters[r] describes rows[r]: 'a' for a dropper, 'b' for a taker.
    The word is balanced for uniform schemes (equal column sums give
    equally many droppers and takers).
    """

    boundary: int
    letters: str
    rows: tuple[int, ...]

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class Verdict:
    """Outcome of the optimality decision.

    reason is one of "optimal", "not-uniform", "non-dyck".  The
    failing fields are set only for "non-dyck" and name the first
    boundary (0-based) whose word breaks the prefix condition.
    """

    optimal: bool
    k: int | None
    reason: str
    failing_boundary: int | None = None
    failing_word: str | None = None


@dataclass(frozen=True)
class AssignmentPlan:
    """Per-boundary bicycle handover maps.

    pairs[b] lists (donor_row, receiver_row) sorted by donor for the
    boundary between columns b and b+1.  Donors are the rows riding
    stage b, receivers the rows riding stage b+1; a row keeping its
    bicycle appears as (i, i).
    """

    pairs: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_maps(cls, maps: Iterable[Mapping[int, int]]) -> "AssignmentPlan":
        return cls(tuple(tuple(sorted(m.items())) for m in maps))

    def mapping(self, boundary: int) -> dict[int, int]:
        """The handover map at one boundary as a plain dict."""
        return dict(self.pairs[boundary])

    @property
    def boundaries(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class PlanViolation:
    """First defect found in a plan.

    condition is one of "domain", "identity", "range", "injectivity",
    "partial-sum".  row is the offending source row (or the duplicated
    target for injectivity); mapped_to is its image where applicable.
    """

    boundary: int
    condition: str
    row: int | None
    mapped_to: int | None
    detail: str


@dataclass(frozen=True)
class PlanCheck:
    valid: bool
    violation: PlanViolation | None


def _word_letters(M: BinaryScheme, table, b: int, tie_order: TieOrder):
    """Sorted (letter, row) sequence for boundary b; see canonical_word."""
    entries = []
    for i, row in enumerate(M.rows):
        first, second = row[b], row[b + 1]
        if first == second:
            continue
        s = table[i][b + 1]
        if first:  # dropper
            entries.append((s, 0, i, "a"))
        else:  # taker
            entries.append((s, 1, i, "b"))
    if tie_order is TieOrder.DROP_FIRST:
        entries.sort(key=lambda e: (-e[0], e[1], e[2]))
    else:
        # Reverse of the ascending melded ranking: takers precede
        # droppers on ties and row order flips inside a tie group.
        entries.sort(key=lambda e: (e[0], e[1], e[2]), reverse=True)
    return entries


def canonical_word(
    M: BinaryScheme,
    S: PrefixSums,
    boundary: int,
    tie_order: TieOrder = TieOrder.DROP_FIRST,
) -> CanonicalWord:
    """The boundary word of a uniform scheme.

    Droppers (letter a) and takers (letter b) at the given boundary
    are sorted by ride count so far, descending; ties follow
    tie_order.

    Args:
        M: a uniform scheme.
        S: prefix_sums(M).
        boundary: 0-based, between columns boundary and boundary+1.
        tie_order: tie-break rule, DROP_FIRST by default.

    Raises:
        ValueError: M is not uniform, or the boundary is out of range.
    """
    if not uniformity(M).is_uniform:
        raise ValueError("canonical words are defined for uniform schemes only")
    if not 0 <= boundary <= M.m - 2:
        raise ValueError(f"boundary {boundary} out of range 0..{M.m - 2}")
    entries = _word_letters(M, S.table, boundary, tie_order)
    return CanonicalWord(
        boundary,
        "".join(e[3] for e in entries),
        tuple(e[2] for e in entries),
    )


def is_dyck(w: CanonicalWord | str) -> bool:
    """True iff the word is balanced and no prefix has more b's than a's."""
    letters = w.letters if isinstance(w, CanonicalWord) else w
    depth = 0
    for ch in letters:
        depth += 1 if ch == "a" else -1
        if depth < 0:
            return False
    return depth == 0


def dual_reverse_word(w: CanonicalWord | str) -> str:
    """Reverse the word and swap a with b; an involution on words."""
    letters = w.letters if isinstance(w, CanonicalWord) else w
    swap = {"a": "b", "b": "a"}
    return "".join(swap[ch] for ch in reversed(letters))


def _skip_boundaries(m: int) -> frozenset:
    """Boundaries whose words are Dyck for every uniform scheme.

    The two outermost boundaries at each end: takers there have ridden
    at most as much as every dropper, so the word sorts as a-block
    then b-block (and dually at the far end).
    """
    return frozenset(b for b in (0, 1, m - 3, m - 2) if 0 <= b <= m - 2)


def decide_optimal(
    M: BinaryScheme,
    use_skip_rule: bool = True,
    tie_order: TieOrder = TieOrder.DROP_FIRST,
) -> Verdict:
    """Decide whether a scheme admits a stall-free execution.

    A scheme is optimal iff it is uniform and every boundary word is
    Dyck.  Non-uniform input yields a "not-uniform" verdict rather
    than an error.

    With use_skip_rule, boundaries 0, 1, m-3, m-2 are not scanned and
    the whole scan is dropped when the common row sum l satisfies
    l <= 2 or l >= m-2 (every word is then forced to be Dyck); the
    verdict is identical with and without the flag.
    """
    uni = uniformity(M)
    if not uni.is_uniform:
        return Verdict(False, None, "not-uniform")
    m = M.m
    if m < 2:
        return Verdict(True, uni.k, "optimal")
    if use_skip_rule and (uni.l <= 2 or uni.l >= m - 2):
        return Verdict(True, uni.k, "optimal")
    table = prefix_sums(M).table
    skipped = _skip_boundaries(m) if use_skip_rule else frozenset()
    for b in range(m - 1):
        if b in skipped:
            continue
        entries = _word_letters(M, table, b, tie_order)
        depth = 0
        for e in entries:
            depth += 1 if e[3] == "a" else -1
            if depth < 0:
                word = "".join(x[3] for x in entries)
                return Verdict(False, uni.k, "non-dyck", b, word)
    return Verdict(True, uni.k, "optimal")


def build_assignment_plan(
    M: BinaryScheme, tie_order: TieOrder = TieOrder.DROP_FIRST
) -> AssignmentPlan:
    """The canonical feasible plan of an optimal scheme.

    At each boundary the rth dropper of the word donates to the rth
    taker; keep-riding rows keep their own bicycle.  Because the word
    is Dyck, the rth taker has ridden no more than the rth dropper,
    so the plan passes verify_plan.

    Raises:
        ValueError: the scheme does not decide optimal.
    """
    verdict = decide_optimal(M, tie_order=tie_order)
    if not verdict.optimal:
        raise ValueError(f"scheme is not optimal ({verdict.reason})")
    table = prefix_sums(M).table
    maps = []
    for b in range(M.m - 1):
        entries = _word_letters(M, table, b, tie_order)
        droppers = [e[2] for e in entries if e[3] == "a"]
        takers = [e[2] for e in entries if e[3] == "b"]
        mp = {i: i for i in stage_cut(M, b).x11}
        mp.update(zip(droppers, takers))
        maps.append(mp)
    return AssignmentPlan.from_maps(maps)


def _structural_violation(M: BinaryScheme, P: AssignmentPlan) -> PlanViolation | None:
    """Domain/identity/range/injectivity checks, lowest boundary first."""
    if P.boundaries != M.m - 1:
        raise ValueError(
            f"plan covers {P.boundaries} boundaries, scheme has {M.m - 1}"
        )
    for b in range(M.m - 1):
        cut = stage_cut(M, b)
        mp = P.mapping(b)
        need = set(cut.x11) | set(cut.x10)
        have = set(mp)
        for i in sorted(need - have):
            return PlanViolation(b, "domain", i, None, f"row {i} rides stage {b} but has no map entry")
        for i in sorted(have - need):
            return PlanViolation(b, "domain", i, mp[i], f"row {i} does not ride stage {b} yet appears in the map")
        x11 = set(cut.x11)
        allowed = x11 | set(cut.x01)
        for i in sorted(mp):
            if (mp[i] == i) != (i in x11):
                return PlanViolation(
                    b, "identity", i, mp[i],
                    "a row keeps its bicycle exactly when it rides both stages",
                )
            if mp[i] not in allowed:
                return PlanViolation(
                    b, "range", i, mp[i], f"row {mp[i]} does not ride stage {b + 1}"
                )
        seen: dict[int, int] = {}
        for i in sorted(mp):
            if mp[i] in seen:
                return PlanViolation(
                    b, "injectivity", i, mp[i],
                    f"rows {seen[mp[i]]} and {i} both map to {mp[i]}",
                )
            seen[mp[i]] = i
    return None


def verify_plan(M: BinaryScheme, P: AssignmentPlan) -> PlanCheck:
    """Check a plan against its scheme.

    Valid means: at every boundary the map's domain is exactly the
    riders of the earlier stage, it is injective into the riders of
    the later stage, it fixes exactly the keep-riding rows, and every
    receiver has ridden at most as many stages as its donor.

    Raises:
        ValueError: the plan does not have one map per boundary.
    """
    v = _structural_violation(M, P)
    if v is not None:
        return PlanCheck(False, v)
    table = prefix_sums(M).table
    for b in range(M.m - 1):
        mp = P.mapping(b)
        for i in sorted(mp):
            if table[mp[i]][b + 1] > table[i][b + 1]:
                return PlanCheck(
                    False,
                    PlanViolation(
                        b, "partial-sum", i, mp[i],
                        f"receiver {mp[i]} has ridden {table[mp[i]][b + 1]} stages, "
                        f"donor {i} only {table[i][b + 1]}",
                    ),
                )
    return PlanCheck(True, None)


def complementary_plan(M: BinaryScheme, P: AssignmentPlan) -> AssignmentPlan:
    """The induced plan for the bit-flipped scheme.

    Walkers of M are riders of its dual; the complementary map fixes
    the keep-walking rows and reverses each handover of P, so it is a
    feasible plan for binary_dual(M) whenever P is feasible for M.

    Raises:
        ValueError: P is not a valid plan for M.
    """
    check = verify_plan(M, P)
    if not check.valid:
        raise ValueError(f"plan is not valid for the scheme: {check.violation}")
    maps = []
    for b in range(M.m - 1):
        cut = stage_cut(M, b)
        mp = P.mapping(b)
        inverse = {v: i for i, v in mp.items() if v != i}
        comp = {i: i for i in cut.x00}
        comp.update((i, inverse[i]) for i in cut.x01)
        maps.append(comp)
    return AssignmentPlan.from_maps(maps)
