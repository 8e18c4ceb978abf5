"""Cutting 47 bicycle rides down to 35 without touching the timetable.

The transpose-cyclic scheme for 11 travellers and 7 bicycles is optimal
but wasteful: at many posts a rider hands a bicycle to someone who has
ridden exactly as much, so the handover changes nothing about who is
where.  Swapping the two row tails removes the handover; repeating this
until none is left gives an equivalent scheme with 12 fewer rides.
"""

from bikerelay import (
    count_excess_handovers,
    count_rides,
    decide_optimal,
    format_scheme,
    reduce_scheme,
    transpose_cyclic_matrix,
)

if __name__ == "__main__":
    T = transpose_cyclic_matrix(11, 7)
    before = count_rides(T)
    print(f"before: {before.total_rides} rides, per traveller {before.per_traveller}")
    print(f"removable handovers: {count_excess_handovers(T)}")
    print()

    reduced, removed = reduce_scheme(T)
    after = count_rides(reduced)
    print(f"removed {removed} handovers")
    print(f"after:  {after.total_rides} rides, per traveller {after.per_traveller}")
    print(f"still optimal: {decide_optimal(reduced).optimal}")
    print(f"nothing left to remove: {count_excess_handovers(reduced) == 0}")
    print()
    print(format_scheme(reduced, comment="reduced transpose-cyclic (11,7)"))
    print("Row and column sums are untouched, so the finishing time is the")
    print("same; only the bicycle logistics got simpler.")
