"""How tightly the group travels, at sane and at absurd cycling speeds.

When bicycles are scarce (2k <= n), travellers on a transpose-cyclic
scheme bunch into at most three cohorts that stay within one stage of
each other, whatever the speeds.  With bicycles for almost everyone
and cycling at 100x walking pace, neighbours still stay close, but the
leader ends up almost the whole route ahead of the trailer.
"""

from fractions import Fraction

from bikerelay import SpeedModel, cohort_profile, simulate, transpose_cyclic_matrix

if __name__ == "__main__":
    n = 10
    scarce = transpose_cyclic_matrix(n, 4)
    print(f"scarce bicycles, transpose_cyclic({n},4):")
    for ratio in (Fraction(3, 2), Fraction(2), Fraction(5)):
        prof = cohort_profile(simulate(scarce, SpeedModel(1, ratio)))
        print(
            f"  cycling {ratio}x: {prof.max_positions} positions at most, "
            f"neighbour gap {prof.max_adjacent_gap}, spread {prof.max_spread}"
        )

    print()
    plentiful = transpose_cyclic_matrix(n, n - 1)
    print(f"bicycles for all but one, transpose_cyclic({n},{n - 1}):")
    for ratio in (Fraction(2), Fraction(100)):
        trace = simulate(plentiful, SpeedModel(1, ratio))
        prof = cohort_profile(trace)
        print(
            f"  cycling {ratio}x: {prof.max_positions} positions at most, "
            f"neighbour gap {prof.max_adjacent_gap}, spread {prof.max_spread}"
        )
    print()
    print(f"Neighbour gaps never reach a full stage, but at 100x the spread")
    print(f"exceeds n-2 = {n - 2}: the group is no longer travelling together.")
