"""Exhaustive census: how rare are the bad schemes?

Every matrix with equal row sums and equal column sums describes a
fair division of riding time.  Up to five travellers, every such
matrix admits a stall-free execution.  The first failures appear at
six travellers with three bicycles, and even there they are under
four percent of the census.
"""

from bikerelay import cross_validate, enumerate_uniform, format_scheme

if __name__ == "__main__":
    for n in range(2, 6):
        counts = []
        for k in range(0, n + 1):
            rep = enumerate_uniform(n, k)
            counts.append(f"k={k}: {rep.total_uniform} ({rep.nonoptimal_count} bad)")
        print(f"n={n}: " + ", ".join(counts))

    print()
    rep = enumerate_uniform(6, 3, max_examples=1)
    share = 100 * rep.nonoptimal_count / rep.total_uniform
    print(
        f"n=6, k=3: {rep.total_uniform} matrices, {rep.nonoptimal_count} "
        f"non-optimal ({share:.2f}%)"
    )
    print("one of the minimal offenders:\n")
    print(format_scheme(rep.minimal_nonoptimal_examples[0]))

    print("cross-checking the word test against brute-force execution at (5, 2):")
    mismatches = cross_validate(5, 2)
    print(f"  mismatches: {len(mismatches)}")
