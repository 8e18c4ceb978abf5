"""Tour of the scheme generators and their structural guarantees."""

from math import gcd

from bikerelay import (
    cyclic_matrix,
    decide_optimal,
    determinant_exact,
    format_scheme,
    transpose_cyclic_matrix,
    verify_cyclic_structure,
)

if __name__ == "__main__":
    n, k = 6, 4
    C = cyclic_matrix(n, k)
    print(f"cyclic({n},{k}): each traveller rides one block of {k} stages,")
    print("staggered so that every stage has exactly k riders.\n")
    print(format_scheme(C))

    T = transpose_cyclic_matrix(n, k)
    print(f"transpose_cyclic({n},{k}): the same pattern read column-wise.\n")
    print(format_scheme(T))

    for name, M in (("cyclic", C), ("transpose-cyclic", T)):
        print(f"{name}: optimal = {decide_optimal(M).optimal}")

    print()
    rep = verify_cyclic_structure(n, k)
    print(
        f"structure: gcd {rep.d}, quotient problem ({rep.n_prime},{rep.k_prime}), "
        f"column blocks rotate by {rep.rotation_offset} rows, all checks {rep.all_ok}"
    )

    print()
    print("determinants of the cyclic family (zero exactly when gcd > 1):")
    for kk in range(1, n + 1):
        det = determinant_exact(cyclic_matrix(n, kk))
        print(f"  k={kk}: det={det:+d}  gcd={gcd(n, kk)}")
