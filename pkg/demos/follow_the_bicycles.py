"""Where each bicycle goes: handover plans and mount counts."""

from bikerelay import (
    bicycle_itineraries,
    binary_dual,
    build_assignment_plan,
    complementary_plan,
    cyclic_matrix,
    verify_plan,
)

if __name__ == "__main__":
    n, k = 7, 3
    C = cyclic_matrix(n, k)
    plan = build_assignment_plan(C)
    print(f"cyclic({n},{k}) handover plan, boundary by boundary:")
    for b in range(plan.boundaries):
        moves = [f"{i}->{j}" for i, j in plan.pairs[b] if i != j]
        keeps = [str(i) for i, j in plan.pairs[b] if i == j]
        print(f"  after stage {b + 1}: handovers {moves or ['none']}, keeps {keeps or ['none']}")

    print()
    mounts = bicycle_itineraries(C, plan)
    for bike, count in enumerate(mounts):
        print(f"  bicycle {bike} is mounted {count} times")

    print()
    check = verify_plan(C, plan)
    print(f"plan verifies: {check.valid}")

    dual = complementary_plan(C, plan)
    D = binary_dual(C)
    print(f"complementary plan verifies on the 0/1-flipped scheme: {verify_plan(D, dual).valid}")
    print()
    print("The flipped scheme swaps walkers and riders, so the complementary")
    print("plan simply runs every handover in the opposite direction.")
