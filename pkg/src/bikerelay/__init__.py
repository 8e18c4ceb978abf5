"""Shared-bicycle relay schedules.

n travellers share k bicycles over a journey of m unit stages.  A
schedule is an n x m binary matrix (rows travellers, columns stages,
1 = ride).  This package decides whether a schedule can run without
anybody ever waiting for a bicycle, builds the classic schedule
families, strips pointless bicycle exchanges, executes schedules with
exact rational timing, and brute-forces small cases as a ground truth.
"""

from .generators import (
    StageCountCheck,
    block_compose,
    circulant_matrix,
    cyclic_matrix,
    default_block_cells,
    is_single_ride_cyclic,
    transpose_cyclic_matrix,
    valid_stage_counts,
)
from .optimality import (
    AssignmentPlan,
    CanonicalWord,
    PlanCheck,
    PlanViolation,
    TieOrder,
    Verdict,
    build_assignment_plan,
    canonical_word,
    complementary_plan,
    decide_optimal,
    dual_reverse_word,
    is_dyck,
    verify_plan,
)
from .oracle import (
    CyclicStructureReport,
    EnumerationReport,
    Mismatch,
    cross_validate,
    determinant_exact,
    enumerate_uniform,
    random_uniform,
    verify_cyclic_structure,
)
from .reduction import (
    RideStats,
    bicycle_itineraries,
    count_excess_handovers,
    count_rides,
    reduce_scheme,
)
from .scheme import (
    BinaryScheme,
    PrefixSums,
    SchemeFormatError,
    StageCut,
    UniformityReport,
    binary_dual,
    format_scheme,
    parse_scheme,
    permute_rows,
    prefix_sums,
    reverse_rows,
    reverse_stages,
    stage_cut,
    transpose,
    uniformity,
)
from .simulate import (
    CohortProfile,
    DeadlockError,
    HandoverEvent,
    SimulationTrace,
    SpeedModel,
    StallEvent,
    cohort_profile,
    first_stall_ride_index,
    is_executable_without_stall,
    simulate,
    write_trace_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AssignmentPlan",
    "BinaryScheme",
    "CanonicalWord",
    "CohortProfile",
    "CyclicStructureReport",
    "DeadlockError",
    "EnumerationReport",
    "HandoverEvent",
    "Mismatch",
    "PlanCheck",
    "PlanViolation",
    "PrefixSums",
    "RideStats",
    "SchemeFormatError",
    "SimulationTrace",
    "SpeedModel",
    "StageCountCheck",
    "StageCut",
    "StallEvent",
    "TieOrder",
    "UniformityReport",
    "Verdict",
    "bicycle_itineraries",
    "binary_dual",
    "block_compose",
    "build_assignment_plan",
    "canonical_word",
    "circulant_matrix",
    "cohort_profile",
    "complementary_plan",
    "count_excess_handovers",
    "count_rides",
    "cross_validate",
    "cyclic_matrix",
    "decide_optimal",
    "default_block_cells",
    "determinant_exact",
    "dual_reverse_word",
    "enumerate_uniform",
    "first_stall_ride_index",
    "format_scheme",
    "is_dyck",
    "is_executable_without_stall",
    "is_single_ride_cyclic",
    "parse_scheme",
    "permute_rows",
    "prefix_sums",
    "random_uniform",
    "reduce_scheme",
    "reverse_rows",
    "reverse_stages",
    "simulate",
    "stage_cut",
    "transpose",
    "transpose_cyclic_matrix",
    "uniformity",
    "valid_stage_counts",
    "verify_cyclic_structure",
    "verify_plan",
    "write_trace_csv",
]
