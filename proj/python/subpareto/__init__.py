"""Pareto-optimal outcome analysis for agent groups and subgroups.

The heavy lifting lives in the C++ extension; this package re-exports its
surface. Exact values (the expected Pareto-set size) come back as
`fractions.Fraction`.
"""

from ._core import (
    Algorithm,
    BordaTally,
    ConsistencyError,
    ExtractionError,
    Group,
    GroupSizeStats,
    InputError,
    MonteCarloEstimate,
    OutcomeSpace,
    ParetoResult,
    ParseError,
    PreferenceProfile,
    ProfileTable,
    ScanConfig,
    ScanReport,
    SubgroupStats,
    __version__,
    binomial_capped,
    borda_count,
    dominates,
    expected_pareto_count,
    expected_pareto_count_float,
    expected_pareto_count_mc,
    false_positive_rate,
    is_strict,
    join_agent,
    leave_agent,
    load_additive_domain,
    load_rankings,
    load_ratings,
    pareto_set_fast,
    pareto_set_naive,
    profile_csv,
    read_profile_csv,
    run_scan,
    sample_groups,
    subgroup_ratio,
    write_profile_csv,
)

__all__ = [
    "Algorithm",
    "BordaTally",
    "ConsistencyError",
    "ExtractionError",
    "Group",
    "GroupSizeStats",
    "InputError",
    "MonteCarloEstimate",
    "OutcomeSpace",
    "ParetoResult",
    "ParseError",
    "PreferenceProfile",
    "ProfileTable",
    "ScanConfig",
    "ScanReport",
    "SubgroupStats",
    "__version__",
    "binomial_capped",
    "borda_count",
    "dominates",
    "expected_pareto_count",
    "expected_pareto_count_float",
    "expected_pareto_count_mc",
    "false_positive_rate",
    "is_strict",
    "join_agent",
    "leave_agent",
    "load_additive_domain",
    "load_rankings",
    "load_ratings",
    "pareto_set_fast",
    "pareto_set_naive",
    "profile_csv",
    "read_profile_csv",
    "run_scan",
    "sample_groups",
    "subgroup_ratio",
    "write_profile_csv",
]
