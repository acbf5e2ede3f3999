#pragma once

#include "subpareto/model.hpp"

#include <cstdint>
#include <vector>

namespace subpareto {

/// Subgroup-experiment parameters. For every sampled group of size n, all
/// subgroups of sizes {2..n-1} are enumerated exhaustively.
struct ScanConfig {
    std::vector<int> group_sizes{5, 7, 9};
    std::int64_t max_groups_per_size = 1000;
    std::uint64_t rng_seed = 0;
    int min_samples_flag = 30;
};

/// Aggregates for one (group size, subgroup size) pair. Means are taken
/// uniformly over all (group, subgroup) samples of that shape.
struct SubgroupStats {
    int group_size = 0;
    int subgroup_size = 0;
    double mean_ratio = 0.0;               // |PO(sub) ∩ PO(full)| / |PO(full)|
    double mean_false_positive_rate = 0.0; // |PO(sub) \ PO(full)| / |PO(sub)|
    std::int64_t sample_count = 0;         // groups sampled at this group size
    bool flagged_low_sample = false;
};

struct GroupSizeStats {
    int group_size = 0;
    double empirical_pareto_fraction = 0.0;   // mean |PO(G)| / domain size
    double theoretical_pareto_fraction = 0.0; // expected count / domain size
    std::int64_t sample_count = 0;
    bool flagged_low_sample = false;
};

struct ScanReport {
    ScanConfig config;
    int domain_size = 0;
    int available_profiles = 0;
    std::vector<SubgroupStats> cells; // group sizes in config order, subgroup size ascending
    std::vector<GroupSizeStats> per_group_size;
};

/// min(C(n, k), cap), evaluated without overflow.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap);

/// min(cap, C(available, n)) distinct groups of n agents drawn from
/// {0..available-1}. Full lexicographic enumeration when everything fits
/// under the cap, uniform sampling without replacement otherwise;
/// deterministic for a fixed seed.
std::vector<Group> sample_groups(int available, int n, std::int64_t cap, std::uint64_t seed);

/// Fraction of the full group's Pareto set already found by the subgroup:
/// |PO(sub) ∩ PO(full)| / |PO(full)|. Requires sub ⊆ full.
double subgroup_ratio(const Group& sub, const Group& full, const ProfileTable& table);

/// Fraction of the subgroup's Pareto set that fails in the full group:
/// |PO(sub) \ PO(full)| / |PO(sub)|. Zero whenever the subgroup's profiles
/// are strict. Requires sub ⊆ full.
double false_positive_rate(const Group& sub, const Group& full, const ProfileTable& table);

/// Full experiment pipeline: sample groups per configured size, enumerate
/// every subgroup of sizes {2..n-1}, aggregate ratio and false-positive
/// means, and attach empirical/theoretical Pareto fractions per group size.
/// Aggregation is exact (integer/rational), so reports are bit-identical
/// for a fixed config regardless of `threads` (0 = hardware concurrency).
ScanReport run_scan(const ScanConfig& config, const ProfileTable& table, int threads = 1);

} // namespace subpareto
