#include "subpareto/scan.hpp"

#include "subpareto/detail/rng.hpp"
#include "subpareto/errors.hpp"
#include "subpareto/pareto.hpp"
#include "subpareto/rational.hpp"
#include "subpareto/theory.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <thread>

namespace subpareto {

namespace {

// The per-group pass below enumerates every subgroup as a bitmask over the
// group's member positions; 2^n bookkeeping caps the group size it serves.
constexpr int kMaskPathMaxGroupSize = 12;

// For every member mask mu, the bitset of all submasks of mu (bit index =
// submask value). Adding member bit a to a submask adds 2^a to its value,
// so the closure is built with bitset shifts.
class SubsetTable {
public:
    explicit SubsetTable(int n)
        : rows_(size_t{1} << n), words_((rows_ + 63) / 64), bits_(rows_ * words_, 0) {
        row(0)[0] = 1; // only the empty submask
        for (size_t mu = 1; mu < rows_; ++mu) {
            size_t low = mu & (~mu + 1);
            const std::uint64_t* base = row(mu ^ low);
            std::uint64_t* dst = row(mu);
            size_t word_shift = low / 64, bit_shift = low % 64;
            for (size_t w = words_; w-- > 0;) {
                std::uint64_t shifted = 0;
                if (w >= word_shift) {
                    shifted = base[w - word_shift] << bit_shift;
                    if (bit_shift != 0 && w > word_shift)
                        shifted |= base[w - word_shift - 1] >> (64 - bit_shift);
                }
                dst[w] = base[w] | shifted;
            }
        }
    }

    const std::uint64_t* row(size_t mu) const { return bits_.data() + mu * words_; }
    std::uint64_t* row(size_t mu) { return bits_.data() + mu * words_; }
    size_t words() const { return words_; }
    size_t rows() const { return rows_; }

private:
    size_t rows_;
    size_t words_;
    std::vector<std::uint64_t> bits_;
};

// Exact per-cell sums: ratios and false-positive rates are fractions with
// small denominators, accumulated as numerator sums bucketed by denominator.
// Integer merging keeps the aggregation order-independent.
struct CellSums {
    std::vector<std::int64_t> ratio_num_by_den; // index: |PO(full)|
    std::vector<std::int64_t> fp_num_by_den;    // index: |PO(sub)|
    std::int64_t pair_count = 0;

    explicit CellSums(int domain_size)
        : ratio_num_by_den(static_cast<size_t>(domain_size) + 1, 0),
          fp_num_by_den(static_cast<size_t>(domain_size) + 1, 0) {}

    void merge(const CellSums& other) {
        for (size_t i = 0; i < ratio_num_by_den.size(); ++i) {
            ratio_num_by_den[i] += other.ratio_num_by_den[i];
            fp_num_by_den[i] += other.fp_num_by_den[i];
        }
        pair_count += other.pair_count;
    }
};

struct SizeSums {
    std::vector<CellSums> cells; // subgroup sizes 2..n-1
    std::int64_t po_size_sum = 0;
    std::int64_t group_count = 0;

    SizeSums(int n, int domain_size) {
        for (int k = 2; k < n; ++k) cells.emplace_back(domain_size);
    }
};

double mean_from_sums(const std::vector<std::int64_t>& num_by_den, std::int64_t count) {
    mpq_class sum = 0;
    for (size_t d = 1; d < num_by_den.size(); ++d) {
        if (num_by_den[d] != 0) {
            mpq_class term(num_by_den[d], d);
            term.canonicalize();
            sum += term;
        }
    }
    if (count > 0) sum /= count;
    return rational_to_double(sum);
}

// One sampled group: every subgroup's Pareto membership is read off a
// per-outcome bitset of dominated member subsets, built in a single pass
// over outcome pairs. `ground` is the candidate set: under strict profiles
// the full group's Pareto set (containment confines every subgroup's set to
// it), the whole space otherwise.
void scan_group_masked(const Group& group, const ProfileTable& table, const SubsetTable& subs,
                       const std::vector<int>& po_full, bool strict, SizeSums& sums) {
    const int n = group.size();
    const size_t words = subs.words();
    auto members = detail::member_profiles(group, table);

    std::vector<int> ground;
    if (strict) {
        ground = po_full;
    } else {
        ground.resize(static_cast<size_t>(table.space().size()));
        for (int o = 0; o < table.space().size(); ++o) ground[static_cast<size_t>(o)] = o;
    }
    const size_t g = ground.size();

    // outcome-major utility slices over the ground set; each outcome's
    // member utilities sit in one contiguous block
    const auto un = static_cast<size_t>(n);
    std::vector<double> util(g * un);
    for (size_t i = 0; i < g; ++i) {
        for (size_t a = 0; a < un; ++a)
            util[i * un + a] = members[a]->utility(ground[i]);
    }

    // dominated[i] bit S = some ground outcome dominates ground[i] w.r.t. S
    std::vector<std::uint64_t> dominated(g * words, 0);
    for (size_t i = 0; i < g; ++i) {
        std::uint64_t* bi = dominated.data() + i * words;
        const double* ui = util.data() + i * un;
        for (size_t j = i + 1; j < g; ++j) {
            const double* uj = util.data() + j * un;
            std::uint32_t ge_ij = 0, ge_ji = 0;
            for (size_t a = 0; a < un; ++a) {
                ge_ij |= static_cast<std::uint32_t>(ui[a] >= uj[a]) << a;
                ge_ji |= static_cast<std::uint32_t>(uj[a] >= ui[a]) << a;
            }
            // i dominates j for exactly the submasks of ge_ij that are not
            // submasks of the indifference mask (no strict witness there)
            const std::uint64_t* all_i = subs.row(ge_ij);
            const std::uint64_t* all_j = subs.row(ge_ji);
            const std::uint64_t* none = subs.row(ge_ij & ge_ji);
            std::uint64_t* bj = dominated.data() + j * words;
            for (size_t w = 0; w < words; ++w) {
                bj[w] |= all_i[w] & ~none[w];
                bi[w] |= all_j[w] & ~none[w];
            }
        }
    }

    // membership flags in PO(full) over the ground set
    std::vector<char> in_full(g, 0);
    if (strict) {
        std::fill(in_full.begin(), in_full.end(), 1);
    } else {
        for (size_t i = 0; i < g; ++i)
            in_full[i] = std::binary_search(po_full.begin(), po_full.end(), ground[i]) ? 1 : 0;
    }

    // per-subgroup-mask counts of PO(sub) and PO(sub) ∩ PO(full)
    std::vector<std::int32_t> po_count(subs.rows(), 0), inter_count(subs.rows(), 0);
    const std::uint64_t tail =
        subs.rows() < 64 ? (std::uint64_t{1} << subs.rows()) - 1 : ~std::uint64_t{0};
    for (size_t i = 0; i < g; ++i) {
        const std::uint64_t* row = dominated.data() + i * words;
        for (size_t w = 0; w < words; ++w) {
            std::uint64_t undom = ~row[w];
            if (w + 1 == words) undom &= tail;
            while (undom != 0) {
                int b = std::countr_zero(undom);
                undom &= undom - 1;
                size_t mask = w * 64 + static_cast<size_t>(b);
                po_count[mask] += 1;
                inter_count[mask] += in_full[i];
            }
        }
    }

    const auto po_full_size = static_cast<std::int64_t>(po_full.size());
    for (size_t mask = 1; mask + 1 < subs.rows(); ++mask) {
        int k = std::popcount(mask);
        if (k < 2 || k > n - 1) continue;
        CellSums& cell = sums.cells[static_cast<size_t>(k - 2)];
        std::int64_t po_sub = po_count[mask];
        std::int64_t inter = inter_count[mask];
        cell.ratio_num_by_den[static_cast<size_t>(po_full_size)] += inter;
        cell.fp_num_by_den[static_cast<size_t>(po_sub)] += po_sub - inter;
        cell.pair_count += 1;
    }
    sums.po_size_sum += po_full_size;
    sums.group_count += 1;
}

// Fallback for group sizes past the mask budget: per-subgroup window
// filtering, candidates restricted to PO(full) under strict profiles.
void scan_group_direct(const Group& group, const ProfileTable& table,
                       const std::vector<int>& po_full, bool strict, SizeSums& sums) {
    const int n = group.size();
    std::vector<int> ground;
    if (strict) {
        ground = po_full;
    } else {
        ground.resize(static_cast<size_t>(table.space().size()));
        for (int o = 0; o < table.space().size(); ++o) ground[static_cast<size_t>(o)] = o;
    }

    const auto& members = group.members();
    for (int k = 2; k < n; ++k) {
        CellSums& cell = sums.cells[static_cast<size_t>(k - 2)];
        std::vector<int> pick(static_cast<size_t>(k));
        // lexicographic combinations of member positions
        for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
        while (true) {
            std::vector<int> sub_members;
            sub_members.reserve(static_cast<size_t>(k));
            for (int idx : pick) sub_members.push_back(members[static_cast<size_t>(idx)]);
            auto sub_profiles = detail::member_profiles(Group(sub_members), table);
            std::vector<int> po_sub = detail::window_filter(ground, sub_profiles);

            std::int64_t inter = 0;
            for (int o : po_sub) {
                if (std::binary_search(po_full.begin(), po_full.end(), o)) ++inter;
            }
            cell.ratio_num_by_den[po_full.size()] += inter;
            cell.fp_num_by_den[po_sub.size()] += static_cast<std::int64_t>(po_sub.size()) - inter;
            cell.pair_count += 1;

            int pos = k - 1;
            while (pos >= 0 && pick[static_cast<size_t>(pos)] == n - k + pos) --pos;
            if (pos < 0) break;
            ++pick[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                pick[static_cast<size_t>(i)] = pick[static_cast<size_t>(i - 1)] + 1;
        }
    }
    sums.po_size_sum += static_cast<std::int64_t>(po_full.size());
    sums.group_count += 1;
}

} // namespace

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n || n < 0) return 0;
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    if (mpz_cmp_ui(c.get_mpz_t(), cap) > 0) return cap;
    return static_cast<std::uint64_t>(c.get_ui());
}

std::vector<Group> sample_groups(int available, int n, std::int64_t cap, std::uint64_t seed) {
    if (n < 2) throw input_error("group size must be >= 2");
    if (n > available)
        throw input_error("group size " + std::to_string(n) + " exceeds available profiles (" +
                          std::to_string(available) + ")");
    if (cap < 1) throw input_error("group cap must be >= 1");

    const auto ucap = static_cast<std::uint64_t>(cap);
    std::uint64_t total = binomial_capped(available, n, ucap + 1);

    std::vector<Group> groups;
    if (total <= ucap) {
        // full lexicographic enumeration
        std::vector<int> pick(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) pick[static_cast<size_t>(i)] = i;
        while (true) {
            groups.emplace_back(pick);
            int pos = n - 1;
            while (pos >= 0 && pick[static_cast<size_t>(pos)] == available - n + pos) --pos;
            if (pos < 0) break;
            ++pick[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < n; ++i)
                pick[static_cast<size_t>(i)] = pick[static_cast<size_t>(i - 1)] + 1;
        }
        return groups;
    }

    // uniform without replacement: rejection-sample distinct member sets
    auto engine = detail::make_engine(seed, static_cast<std::uint64_t>(n));
    std::set<std::vector<int>> seen;
    groups.reserve(static_cast<size_t>(cap));
    while (groups.size() < static_cast<size_t>(cap)) {
        // Floyd's uniform subset sample
        std::set<int> subset;
        for (int j = available - n; j < available; ++j) {
            std::uniform_int_distribution<int> dist(0, j);
            int t = dist(engine);
            if (!subset.insert(t).second) subset.insert(j);
        }
        std::vector<int> members(subset.begin(), subset.end());
        if (seen.insert(members).second) groups.emplace_back(std::move(members));
    }
    return groups;
}

namespace {

void require_subgroup(const Group& sub, const Group& full) {
    if (!sub.is_subgroup_of(full))
        throw input_error("subgroup members are not a subset of the full group");
}

} // namespace

double subgroup_ratio(const Group& sub, const Group& full, const ProfileTable& table) {
    require_subgroup(sub, full);
    auto po_sub = pareto_set_fast(sub, table).optimal;
    auto po_full = pareto_set_fast(full, table).optimal;
    std::int64_t inter = 0;
    for (int o : po_sub) {
        if (std::binary_search(po_full.begin(), po_full.end(), o)) ++inter;
    }
    return static_cast<double>(inter) / static_cast<double>(po_full.size());
}

double false_positive_rate(const Group& sub, const Group& full, const ProfileTable& table) {
    require_subgroup(sub, full);
    auto po_sub = pareto_set_fast(sub, table).optimal;
    auto po_full = pareto_set_fast(full, table).optimal;
    std::int64_t misses = 0;
    for (int o : po_sub) {
        if (!std::binary_search(po_full.begin(), po_full.end(), o)) ++misses;
    }
    return static_cast<double>(misses) / static_cast<double>(po_sub.size());
}

ScanReport run_scan(const ScanConfig& config, const ProfileTable& table, int threads) {
    const int available = table.agent_count();
    const int m = table.space().size();
    if (available == 0) throw input_error("profile table is empty");
    if (config.max_groups_per_size < 1) throw input_error("max_groups_per_size must be >= 1");
    if (config.group_sizes.empty()) throw input_error("no group sizes configured");
    {
        std::set<int> distinct(config.group_sizes.begin(), config.group_sizes.end());
        if (distinct.size() != config.group_sizes.size())
            throw input_error("duplicate group size in config");
    }
    for (int n : config.group_sizes) {
        if (n < 2 || n > available)
            throw input_error("group size " + std::to_string(n) +
                              " outside [2, available=" + std::to_string(available) + "]");
    }
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }

    std::vector<char> profile_strict(static_cast<size_t>(available));
    for (int a = 0; a < available; ++a) profile_strict[static_cast<size_t>(a)] = is_strict(table.profile(a));

    ScanReport report;
    report.config = config;
    report.domain_size = m;
    report.available_profiles = available;

    for (int n : config.group_sizes) {
        auto groups = sample_groups(available, n, config.max_groups_per_size, config.rng_seed);
        const auto group_count = static_cast<std::int64_t>(groups.size());

        SubsetTable subs(n <= kMaskPathMaxGroupSize ? n : 1);

        // Worker results merge by exact integer addition, so the report is
        // identical for any thread count.
        auto worker = [&](size_t begin, size_t end, SizeSums& sums) {
            for (size_t gi = begin; gi < end; ++gi) {
                const Group& group = groups[gi];
                bool strict = true;
                for (int a : group.members()) strict &= profile_strict[static_cast<size_t>(a)] != 0;
                std::vector<int> po_full = pareto_set_fast(group, table).optimal;
                if (n <= kMaskPathMaxGroupSize)
                    scan_group_masked(group, table, subs, po_full, strict, sums);
                else
                    scan_group_direct(group, table, po_full, strict, sums);
            }
        };

        int used = static_cast<int>(std::min<std::int64_t>(threads, group_count));
        std::vector<SizeSums> partials(static_cast<size_t>(used), SizeSums(n, m));
        if (used == 1) {
            worker(0, groups.size(), partials[0]);
        } else {
            std::vector<std::thread> pool;
            size_t chunk = (groups.size() + static_cast<size_t>(used) - 1) / static_cast<size_t>(used);
            for (int t = 0; t < used; ++t) {
                size_t begin = static_cast<size_t>(t) * chunk;
                size_t end = std::min(groups.size(), begin + chunk);
                if (begin >= end) break;
                pool.emplace_back(worker, begin, end, std::ref(partials[static_cast<size_t>(t)]));
            }
            for (auto& th : pool) th.join();
        }
        SizeSums& sums = partials[0];
        for (size_t t = 1; t < partials.size(); ++t) {
            for (size_t c = 0; c < sums.cells.size(); ++c) sums.cells[c].merge(partials[t].cells[c]);
            sums.po_size_sum += partials[t].po_size_sum;
            sums.group_count += partials[t].group_count;
        }

        for (int k = 2; k < n; ++k) {
            const CellSums& cell = sums.cells[static_cast<size_t>(k - 2)];
            SubgroupStats stats;
            stats.group_size = n;
            stats.subgroup_size = k;
            stats.mean_ratio = mean_from_sums(cell.ratio_num_by_den, cell.pair_count);
            stats.mean_false_positive_rate = mean_from_sums(cell.fp_num_by_den, cell.pair_count);
            stats.sample_count = group_count;
            stats.flagged_low_sample = group_count < config.min_samples_flag;
            report.cells.push_back(stats);
        }

        GroupSizeStats gstats;
        gstats.group_size = n;
        gstats.sample_count = group_count;
        gstats.flagged_low_sample = group_count < config.min_samples_flag;
        {
            mpq_class frac(sums.po_size_sum, static_cast<unsigned long>(m));
            frac.canonicalize();
            if (group_count > 0) frac /= group_count;
            gstats.empirical_pareto_fraction = rational_to_double(frac);
        }
        {
            mpq_class expected = expected_pareto_count({m, n});
            gstats.theoretical_pareto_fraction = rational_to_double(expected / m);
        }
        report.per_group_size.push_back(gstats);
    }
    return report;
}

} // namespace subpareto
