#include "subpareto/pareto.hpp"

#include "subpareto/errors.hpp"

#include <algorithm>
#include <numeric>

namespace subpareto {

namespace {

enum class PairOrder { first_dominates, second_dominates, incomparable };

// Single pass over the group's members; bails out once neither side can
// dominate. Equal-on-all pairs are incomparable (no strict witness).
PairOrder compare_pair(int a, int b, const std::vector<const PreferenceProfile*>& members) {
    bool a_ge = true, b_ge = true;
    for (const auto* p : members) {
        double ua = p->utility(a), ub = p->utility(b);
        if (ua > ub)
            b_ge = false;
        else if (ua < ub)
            a_ge = false;
        if (!a_ge && !b_ge) return PairOrder::incomparable;
    }
    if (a_ge && !b_ge) return PairOrder::first_dominates;
    if (b_ge && !a_ge) return PairOrder::second_dominates;
    return PairOrder::incomparable;
}

bool strict_members(const Group& group, const ProfileTable& table) {
    for (int m : group.members()) {
        if (!is_strict(table.profile(m))) return false;
    }
    return true;
}

// true iff some outcome of the table dominates o with respect to the group
bool dominated_by_any(int o, const std::vector<const PreferenceProfile*>& members, int size) {
    for (int other = 0; other < size; ++other) {
        if (other == o) continue;
        if (compare_pair(other, o, members) == PairOrder::first_dominates) return true;
    }
    return false;
}

std::vector<int> all_outcomes(int size) {
    std::vector<int> out(static_cast<size_t>(size));
    std::iota(out.begin(), out.end(), 0);
    return out;
}

} // namespace

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::reference: return "reference";
    case Algorithm::fast: return "fast";
    case Algorithm::incremental: return "incremental";
    }
    return "unknown";
}

bool ParetoResult::contains(int outcome) const {
    return std::binary_search(optimal.begin(), optimal.end(), outcome);
}

ParetoResult pareto_set_naive(const Group& group, const ProfileTable& table) {
    auto members = detail::member_profiles(group, table);
    const int size = table.space().size();
    ParetoResult result;
    result.group_signature = group.sorted_members();
    result.algorithm_tag = Algorithm::reference;
    for (int o = 0; o < size; ++o) {
        if (!dominated_by_any(o, members, size)) result.optimal.push_back(o);
    }
    return result;
}

ParetoResult pareto_set_fast(const Group& group, const ProfileTable& table) {
    auto members = detail::member_profiles(group, table);
    ParetoResult result;
    result.optimal = detail::window_filter(all_outcomes(table.space().size()), members);
    result.group_signature = group.sorted_members();
    result.algorithm_tag = Algorithm::fast;
    return result;
}

ParetoResult join_agent(const ParetoResult& current, int new_agent, const Group& group,
                        const ProfileTable& table) {
    if (group.contains(new_agent))
        throw input_error("agent " + std::to_string(new_agent) + " already in group");
    if (current.group_signature != group.sorted_members())
        throw input_error("current result was not computed for this group");

    std::vector<int> grown = group.members();
    grown.push_back(new_agent);
    Group grown_group(std::move(grown));
    auto members = detail::member_profiles(grown_group, table);

    if (!strict_members(grown_group, table)) return pareto_set_fast(grown_group, table);

    // Strict profiles: the current optimal set stays optimal, so only the
    // remaining outcomes need a dominance test against the grown group.
    ParetoResult result;
    result.group_signature = grown_group.sorted_members();
    result.algorithm_tag = Algorithm::incremental;
    result.optimal = current.optimal;
    const int size = table.space().size();
    for (int o = 0; o < size; ++o) {
        if (current.contains(o)) continue;
        if (!dominated_by_any(o, members, size)) result.optimal.push_back(o);
    }
    std::sort(result.optimal.begin(), result.optimal.end());
    return result;
}

ParetoResult leave_agent(const ParetoResult& current, int leaving, const Group& group,
                         const ProfileTable& table) {
    if (!group.contains(leaving))
        throw input_error("agent " + std::to_string(leaving) + " is not in the group");
    if (group.size() == 1) throw input_error("cannot remove the last group member");
    if (current.group_signature != group.sorted_members())
        throw input_error("current result was not computed for this group");

    std::vector<int> rest;
    for (int m : group.members())
        if (m != leaving) rest.push_back(m);
    Group remaining(std::move(rest));

    if (!strict_members(remaining, table)) return pareto_set_fast(remaining, table);

    // Strict profiles: the shrunk set is contained in the current one, and
    // any dominator of a former optimum can be replaced by a maximal
    // dominator, which again lies in the shrunk set. Testing within the
    // current optimal set therefore suffices.
    auto members = detail::member_profiles(remaining, table);
    ParetoResult result;
    result.group_signature = remaining.sorted_members();
    result.algorithm_tag = Algorithm::incremental;
    for (int o : current.optimal) {
        bool dominated = false;
        for (int other : current.optimal) {
            if (other == o) continue;
            if (compare_pair(other, o, members) == PairOrder::first_dominates) {
                dominated = true;
                break;
            }
        }
        if (!dominated) result.optimal.push_back(o);
    }
    return result;
}

namespace detail {

std::vector<const PreferenceProfile*> member_profiles(const Group& group,
                                                      const ProfileTable& table) {
    validate_group(group, table);
    std::vector<const PreferenceProfile*> out;
    out.reserve(group.members().size());
    for (int m : group.members()) out.push_back(&table.profiles()[static_cast<size_t>(m)]);
    return out;
}

std::vector<int> window_filter(std::vector<int> candidates,
                               const std::vector<const PreferenceProfile*>& members) {
    // Presort lexicographically by the first member's utility descending,
    // ties broken by the remaining members, then by index for determinism.
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        for (const auto* p : members) {
            double ua = p->utility(a), ub = p->utility(b);
            if (ua != ub) return ua > ub;
        }
        return a < b;
    });

    // Window of currently undominated outcomes. With the full lexicographic
    // presort a candidate can never evict a window member, but the eviction
    // branch keeps the filter correct for any presort. The window is an
    // antichain and dominance is transitive, so a dominated candidate has
    // evicted nothing when the scan breaks: the in-place compaction is safe.
    std::vector<int> window;
    for (int candidate : candidates) {
        bool dominated = false;
        size_t keep = 0;
        for (size_t i = 0; i < window.size(); ++i) {
            PairOrder rel = compare_pair(window[i], candidate, members);
            if (rel == PairOrder::first_dominates) {
                dominated = true;
                break;
            }
            if (rel != PairOrder::second_dominates) window[keep++] = window[i];
        }
        if (dominated) continue;
        window.resize(keep);
        window.push_back(candidate);
    }

    std::sort(window.begin(), window.end());
    return window;
}

} // namespace detail

} // namespace subpareto
