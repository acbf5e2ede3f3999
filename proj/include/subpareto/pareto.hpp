#pragma once

#include "subpareto/model.hpp"

#include <string>
#include <vector>

namespace subpareto {

enum class Algorithm { reference, fast, incremental };

std::string to_string(Algorithm a);

/// Pareto-optimal outcome set for a group, with the member set it was
/// computed for and the algorithm that produced it. `optimal` is sorted,
/// and is never empty for a non-empty outcome space.
struct ParetoResult {
    std::vector<int> optimal;
    std::vector<int> group_signature; // sorted member set
    Algorithm algorithm_tag = Algorithm::reference;

    bool contains(int outcome) const;
};

/// Direct pairwise-dominance filter, O(size^2 * |group|). The reference
/// oracle for every faster path.
ParetoResult pareto_set_naive(const Group& group, const ProfileTable& table);

/// Sort-and-filter: outcomes are presorted lexicographically by the first
/// member's utility descending (ties broken by subsequent members), then
/// each candidate is tested only against the window of survivors. Always
/// produces the same set as pareto_set_naive, ties included.
ParetoResult pareto_set_fast(const Group& group, const ProfileTable& table);

/// Pareto set after `new_agent` joins `group`, given the group's current
/// result. When every profile of the grown group is strict, the current
/// optimal set carries over and only outcomes outside it are re-tested;
/// otherwise this silently recomputes from scratch.
ParetoResult join_agent(const ParetoResult& current, int new_agent, const Group& group,
                        const ProfileTable& table);

/// Pareto set after `leaving` leaves `group`. Under strict profiles only
/// members of the current optimal set are re-tested, and only against each
/// other; otherwise recomputes from scratch. The remaining group must be
/// non-empty.
ParetoResult leave_agent(const ParetoResult& current, int leaving, const Group& group,
                         const ProfileTable& table);

namespace detail {

std::vector<const PreferenceProfile*> member_profiles(const Group& group,
                                                      const ProfileTable& table);

/// Sorted-window dominance filter over an arbitrary candidate set. Returns
/// the candidates undominated within the set, sorted ascending.
std::vector<int> window_filter(std::vector<int> candidates,
                               const std::vector<const PreferenceProfile*>& members);

} // namespace detail

} // namespace subpareto
