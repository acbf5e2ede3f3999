#include "subpareto/model.hpp"

#include "subpareto/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace subpareto {

OutcomeSpace::OutcomeSpace(int size) : size_(size) {
    if (size < 1) throw input_error("outcome space must contain at least one outcome");
}

OutcomeSpace::OutcomeSpace(int size, std::vector<std::string> labels) : OutcomeSpace(size) {
    if (labels.empty()) return;
    if (static_cast<int>(labels.size()) != size)
        throw input_error("label count does not match outcome count");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) throw input_error("duplicate outcome label: '" + l + "'");
    }
    labels_ = std::move(labels);
}

std::string OutcomeSpace::label(int outcome) const {
    detail::validate_outcome(outcome, *this);
    if (labels_.empty()) return std::to_string(outcome);
    return labels_[static_cast<size_t>(outcome)];
}

PreferenceProfile::PreferenceProfile(std::string agent_id, std::vector<double> utilities)
    : agent_id_(std::move(agent_id)), utilities_(std::move(utilities)) {
    if (utilities_.empty()) throw input_error("profile '" + agent_id_ + "' has no utilities");
    for (double u : utilities_) {
        if (!std::isfinite(u))
            throw input_error("profile '" + agent_id_ + "' has a non-finite utility");
    }
}

bool is_strict(const PreferenceProfile& profile) {
    std::vector<double> sorted = profile.utilities();
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

ProfileTable::ProfileTable(OutcomeSpace space, std::vector<PreferenceProfile> profiles)
    : space_(std::move(space)), profiles_(std::move(profiles)) {
    for (const auto& p : profiles_) {
        if (p.size() != space_.size())
            throw consistency_error("profile '" + p.agent_id() + "' covers " +
                                    std::to_string(p.size()) + " outcomes, expected " +
                                    std::to_string(space_.size()));
    }
}

const PreferenceProfile& ProfileTable::profile(int agent) const {
    if (agent < 0 || agent >= agent_count())
        throw input_error("agent index " + std::to_string(agent) + " out of range");
    return profiles_[static_cast<size_t>(agent)];
}

Group::Group(std::vector<int> members) : members_(std::move(members)) {
    if (members_.empty()) throw input_error("group must have at least one member");
    std::unordered_set<int> seen;
    for (int m : members_) {
        if (m < 0) throw input_error("negative agent index in group");
        if (!seen.insert(m).second)
            throw input_error("duplicate group member: " + std::to_string(m));
    }
}

bool Group::contains(int agent) const {
    return std::find(members_.begin(), members_.end(), agent) != members_.end();
}

std::vector<int> Group::sorted_members() const {
    std::vector<int> s = members_;
    std::sort(s.begin(), s.end());
    return s;
}

bool Group::is_subgroup_of(const Group& other) const {
    std::vector<int> a = sorted_members(), b = other.sorted_members();
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool dominates(int o, int o_prime, const Group& group, const ProfileTable& table) {
    detail::validate_outcome(o, table.space());
    detail::validate_outcome(o_prime, table.space());
    detail::validate_group(group, table);
    if (o == o_prime) return false;
    bool strictly = false;
    for (int agent : group.members()) {
        const auto& u = table.profiles()[static_cast<size_t>(agent)];
        double a = u.utility(o), b = u.utility(o_prime);
        if (a < b) return false;
        if (a > b) strictly = true;
    }
    return strictly;
}

namespace detail {

void validate_group(const Group& group, const ProfileTable& table) {
    for (int m : group.members()) {
        if (m >= table.agent_count())
            throw input_error("group member " + std::to_string(m) +
                              " has no profile (table holds " +
                              std::to_string(table.agent_count()) + ")");
    }
}

void validate_outcome(int o, const OutcomeSpace& space) {
    if (o < 0 || o >= space.size())
        throw input_error("outcome index " + std::to_string(o) + " out of range [0, " +
                          std::to_string(space.size()) + ")");
}

} // namespace detail

} // namespace subpareto
