#pragma once

#include <string>
#include <vector>

namespace subpareto {

/// Finite set of decision alternatives, addressed by 0-based index.
/// Labels, when present, are distinct and one per outcome.
class OutcomeSpace {
public:
    explicit OutcomeSpace(int size);
    OutcomeSpace(int size, std::vector<std::string> labels);

    int size() const { return size_; }
    bool has_labels() const { return !labels_.empty(); }

    /// Stored label, or the decimal index when none were given.
    std::string label(int outcome) const;

    const std::vector<std::string>& labels() const { return labels_; }

private:
    int size_;
    std::vector<std::string> labels_;
};

/// One agent's complete preference over an outcome space, encoded as a
/// utility vector: utilities[o] > utilities[o'] means o is strictly
/// preferred, equality means indifference. Entries are finite.
class PreferenceProfile {
public:
    PreferenceProfile(std::string agent_id, std::vector<double> utilities);

    const std::string& agent_id() const { return agent_id_; }
    const std::vector<double>& utilities() const { return utilities_; }
    double utility(int outcome) const { return utilities_[static_cast<size_t>(outcome)]; }
    int size() const { return static_cast<int>(utilities_.size()); }

private:
    std::string agent_id_;
    std::vector<double> utilities_;
};

/// True iff the profile has no ties, i.e. all utility values are pairwise
/// distinct. Comparison is exact; callers that want coarser ties must round
/// at ingest time.
bool is_strict(const PreferenceProfile& profile);

/// Outcome space plus the profiles defined over it. Every profile's utility
/// vector length must equal the space size.
class ProfileTable {
public:
    ProfileTable(OutcomeSpace space, std::vector<PreferenceProfile> profiles);

    const OutcomeSpace& space() const { return space_; }
    const std::vector<PreferenceProfile>& profiles() const { return profiles_; }
    const PreferenceProfile& profile(int agent) const;
    int agent_count() const { return static_cast<int>(profiles_.size()); }

private:
    OutcomeSpace space_;
    std::vector<PreferenceProfile> profiles_;
};

/// Non-empty ordered list of distinct agent indices into a profile table.
class Group {
public:
    explicit Group(std::vector<int> members);

    const std::vector<int>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool contains(int agent) const;

    /// Members as a sorted set; used as the identity of Pareto results.
    std::vector<int> sorted_members() const;

    /// Subset relation on member sets (proper or improper).
    bool is_subgroup_of(const Group& other) const;

private:
    std::vector<int> members_;
};

/// Group dominance: o dominates o_prime iff every member weakly prefers o
/// and at least one strictly prefers it. dominates(o, o, ...) is false.
bool dominates(int o, int o_prime, const Group& group, const ProfileTable& table);

namespace detail {
/// Throws unless all group members are valid agents of the table.
void validate_group(const Group& group, const ProfileTable& table);
/// Throws unless 0 <= o < size.
void validate_outcome(int o, const OutcomeSpace& space);
} // namespace detail

} // namespace subpareto
