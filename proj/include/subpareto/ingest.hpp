#pragma once

#include "subpareto/model.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace subpareto {

/// Parsed strict-ranking file. Ballot orders are best-first outcome
/// indices; each (count, order) pair stands for `count` identical ballots.
struct RankingData {
    OutcomeSpace space;
    std::vector<std::pair<std::int64_t, std::vector<int>>> ballots;

    std::int64_t total_ballots() const;
};

/// Ranking file format: header "items: <m>"; optional "label <id> <name>"
/// lines; ballot lines "<count>: <id>,<id>,..." listing every item id in
/// 1..m exactly once, best first; '#' starts a comment line.
RankingData parse_ranking_file(const std::string& path);

/// One strict profile per ballot instance; rank r maps to utility m - r.
ProfileTable load_rankings(const std::string& path);
ProfileTable rankings_to_profiles(const RankingData& data);

/// Sparse (user, item, rating) triples; at most one rating per pair.
struct RatingsMatrix {
    struct Entry {
        std::string user;
        std::string item;
        double rating;
    };
    std::vector<Entry> entries;
};

/// UTF-8 CSV with header "user,item,rating".
RatingsMatrix load_ratings_csv(const std::string& path);

/// Greedy complete-submatrix extraction: repeatedly add the user whose
/// inclusion maximizes the common-item count, ties broken by smaller user
/// id. Outcomes are the shared items in id order; utilities are the raw
/// ratings, ties preserved.
ProfileTable extract_complete_submatrix(const RatingsMatrix& ratings, int target_users);

/// Additive-utility domain file:
///   issue <name>: v1|v2|...
///   agent <name>
///   weights: w1,...,wK          (rationals like 3/10 or decimals, sum > 0)
///   eval <issue>: e1,...,eV     (one line per issue, values >= 0)
/// Outcomes enumerate the issue-value Cartesian product in lexicographic
/// order (last issue fastest); utility is the weighted max-normalized sum,
/// so it always lies in [0, 1]. Weights are normalized to sum exactly 1.
ProfileTable load_additive_domain(const std::string& path);

namespace detail {
/// Orders ids numerically when both are non-negative integers (ignoring
/// leading zeros), lexicographically otherwise.
bool id_less(const std::string& a, const std::string& b);
} // namespace detail

} // namespace subpareto
