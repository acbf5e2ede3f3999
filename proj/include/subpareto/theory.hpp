#pragma once

#include "subpareto/model.hpp"
#include "subpareto/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace subpareto {

/// Domain size m and agent count n for the expected Pareto-set size under
/// the equal-probability (impartial culture) assumption.
struct ExpectationQuery {
    int m = 1;
    int n = 1;
};

/// Expected number of Pareto-optimal outcomes among m alternatives for n
/// agents with independent uniform strict preferences:
///
///   E = -sum_{i=1..m} (-1)^i C(m,i) / i^(n-1)
///
/// Evaluated exactly over rationals; the alternating binomial sum cancels
/// catastrophically in floating point already at moderate m. The value lies
/// in [1, m].
mpq_class expected_pareto_count(const ExpectationQuery& query);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

/// Monte Carlo cross-check: per trial, draws n independent uniform random
/// permutations as utilities and measures the Pareto-set size with the
/// reference filter. Per-trial seeds derive from (seed, trial index), so the
/// estimate is reproducible. Intended for small m.
MonteCarloEstimate expected_pareto_count_mc(const ExpectationQuery& query, std::int64_t samples,
                                            std::uint64_t seed);

/// Borda scores; item ranked r-th of m on a ballot earns m - r points.
struct BordaTally {
    std::vector<std::int64_t> scores;
    std::string convention_tag = "score = m - rank";
};

/// Tallies complete strict ballots, each a best-first permutation of all
/// outcome indices. Ballots with missing or repeated items are rejected.
BordaTally borda_count(const std::vector<std::vector<int>>& ballots, const OutcomeSpace& space);

/// Same tally over (multiplicity, ballot) pairs.
BordaTally borda_count_weighted(const std::vector<std::pair<std::int64_t, std::vector<int>>>& ballots,
                                const OutcomeSpace& space);

} // namespace subpareto
