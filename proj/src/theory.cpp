#include "subpareto/theory.hpp"

#include "subpareto/detail/rng.hpp"
#include "subpareto/errors.hpp"
#include "subpareto/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace subpareto {

mpq_class expected_pareto_count(const ExpectationQuery& query) {
    if (query.m < 1) throw input_error("domain size m must be >= 1");
    if (query.n < 1) throw input_error("agent count n must be >= 1");

    const unsigned long n_minus_1 = static_cast<unsigned long>(query.n - 1);
    mpz_class binom = 1; // C(m, i), updated incrementally
    mpq_class sum = 0;
    for (int i = 1; i <= query.m; ++i) {
        binom *= query.m - i + 1;
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(i));
        mpz_class power;
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(i), n_minus_1);
        mpq_class term(binom, power);
        term.canonicalize();
        if (i % 2 == 1)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

MonteCarloEstimate expected_pareto_count_mc(const ExpectationQuery& query, std::int64_t samples,
                                            std::uint64_t seed) {
    if (query.m < 1) throw input_error("domain size m must be >= 1");
    if (query.n < 1) throw input_error("agent count n must be >= 1");
    if (samples < 1) throw input_error("sample count must be >= 1");

    const int m = query.m, n = query.n;
    std::vector<int> members(static_cast<size_t>(n));
    std::iota(members.begin(), members.end(), 0);
    const Group group(members);
    std::vector<int> ranks(static_cast<size_t>(m));

    // integer accumulators keep the estimate independent of summation order
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (std::int64_t trial = 0; trial < samples; ++trial) {
        auto engine = detail::make_engine(seed, static_cast<std::uint64_t>(trial));
        std::vector<PreferenceProfile> profiles;
        profiles.reserve(static_cast<size_t>(n));
        for (int a = 0; a < n; ++a) {
            std::iota(ranks.begin(), ranks.end(), 0);
            std::shuffle(ranks.begin(), ranks.end(), engine);
            std::vector<double> utilities(static_cast<size_t>(m));
            for (int o = 0; o < m; ++o) utilities[static_cast<size_t>(o)] = ranks[static_cast<size_t>(o)];
            profiles.emplace_back("mc_" + std::to_string(a), std::move(utilities));
        }
        ProfileTable table(OutcomeSpace(m), std::move(profiles));
        auto count = static_cast<std::int64_t>(pareto_set_naive(group, table).optimal.size());
        sum += count;
        sum_sq += count * count;
    }

    MonteCarloEstimate est;
    est.samples = samples;
    est.mean = static_cast<double>(sum) / static_cast<double>(samples);
    if (samples > 1) {
        double mean = est.mean;
        double var = (static_cast<double>(sum_sq) - static_cast<double>(samples) * mean * mean) /
                     static_cast<double>(samples - 1);
        if (var < 0) var = 0; // guard tiny negative round-off
        est.std_error = std::sqrt(var / static_cast<double>(samples));
    }
    return est;
}

BordaTally borda_count_weighted(const std::vector<std::pair<std::int64_t, std::vector<int>>>& ballots,
                                const OutcomeSpace& space) {
    const int m = space.size();
    BordaTally tally;
    tally.scores.assign(static_cast<size_t>(m), 0);
    std::vector<char> seen(static_cast<size_t>(m));
    for (const auto& [count, ballot] : ballots) {
        if (count < 1) throw input_error("ballot multiplicity must be >= 1");
        if (static_cast<int>(ballot.size()) != m)
            throw input_error("ballot ranks " + std::to_string(ballot.size()) + " items, expected " +
                              std::to_string(m));
        std::fill(seen.begin(), seen.end(), 0);
        for (int pos = 0; pos < m; ++pos) {
            int item = ballot[static_cast<size_t>(pos)];
            detail::validate_outcome(item, space);
            if (seen[static_cast<size_t>(item)])
                throw input_error("ballot ranks item " + std::to_string(item) + " twice");
            seen[static_cast<size_t>(item)] = 1;
            // rank = pos + 1, score = m - rank
            tally.scores[static_cast<size_t>(item)] += count * static_cast<std::int64_t>(m - 1 - pos);
        }
    }
    return tally;
}

BordaTally borda_count(const std::vector<std::vector<int>>& ballots, const OutcomeSpace& space) {
    std::vector<std::pair<std::int64_t, std::vector<int>>> weighted;
    weighted.reserve(ballots.size());
    for (const auto& b : ballots) weighted.emplace_back(1, b);
    return borda_count_weighted(weighted, space);
}

} // namespace subpareto
