#include "subpareto/ingest.hpp"

#include "subpareto/csv_io.hpp"
#include "subpareto/errors.hpp"
#include "subpareto/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace subpareto {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

long parse_long(const std::string& text, const std::string& file, long line_no) {
    std::string t = trim(text);
    long value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw parse_error(file, line_no, "bad integer '" + text + "'");
    return value;
}

struct LineReader {
    std::ifstream in;
    std::string file;
    long line_no = 0;

    explicit LineReader(const std::string& path) : in(path), file(path) {
        if (!in) throw input_error("cannot open '" + path + "'");
    }

    // next non-blank, non-comment line, trimmed
    bool next(std::string& out) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            out = t;
            return true;
        }
        return false;
    }
};

} // namespace

std::int64_t RankingData::total_ballots() const {
    std::int64_t total = 0;
    for (const auto& [count, order] : ballots) total += count;
    return total;
}

RankingData parse_ranking_file(const std::string& path) {
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw parse_error(path, reader.line_no, "missing 'items:' header");
    if (line.rfind("items:", 0) != 0)
        throw parse_error(path, reader.line_no, "expected 'items: <m>' header");
    long m = parse_long(line.substr(6), path, reader.line_no);
    if (m < 1) throw parse_error(path, reader.line_no, "item count must be >= 1");

    std::vector<std::string> labels(static_cast<size_t>(m));
    std::vector<char> label_set(static_cast<size_t>(m), 0);
    for (long i = 0; i < m; ++i) labels[static_cast<size_t>(i)] = std::to_string(i + 1);

    std::vector<std::pair<std::int64_t, std::vector<int>>> ballots;
    while (reader.next(line)) {
        if (line.rfind("label ", 0) == 0) {
            std::string rest = trim(line.substr(6));
            size_t sp = rest.find_first_of(" \t");
            if (sp == std::string::npos)
                throw parse_error(path, reader.line_no, "expected 'label <id> <name>'");
            long id = parse_long(rest.substr(0, sp), path, reader.line_no);
            if (id < 1 || id > m)
                throw parse_error(path, reader.line_no, "label id " + std::to_string(id) +
                                                            " outside 1.." + std::to_string(m));
            if (label_set[static_cast<size_t>(id - 1)])
                throw parse_error(path, reader.line_no,
                                  "duplicate label for item " + std::to_string(id));
            label_set[static_cast<size_t>(id - 1)] = 1;
            labels[static_cast<size_t>(id - 1)] = trim(rest.substr(sp + 1));
            continue;
        }
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw parse_error(path, reader.line_no, "expected '<count>: <id>,<id>,...'");
        long count = parse_long(line.substr(0, colon), path, reader.line_no);
        if (count < 1) throw parse_error(path, reader.line_no, "ballot count must be >= 1");

        auto id_fields = split(line.substr(colon + 1), ',');
        if (static_cast<long>(id_fields.size()) != m)
            throw parse_error(path, reader.line_no,
                              "ballot lists " + std::to_string(id_fields.size()) +
                                  " items, expected " + std::to_string(m));
        std::vector<int> order;
        order.reserve(static_cast<size_t>(m));
        std::vector<char> seen(static_cast<size_t>(m), 0);
        for (const auto& f : id_fields) {
            long id = parse_long(f, path, reader.line_no);
            if (id < 1 || id > m)
                throw parse_error(path, reader.line_no, "unknown item id " + std::to_string(id));
            if (seen[static_cast<size_t>(id - 1)])
                throw parse_error(path, reader.line_no,
                                  "item " + std::to_string(id) + " appears twice in ballot");
            seen[static_cast<size_t>(id - 1)] = 1;
            order.push_back(static_cast<int>(id - 1));
        }
        ballots.emplace_back(count, std::move(order));
    }

    try {
        return RankingData{OutcomeSpace(static_cast<int>(m), std::move(labels)), std::move(ballots)};
    } catch (const input_error& e) {
        throw parse_error(path, reader.line_no, e.what());
    }
}

ProfileTable rankings_to_profiles(const RankingData& data) {
    const int m = data.space.size();
    std::vector<PreferenceProfile> profiles;
    profiles.reserve(static_cast<size_t>(data.total_ballots()));
    std::int64_t serial = 0;
    for (const auto& [count, order] : data.ballots) {
        std::vector<double> utilities(static_cast<size_t>(m));
        for (int pos = 0; pos < m; ++pos) {
            // rank = pos + 1 (best first), utility = m - rank
            utilities[static_cast<size_t>(order[static_cast<size_t>(pos)])] =
                static_cast<double>(m - 1 - pos);
        }
        for (std::int64_t c = 0; c < count; ++c) {
            profiles.emplace_back("ballot_" + std::to_string(serial), utilities);
            ++serial;
        }
    }
    return ProfileTable(data.space, std::move(profiles));
}

ProfileTable load_rankings(const std::string& path) {
    return rankings_to_profiles(parse_ranking_file(path));
}

RatingsMatrix load_ratings_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw parse_error(path, 1, "empty ratings CSV");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (split_csv_record(line, path, line_no) != std::vector<std::string>{"user", "item", "rating"})
        throw parse_error(path, line_no, "expected header 'user,item,rating'");

    RatingsMatrix matrix;
    std::set<std::pair<std::string, std::string>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv_record(line, path, line_no);
        if (fields.size() != 3)
            throw parse_error(path, line_no, "expected 3 fields, got " +
                                                 std::to_string(fields.size()));
        double rating = 0.0;
        auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), rating);
        if (ec != std::errc() || ptr != fields[2].data() + fields[2].size() || !std::isfinite(rating))
            throw parse_error(path, line_no, "bad rating '" + fields[2] + "'");
        if (!seen.emplace(fields[0], fields[1]).second)
            throw parse_error(path, line_no,
                              "duplicate rating for user '" + fields[0] + "', item '" + fields[1] + "'");
        matrix.entries.push_back({fields[0], fields[1], rating});
    }
    return matrix;
}

namespace detail {

bool id_less(const std::string& a, const std::string& b) {
    auto numeric = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isdigit(c);
        });
    };
    if (numeric(a) && numeric(b)) {
        std::string sa = a.substr(std::min(a.find_first_not_of('0'), a.size()));
        std::string sb = b.substr(std::min(b.find_first_not_of('0'), b.size()));
        if (sa.size() != sb.size()) return sa.size() < sb.size();
        if (sa != sb) return sa < sb;
        return a < b;
    }
    return a < b;
}

} // namespace detail

ProfileTable extract_complete_submatrix(const RatingsMatrix& ratings, int target_users) {
    if (target_users < 2) throw input_error("target_users must be >= 2");

    auto cmp = [](const std::string& a, const std::string& b) { return detail::id_less(a, b); };
    std::map<std::string, std::map<std::string, double, decltype(cmp)>, decltype(cmp)> by_user(cmp);
    for (const auto& e : ratings.entries) {
        by_user.try_emplace(e.user, cmp).first->second.emplace(e.item, e.rating);
    }
    if (static_cast<int>(by_user.size()) < target_users)
        throw input_error("ratings matrix holds " + std::to_string(by_user.size()) +
                          " users, need " + std::to_string(target_users));

    std::vector<std::string> selected;
    std::set<std::string, decltype(cmp)> common(cmp);
    std::set<std::string> taken;
    for (int step = 0; step < target_users; ++step) {
        const std::string* best_user = nullptr;
        std::vector<std::string> best_common;
        for (const auto& [user, items] : by_user) {
            if (taken.count(user)) continue;
            std::vector<std::string> candidate;
            if (step == 0) {
                for (const auto& [item, rating] : items) candidate.push_back(item);
            } else {
                for (const auto& item : common) {
                    if (items.count(item)) candidate.push_back(item);
                }
            }
            // map iteration is id-ordered, so strict improvement keeps the
            // smallest-id user among ties
            if (best_user == nullptr || candidate.size() > best_common.size()) {
                best_user = &user;
                best_common = std::move(candidate);
            }
        }
        selected.push_back(*best_user);
        taken.insert(*best_user);
        common.clear();
        common.insert(best_common.begin(), best_common.end());
    }

    if (common.size() < 2)
        throw extraction_error("selected users share only " + std::to_string(common.size()) +
                               " items; need at least 2 common items");

    std::vector<std::string> items(common.begin(), common.end());
    OutcomeSpace space(static_cast<int>(items.size()), items);
    std::vector<PreferenceProfile> profiles;
    profiles.reserve(selected.size());
    for (const auto& user : selected) {
        const auto& user_items = by_user.find(user)->second;
        std::vector<double> utilities;
        utilities.reserve(items.size());
        for (const auto& item : items) utilities.push_back(user_items.find(item)->second);
        profiles.emplace_back(user, std::move(utilities));
    }
    return ProfileTable(std::move(space), std::move(profiles));
}

namespace {

struct IssueSpec {
    std::string name;
    std::vector<std::string> values;
};

} // namespace

ProfileTable load_additive_domain(const std::string& path) {
    LineReader reader(path);

    std::vector<IssueSpec> issues;
    std::set<std::string> issue_names;

    struct AgentSpec {
        std::string name;
        long decl_line = 0;
        std::vector<mpq_class> weights;
        std::map<std::string, std::vector<mpq_class>> evals;
    };
    std::vector<AgentSpec> agents;

    std::string line;
    while (reader.next(line)) {
        if (line.rfind("issue ", 0) == 0) {
            if (!agents.empty())
                throw parse_error(path, reader.line_no, "issues must be declared before agents");
            size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw parse_error(path, reader.line_no, "expected 'issue <name>: v1|v2|...'");
            IssueSpec issue;
            issue.name = trim(line.substr(6, colon - 6));
            if (issue.name.empty()) throw parse_error(path, reader.line_no, "empty issue name");
            if (!issue_names.insert(issue.name).second)
                throw parse_error(path, reader.line_no, "duplicate issue '" + issue.name + "'");
            std::set<std::string> value_set;
            for (const auto& raw : split(line.substr(colon + 1), '|')) {
                std::string v = trim(raw);
                if (v.empty()) throw parse_error(path, reader.line_no, "empty issue value");
                if (!value_set.insert(v).second)
                    throw parse_error(path, reader.line_no, "duplicate value '" + v + "'");
                issue.values.push_back(v);
            }
            issues.push_back(std::move(issue));
        } else if (line.rfind("agent ", 0) == 0) {
            if (issues.empty())
                throw parse_error(path, reader.line_no, "agent declared before any issue");
            AgentSpec agent;
            agent.name = trim(line.substr(6));
            agent.decl_line = reader.line_no;
            if (agent.name.empty()) throw parse_error(path, reader.line_no, "empty agent name");
            agents.push_back(std::move(agent));
        } else if (line.rfind("weights:", 0) == 0) {
            if (agents.empty())
                throw parse_error(path, reader.line_no, "weights outside an agent block");
            AgentSpec& agent = agents.back();
            if (!agent.weights.empty())
                throw parse_error(path, reader.line_no, "duplicate weights for '" + agent.name + "'");
            for (const auto& w : split(line.substr(8), ',')) {
                mpq_class q;
                try {
                    q = parse_rational(trim(w));
                } catch (const input_error& e) {
                    throw parse_error(path, reader.line_no, e.what());
                }
                if (q < 0) throw parse_error(path, reader.line_no, "negative weight");
                agent.weights.push_back(q);
            }
            if (agent.weights.size() != issues.size())
                throw parse_error(path, reader.line_no,
                                  "expected " + std::to_string(issues.size()) + " weights, got " +
                                      std::to_string(agent.weights.size()));
        } else if (line.rfind("eval ", 0) == 0) {
            if (agents.empty())
                throw parse_error(path, reader.line_no, "eval outside an agent block");
            AgentSpec& agent = agents.back();
            size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw parse_error(path, reader.line_no, "expected 'eval <issue>: e1,...'");
            std::string issue_name = trim(line.substr(5, colon - 5));
            auto it = std::find_if(issues.begin(), issues.end(),
                                   [&](const IssueSpec& s) { return s.name == issue_name; });
            if (it == issues.end())
                throw parse_error(path, reader.line_no, "unknown issue '" + issue_name + "'");
            if (agent.evals.count(issue_name))
                throw parse_error(path, reader.line_no,
                                  "duplicate eval for issue '" + issue_name + "'");
            std::vector<mpq_class> values;
            for (const auto& e : split(line.substr(colon + 1), ',')) {
                mpq_class q;
                try {
                    q = parse_rational(trim(e));
                } catch (const input_error& err) {
                    throw parse_error(path, reader.line_no, err.what());
                }
                if (q < 0) throw parse_error(path, reader.line_no, "negative evaluation");
                values.push_back(q);
            }
            if (values.size() != it->values.size())
                throw parse_error(path, reader.line_no,
                                  "expected " + std::to_string(it->values.size()) +
                                      " evaluations, got " + std::to_string(values.size()));
            agent.evals.emplace(issue_name, std::move(values));
        } else {
            throw parse_error(path, reader.line_no, "unrecognized line: '" + line + "'");
        }
    }

    if (issues.empty()) throw parse_error(path, reader.line_no, "no issues declared");

    // outcome space: Cartesian product, last issue fastest
    long long outcome_count = 1;
    for (const auto& issue : issues) {
        outcome_count *= static_cast<long long>(issue.values.size());
        if (outcome_count > (1LL << 31) - 1)
            throw input_error("outcome space too large: " + path);
    }
    const auto m = static_cast<int>(outcome_count);

    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(m));
    std::vector<size_t> combo(issues.size(), 0);
    for (int o = 0; o < m; ++o) {
        std::string label;
        for (size_t k = 0; k < issues.size(); ++k) {
            if (k > 0) label += '|';
            label += issues[k].values[combo[k]];
        }
        labels.push_back(std::move(label));
        for (size_t k = issues.size(); k-- > 0;) {
            if (++combo[k] < issues[k].values.size()) break;
            combo[k] = 0;
        }
    }
    OutcomeSpace space(m, std::move(labels));

    std::vector<PreferenceProfile> profiles;
    profiles.reserve(agents.size());
    for (auto& agent : agents) {
        if (agent.weights.empty())
            throw parse_error(path, agent.decl_line, "agent '" + agent.name + "' missing weights");
        mpq_class weight_sum = 0;
        for (const auto& w : agent.weights) weight_sum += w;
        if (weight_sum == 0)
            throw input_error("agent '" + agent.name + "' has zero total weight");

        // per-issue normalized per-value utilities: w_k * e_k(v) / max(e_k),
        // with weights rescaled to sum exactly 1
        std::vector<std::vector<mpq_class>> value_utils(issues.size());
        for (size_t k = 0; k < issues.size(); ++k) {
            auto it = agent.evals.find(issues[k].name);
            if (it == agent.evals.end())
                throw parse_error(path, agent.decl_line,
                                  "agent '" + agent.name + "' missing eval for issue '" +
                                      issues[k].name + "'");
            const auto& evals = it->second;
            mpq_class max_eval = 0;
            for (const auto& e : evals)
                if (e > max_eval) max_eval = e;
            if (max_eval == 0)
                throw input_error("agent '" + agent.name + "': all evaluations of issue '" +
                                  issues[k].name + "' are zero");
            mpq_class weight = agent.weights[k] / weight_sum;
            value_utils[k].reserve(evals.size());
            for (const auto& e : evals) value_utils[k].push_back(weight * e / max_eval);
        }

        std::vector<double> utilities(static_cast<size_t>(m));
        std::fill(combo.begin(), combo.end(), 0);
        for (int o = 0; o < m; ++o) {
            mpq_class u = 0;
            for (size_t k = 0; k < issues.size(); ++k) u += value_utils[k][combo[k]];
            utilities[static_cast<size_t>(o)] = rational_to_double(u);
            for (size_t k = issues.size(); k-- > 0;) {
                if (++combo[k] < issues[k].values.size()) break;
                combo[k] = 0;
            }
        }
        profiles.emplace_back(agent.name, std::move(utilities));
    }

    return ProfileTable(std::move(space), std::move(profiles));
}

} // namespace subpareto
