#include "subpareto/csv_io.hpp"
#include "subpareto/errors.hpp"
#include "subpareto/ingest.hpp"
#include "subpareto/model.hpp"
#include "subpareto/pareto.hpp"
#include "subpareto/rational.hpp"
#include "subpareto/scan.hpp"
#include "subpareto/theory.hpp"
#include "subpareto/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>

namespace {

using json = nlohmann::json;
using namespace subpareto;

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    return hash;
}

json input_record(const std::string& path) {
    return json{{"path", path}, {"fnv1a64", fnv1a64_file(path)}};
}

void write_manifest(const std::string& output_path, json manifest) {
    manifest["tool"] = "subpareto";
    manifest["version"] = kVersion;
    std::string path = output_path + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot open '" + path + "' for writing");
    out << manifest.dump(2) << '\n';
}

std::vector<int> parse_group_spec(const std::string& spec, int agent_count) {
    std::vector<int> members;
    if (spec == "all") {
        members.resize(static_cast<size_t>(agent_count));
        std::iota(members.begin(), members.end(), 0);
        return members;
    }
    std::string token;
    std::stringstream ss(spec);
    while (std::getline(ss, token, ',')) {
        try {
            size_t pos = 0;
            int idx = std::stoi(token, &pos);
            if (pos != token.size()) throw std::invalid_argument(token);
            members.push_back(idx);
        } catch (const std::exception&) {
            throw input_error("bad agent index '" + token + "' in group spec");
        }
    }
    if (members.empty()) throw input_error("empty group spec");
    return members;
}

int cmd_pareto(const std::string& profiles_path, const std::string& group_spec) {
    ProfileTable table = read_profile_csv_file(profiles_path);
    Group group(parse_group_spec(group_spec, table.agent_count()));
    detail::validate_group(group, table);
    ParetoResult result = pareto_set_fast(group, table);

    std::cout << "outcome,label";
    for (int a : group.members()) std::cout << ",agent_" << a;
    std::cout << '\n';
    for (int o : result.optimal) {
        std::cout << o << ',' << csv_field(table.space().label(o));
        for (int a : group.members()) std::cout << ',' << double_repr(table.profile(a).utility(o));
        std::cout << '\n';
    }
    return 0;
}

ScanConfig load_scan_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path, 0, e.what());
    }
    ScanConfig config;
    try {
        if (j.contains("group_sizes")) config.group_sizes = j["group_sizes"].get<std::vector<int>>();
        if (j.contains("max_groups_per_size"))
            config.max_groups_per_size = j["max_groups_per_size"].get<std::int64_t>();
        if (j.contains("rng_seed")) config.rng_seed = j["rng_seed"].get<std::uint64_t>();
        if (j.contains("min_samples_flag")) config.min_samples_flag = j["min_samples_flag"].get<int>();
    } catch (const json::exception& e) {
        throw parse_error(path, 0, e.what());
    }
    return config;
}

int cmd_scan(const std::string& profiles_path, const ScanConfig& config, int threads,
             const std::string& out_path) {
    auto start = std::chrono::steady_clock::now();
    ProfileTable table = read_profile_csv_file(profiles_path);
    ScanReport report = run_scan(config, table, threads);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (out_path.empty()) {
        write_scan_csv(std::cout, report);
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw input_error("cannot open '" + out_path + "' for writing");
    write_scan_csv(out, report);
    out.close();

    write_manifest(out_path, json{{"command", "scan"},
                                  {"inputs", json::array({input_record(profiles_path)})},
                                  {"output", out_path},
                                  {"config",
                                   {{"group_sizes", config.group_sizes},
                                    {"max_groups_per_size", config.max_groups_per_size},
                                    {"rng_seed", config.rng_seed},
                                    {"min_samples_flag", config.min_samples_flag}}},
                                  {"rng_seed", config.rng_seed},
                                  {"duration_seconds", seconds}});
    return 0;
}

// exact decimal rendering of num/den when it terminates within 17 digits
std::optional<std::string> exact_decimal(const mpq_class& value) {
    int digits = decimal_exact_digits(value);
    if (digits < 0 || digits > 17) return std::nullopt;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class scaled = value.get_num() * pow10 / value.get_den();
    bool negative = scaled < 0;
    std::string s = mpz_class(abs(scaled)).get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - static_cast<size_t>(digits));
    if (digits > 0) {
        std::string frac = s.substr(s.size() - static_cast<size_t>(digits));
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    }
    return (negative ? "-" : "") + out;
}

int cmd_expected(int m, int n, std::int64_t mc_samples, std::uint64_t seed) {
    mpq_class value = expected_pareto_count({m, n});
    if (value.get_den() == 1) {
        std::cout << value.get_num().get_str() << '\n';
    } else if (auto exact = exact_decimal(value)) {
        std::cout << value.get_num().get_str() << '/' << value.get_den().get_str() << " = "
                  << *exact << '\n';
    } else {
        std::cout << value.get_num().get_str() << '/' << value.get_den().get_str() << " ≈ "
                  << rational_decimal(value, 12) << '\n';
    }
    if (mc_samples > 0) {
        MonteCarloEstimate est = expected_pareto_count_mc({m, n}, mc_samples, seed);
        std::cout << "monte_carlo: " << double_repr(est.mean) << " ± " << double_repr(est.std_error)
                  << " (" << est.samples << " samples, seed " << seed << ")\n";
    }
    return 0;
}

int cmd_borda(const std::string& rankings_path) {
    RankingData data = parse_ranking_file(rankings_path);
    BordaTally tally = borda_count_weighted(data.ballots, data.space);
    std::vector<int> order(static_cast<size_t>(data.space.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto sa = tally.scores[static_cast<size_t>(a)], sb = tally.scores[static_cast<size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    });
    std::cout << "label,score\n";
    for (int o : order)
        std::cout << csv_field(data.space.label(o)) << ',' << tally.scores[static_cast<size_t>(o)]
                  << '\n';
    return 0;
}

int cmd_ingest(const std::string& kind, const std::string& input, const std::string& output,
               int target_users) {
    auto start = std::chrono::steady_clock::now();
    ProfileTable table = [&] {
        if (kind == "rankings") return load_rankings(input);
        if (kind == "ratings") return extract_complete_submatrix(load_ratings_csv(input), target_users);
        if (kind == "additive") return load_additive_domain(input);
        throw input_error("unknown ingest kind '" + kind + "' (use rankings|ratings|additive)");
    }();
    write_profile_csv_file(output, table);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::vector<std::string> agent_ids;
    agent_ids.reserve(static_cast<size_t>(table.agent_count()));
    for (const auto& p : table.profiles()) agent_ids.push_back(p.agent_id());
    json manifest{{"command", "ingest"},
                  {"kind", kind},
                  {"inputs", json::array({input_record(input)})},
                  {"output", output},
                  {"outcomes", table.space().size()},
                  {"agents", table.agent_count()},
                  {"agent_ids", agent_ids},
                  {"duration_seconds", seconds}};
    if (kind == "ratings") manifest["target_users"] = target_users;
    write_manifest(output, std::move(manifest));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto-optimal outcome analysis for groups and subgroups"};
    app.set_version_flag("--version", std::string("subpareto ") + kVersion);
    app.require_subcommand(1);

    // pareto
    std::string pareto_profiles, pareto_group;
    auto* pareto_cmd = app.add_subcommand("pareto", "Pareto-optimal outcomes for a group");
    pareto_cmd->add_option("profiles", pareto_profiles, "canonical profile CSV")->required();
    pareto_cmd->add_option("group", pareto_group, "comma-separated agent indices, or 'all'")
        ->required();

    // scan
    std::string scan_profiles, scan_config_path, scan_out;
    std::vector<int> scan_group_sizes;
    std::int64_t scan_cap = 1000;
    std::uint64_t scan_seed = 0;
    int scan_min_samples = 30;
    int scan_threads = 0;
    auto* scan_cmd = app.add_subcommand("scan", "subgroup ratio/false-positive experiment");
    scan_cmd->add_option("profiles", scan_profiles, "canonical profile CSV")->required();
    scan_cmd->add_option("--config", scan_config_path, "JSON config file");
    auto* opt_sizes = scan_cmd->add_option("--group-sizes", scan_group_sizes,
                                           "group sizes to sample (default 5,7,9)")
                          ->delimiter(',');
    auto* opt_cap = scan_cmd->add_option("--cap", scan_cap, "max sampled groups per size");
    auto* opt_seed = scan_cmd->add_option("--seed", scan_seed, "rng seed");
    auto* opt_flag =
        scan_cmd->add_option("--min-samples-flag", scan_min_samples, "low-sample threshold");
    scan_cmd->add_option("--threads", scan_threads, "worker threads (0 = hardware)");
    scan_cmd->add_option("--out", scan_out, "write report CSV here plus a sidecar manifest");

    // expected
    int exp_m = 0, exp_n = 0;
    std::int64_t exp_mc = 0;
    std::uint64_t exp_seed = 0;
    auto* exp_cmd = app.add_subcommand("expected", "expected Pareto-set size for m outcomes, n agents");
    exp_cmd->add_option("m", exp_m, "domain size")->required()->check(CLI::PositiveNumber);
    exp_cmd->add_option("n", exp_n, "agent count")->required()->check(CLI::PositiveNumber);
    exp_cmd->add_option("--mc", exp_mc, "also run a Monte Carlo cross-check with this many samples");
    exp_cmd->add_option("--seed", exp_seed, "rng seed");

    // borda
    std::string borda_path;
    auto* borda_cmd = app.add_subcommand("borda", "Borda scores of a ranking file");
    borda_cmd->add_option("rankings", borda_path, "ranking file")->required();

    // ingest
    std::string ingest_kind, ingest_input, ingest_output;
    int ingest_target_users = 2;
    auto* ingest_cmd = app.add_subcommand("ingest", "convert a dataset to canonical profile CSV");
    ingest_cmd->add_option("kind", ingest_kind, "rankings|ratings|additive")->required();
    ingest_cmd->add_option("input", ingest_input, "input file")->required();
    ingest_cmd->add_option("output", ingest_output, "output CSV path")->required();
    ingest_cmd->add_option("--target-users", ingest_target_users,
                           "users to keep for ratings extraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (pareto_cmd->parsed()) return cmd_pareto(pareto_profiles, pareto_group);
        if (scan_cmd->parsed()) {
            ScanConfig config;
            if (!scan_config_path.empty()) config = load_scan_config(scan_config_path);
            if (opt_sizes->count() > 0) config.group_sizes = scan_group_sizes;
            if (opt_cap->count() > 0) config.max_groups_per_size = scan_cap;
            if (opt_seed->count() > 0) config.rng_seed = scan_seed;
            if (opt_flag->count() > 0) config.min_samples_flag = scan_min_samples;
            return cmd_scan(scan_profiles, config, scan_threads, scan_out);
        }
        if (exp_cmd->parsed()) return cmd_expected(exp_m, exp_n, exp_mc, exp_seed);
        if (borda_cmd->parsed()) return cmd_borda(borda_path);
        if (ingest_cmd->parsed())
            return cmd_ingest(ingest_kind, ingest_input, ingest_output, ingest_target_users);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const consistency_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const extraction_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
