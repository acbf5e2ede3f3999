#include "subpareto/csv_io.hpp"

#include "subpareto/errors.hpp"
#include "subpareto/ingest.hpp"
#include "subpareto/scan.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace subpareto;

TEST_CASE("double_repr round-trips exactly") {
    std::mt19937_64 engine(17);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        double v = dist(engine);
        CHECK(std::stod(double_repr(v)) == v);
    }
    for (double v : {0.0, 0.1, 1.0 / 3.0, 1e-300, 1e300, -2.5}) {
        CHECK(std::stod(double_repr(v)) == v);
    }
}

TEST_CASE("csv fields quote separators") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    auto fields = split_csv_record("x,\"a,b\",\"q\"\"q\"", "t", 1);
    REQUIRE(fields.size() == 3);
    CHECK(fields[1] == "a,b");
    CHECK(fields[2] == "q\"q");
    CHECK_THROWS_AS(split_csv_record("\"open", "t", 1), parse_error);
}

TEST_CASE("profile tables round-trip through the canonical CSV") {
    std::mt19937_64 engine(23);
    for (int round = 0; round < 20; ++round) {
        auto table = round % 2 == 0
                         ? testutil::random_strict_table(3 + static_cast<int>(engine() % 12),
                                                         1 + static_cast<int>(engine() % 6), engine)
                         : testutil::random_rating_table(3 + static_cast<int>(engine() % 12),
                                                         1 + static_cast<int>(engine() % 6), 0, 5,
                                                         engine);
        std::ostringstream out;
        write_profile_csv(out, table);
        std::istringstream in(out.str());
        ProfileTable reloaded = read_profile_csv(in, "mem");
        REQUIRE(reloaded.agent_count() == table.agent_count());
        REQUIRE(reloaded.space().size() == table.space().size());
        for (int a = 0; a < table.agent_count(); ++a)
            CHECK(reloaded.profile(a).utilities() == table.profile(a).utilities());
        for (int o = 0; o < table.space().size(); ++o)
            CHECK(reloaded.space().label(o) == table.space().label(o));

        // serialization itself is stable
        std::ostringstream again;
        write_profile_csv(again, reloaded);
        CHECK(again.str() == out.str());
    }
}

TEST_CASE("fractional utilities survive the round trip bit-exactly") {
    std::vector<PreferenceProfile> profiles;
    profiles.emplace_back("a", std::vector<double>{0.1, 1.0 / 3.0, 5.0 / 12.0});
    ProfileTable table(OutcomeSpace(3, {"x", "y,z", "w\"w"}), std::move(profiles));
    std::ostringstream out;
    write_profile_csv(out, table);
    std::istringstream in(out.str());
    ProfileTable reloaded = read_profile_csv(in, "mem");
    CHECK(reloaded.profile(0).utilities() == table.profile(0).utilities());
    CHECK(reloaded.space().label(1) == "y,z");
    CHECK(reloaded.space().label(2) == "w\"w");
}

TEST_CASE("loaded datasets survive the round trip") {
    const std::string dir = SUBPARETO_TEST_DATA_DIR;
    for (const char* name : {"additive_small.txt", "additive_single.txt"}) {
        ProfileTable table = load_additive_domain(dir + "/" + name);
        std::ostringstream out;
        write_profile_csv(out, table);
        std::istringstream in(out.str());
        ProfileTable reloaded = read_profile_csv(in, name);
        for (int a = 0; a < table.agent_count(); ++a)
            CHECK(reloaded.profile(a).utilities() == table.profile(a).utilities());
    }
}

TEST_CASE("profile csv parse errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_profile_csv(in, "mem");
    };
    CHECK_THROWS_AS(parse(""), parse_error);
    CHECK_THROWS_AS(parse("bad,header\n"), parse_error);
    CHECK_THROWS_AS(parse("outcome,label,agent_0\n"), parse_error);
    CHECK_THROWS_AS(parse("outcome,label,agent_0\n1,x,0.5\n"), parse_error);
    CHECK_THROWS_AS(parse("outcome,label,agent_0\n0,x,0.5,9\n"), parse_error);
    CHECK_THROWS_AS(parse("outcome,label,agent_0\n0,x,zap\n"), parse_error);
    CHECK_THROWS_AS(parse("outcome,label,agent_0\n0,x,1\n1,x,2\n"), parse_error);
    CHECK_THROWS_AS(parse("outcome,label,agent_0\n0,x,nan\n"), parse_error);
}

TEST_CASE("scan report csv layout") {
    std::mt19937_64 engine(29);
    auto table = testutil::random_strict_table(8, 6, engine);
    ScanConfig config;
    config.group_sizes = {4};
    config.max_groups_per_size = 10;
    ScanReport report = run_scan(config, table);
    std::ostringstream out;
    write_scan_csv(out, report);
    std::string text = out.str();
    CHECK(text.rfind("group_size,subgroup_size,mean_ratio,mean_false_positive_rate,"
                     "sample_count,low_sample_flag\n",
                     0) == 0);
    CHECK(text.find("group_size,empirical_pareto_fraction,theoretical_pareto_fraction\n") !=
          std::string::npos);
    std::ostringstream out2;
    write_scan_csv(out2, run_scan(config, table));
    CHECK(out2.str() == text);
}
