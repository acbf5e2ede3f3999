#include "subpareto/csv_io.hpp"
#include "subpareto/errors.hpp"
#include "subpareto/ingest.hpp"
#include "subpareto/model.hpp"
#include "subpareto/pareto.hpp"
#include "subpareto/rational.hpp"
#include "subpareto/scan.hpp"
#include "subpareto/theory.hpp"
#include "subpareto/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace subpareto;

namespace {

// exact rationals cross the boundary as fractions.Fraction
py::object to_fraction(const mpq_class& value) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(value.get_num().get_str())),
                    py::int_(py::str(value.get_den().get_str())));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pareto-optimal outcome analysis for agent groups and subgroups";
    m.attr("__version__") = kVersion;

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<consistency_error>(m, "ConsistencyError", PyExc_ValueError);
    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<extraction_error>(m, "ExtractionError", PyExc_ValueError);

    py::class_<OutcomeSpace>(m, "OutcomeSpace")
        .def(py::init<int>(), py::arg("size"))
        .def(py::init<int, std::vector<std::string>>(), py::arg("size"), py::arg("labels"))
        .def_property_readonly("size", &OutcomeSpace::size)
        .def("label", &OutcomeSpace::label, py::arg("outcome"))
        .def_property_readonly("labels", &OutcomeSpace::labels)
        .def("__repr__", [](const OutcomeSpace& s) {
            return "OutcomeSpace(size=" + std::to_string(s.size()) + ")";
        });

    py::class_<PreferenceProfile>(m, "PreferenceProfile")
        .def(py::init<std::string, std::vector<double>>(), py::arg("agent_id"),
             py::arg("utilities"))
        .def_property_readonly("agent_id", &PreferenceProfile::agent_id)
        .def_property_readonly("utilities", &PreferenceProfile::utilities)
        .def("__repr__", [](const PreferenceProfile& p) {
            return "PreferenceProfile('" + p.agent_id() + "', " + std::to_string(p.size()) +
                   " outcomes)";
        });

    py::class_<ProfileTable>(m, "ProfileTable")
        .def(py::init<OutcomeSpace, std::vector<PreferenceProfile>>(), py::arg("space"),
             py::arg("profiles"))
        .def_property_readonly("space", &ProfileTable::space)
        .def_property_readonly("profiles", &ProfileTable::profiles)
        .def_property_readonly("agent_count", &ProfileTable::agent_count);

    py::class_<Group>(m, "Group")
        .def(py::init<std::vector<int>>(), py::arg("members"))
        .def_property_readonly("members", &Group::members)
        .def("is_subgroup_of", &Group::is_subgroup_of, py::arg("other"))
        .def("__len__", &Group::size)
        .def("__repr__", [](const Group& g) {
            std::ostringstream out;
            out << "Group([";
            for (size_t i = 0; i < g.members().size(); ++i)
                out << (i ? ", " : "") << g.members()[i];
            out << "])";
            return out.str();
        });

    py::enum_<Algorithm>(m, "Algorithm")
        .value("reference", Algorithm::reference)
        .value("fast", Algorithm::fast)
        .value("incremental", Algorithm::incremental);

    py::class_<ParetoResult>(m, "ParetoResult")
        .def_readonly("optimal", &ParetoResult::optimal)
        .def_readonly("group_signature", &ParetoResult::group_signature)
        .def_readonly("algorithm_tag", &ParetoResult::algorithm_tag)
        .def("__contains__", &ParetoResult::contains)
        .def("__repr__", [](const ParetoResult& r) {
            return "ParetoResult(" + std::to_string(r.optimal.size()) + " optimal outcomes)";
        });

    m.def("dominates", &dominates, py::arg("o"), py::arg("o_prime"), py::arg("group"),
          py::arg("table"));
    m.def("is_strict", &is_strict, py::arg("profile"));
    m.def("pareto_set_naive", &pareto_set_naive, py::arg("group"), py::arg("table"));
    m.def("pareto_set_fast", &pareto_set_fast, py::arg("group"), py::arg("table"));
    m.def("join_agent", &join_agent, py::arg("current"), py::arg("new_agent"), py::arg("group"),
          py::arg("table"));
    m.def("leave_agent", &leave_agent, py::arg("current"), py::arg("leaving"), py::arg("group"),
          py::arg("table"));

    py::class_<ScanConfig>(m, "ScanConfig")
        .def(py::init<>())
        .def_readwrite("group_sizes", &ScanConfig::group_sizes)
        .def_readwrite("max_groups_per_size", &ScanConfig::max_groups_per_size)
        .def_readwrite("rng_seed", &ScanConfig::rng_seed)
        .def_readwrite("min_samples_flag", &ScanConfig::min_samples_flag);

    py::class_<SubgroupStats>(m, "SubgroupStats")
        .def_readonly("group_size", &SubgroupStats::group_size)
        .def_readonly("subgroup_size", &SubgroupStats::subgroup_size)
        .def_readonly("mean_ratio", &SubgroupStats::mean_ratio)
        .def_readonly("mean_false_positive_rate", &SubgroupStats::mean_false_positive_rate)
        .def_readonly("sample_count", &SubgroupStats::sample_count)
        .def_readonly("flagged_low_sample", &SubgroupStats::flagged_low_sample);

    py::class_<GroupSizeStats>(m, "GroupSizeStats")
        .def_readonly("group_size", &GroupSizeStats::group_size)
        .def_readonly("empirical_pareto_fraction", &GroupSizeStats::empirical_pareto_fraction)
        .def_readonly("theoretical_pareto_fraction", &GroupSizeStats::theoretical_pareto_fraction)
        .def_readonly("sample_count", &GroupSizeStats::sample_count)
        .def_readonly("flagged_low_sample", &GroupSizeStats::flagged_low_sample);

    py::class_<ScanReport>(m, "ScanReport")
        .def_readonly("domain_size", &ScanReport::domain_size)
        .def_readonly("available_profiles", &ScanReport::available_profiles)
        .def_readonly("cells", &ScanReport::cells)
        .def_readonly("per_group_size", &ScanReport::per_group_size)
        .def("to_csv", [](const ScanReport& report) {
            std::ostringstream out;
            write_scan_csv(out, report);
            return out.str();
        });

    m.def("binomial_capped", &binomial_capped, py::arg("n"), py::arg("k"), py::arg("cap"));
    m.def("sample_groups", &sample_groups, py::arg("available"), py::arg("n"), py::arg("cap"),
          py::arg("seed"));
    m.def("subgroup_ratio", &subgroup_ratio, py::arg("sub"), py::arg("full"), py::arg("table"));
    m.def("false_positive_rate", &false_positive_rate, py::arg("sub"), py::arg("full"),
          py::arg("table"));
    m.def("run_scan", &run_scan, py::arg("config"), py::arg("table"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "expected_pareto_count",
        [](int mm, int nn) { return to_fraction(expected_pareto_count({mm, nn})); }, py::arg("m"),
        py::arg("n"));
    m.def(
        "expected_pareto_count_float",
        [](int mm, int nn) { return rational_to_double(expected_pareto_count({mm, nn})); },
        py::arg("m"), py::arg("n"));

    py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
        .def_readonly("mean", &MonteCarloEstimate::mean)
        .def_readonly("std_error", &MonteCarloEstimate::std_error)
        .def_readonly("samples", &MonteCarloEstimate::samples);
    m.def(
        "expected_pareto_count_mc",
        [](int mm, int nn, std::int64_t samples, std::uint64_t seed) {
            return expected_pareto_count_mc({mm, nn}, samples, seed);
        },
        py::arg("m"), py::arg("n"), py::arg("samples"), py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

    py::class_<BordaTally>(m, "BordaTally")
        .def_readonly("scores", &BordaTally::scores)
        .def_readonly("convention_tag", &BordaTally::convention_tag);
    m.def("borda_count", &borda_count, py::arg("ballots"), py::arg("space"));

    m.def("load_rankings", &load_rankings, py::arg("path"));
    m.def(
        "load_ratings",
        [](const std::string& path, int target_users) {
            return extract_complete_submatrix(load_ratings_csv(path), target_users);
        },
        py::arg("path"), py::arg("target_users"));
    m.def("load_additive_domain", &load_additive_domain, py::arg("path"));

    m.def("read_profile_csv", &read_profile_csv_file, py::arg("path"));
    m.def("write_profile_csv", &write_profile_csv_file, py::arg("path"), py::arg("table"));
    m.def("profile_csv", [](const ProfileTable& table) {
        std::ostringstream out;
        write_profile_csv(out, table);
        return out.str();
    });
}
