#include "subpareto/csv_io.hpp"

#include "subpareto/errors.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace subpareto {

std::string double_repr(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw input_error("failed to format double");
    return std::string(buf, ptr);
}

std::vector<std::string> split_csv_record(const std::string& line, const std::string& file,
                                          long line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
            } else {
                current += c;
                ++i;
            }
        } else if (c == '"' && current.empty()) {
            quoted = true;
            ++i;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
            ++i;
        } else {
            current += c;
            ++i;
        }
    }
    if (quoted) throw parse_error(file, line_no, "unterminated quoted field");
    fields.push_back(std::move(current));
    return fields;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void write_profile_csv(std::ostream& out, const ProfileTable& table) {
    out << "outcome,label";
    for (int a = 0; a < table.agent_count(); ++a) out << ",agent_" << a;
    out << '\n';
    for (int o = 0; o < table.space().size(); ++o) {
        out << o << ',' << csv_field(table.space().label(o));
        for (const auto& p : table.profiles()) out << ',' << double_repr(p.utility(o));
        out << '\n';
    }
}

void write_profile_csv_file(const std::string& path, const ProfileTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot open '" + path + "' for writing");
    write_profile_csv(out, table);
    if (!out) throw input_error("failed writing '" + path + "'");
}

namespace {

double parse_double_field(const std::string& field, const std::string& file, long line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw parse_error(file, line_no, "bad utility value '" + field + "'");
    return value;
}

long parse_int_field(const std::string& field, const std::string& file, long line_no) {
    long value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw parse_error(file, line_no, "bad integer '" + field + "'");
    return value;
}

} // namespace

ProfileTable read_profile_csv(std::istream& in, const std::string& name) {
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw parse_error(name, 1, "empty profile CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    auto header = split_csv_record(line, name, line_no);
    if (header.size() < 2 || header[0] != "outcome" || header[1] != "label")
        throw parse_error(name, line_no, "expected header starting 'outcome,label'");
    const size_t agents = header.size() - 2;

    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns(agents);
    long expected_index = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_record(line, name, line_no);
        if (fields.size() != header.size())
            throw parse_error(name, line_no,
                              "expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        if (parse_int_field(fields[0], name, line_no) != expected_index)
            throw parse_error(name, line_no, "outcome indices must be consecutive from 0");
        ++expected_index;
        labels.push_back(fields[1]);
        for (size_t a = 0; a < agents; ++a)
            columns[a].push_back(parse_double_field(fields[a + 2], name, line_no));
    }
    if (labels.empty()) throw parse_error(name, line_no, "profile CSV has no outcome rows");

    try {
        OutcomeSpace space(static_cast<int>(labels.size()), labels);
        std::vector<PreferenceProfile> profiles;
        profiles.reserve(agents);
        for (size_t a = 0; a < agents; ++a)
            profiles.emplace_back(header[a + 2], std::move(columns[a]));
        return ProfileTable(std::move(space), std::move(profiles));
    } catch (const input_error& e) {
        throw parse_error(name, line_no, e.what());
    } catch (const consistency_error& e) {
        throw parse_error(name, line_no, e.what());
    }
}

ProfileTable read_profile_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    return read_profile_csv(in, path);
}

void write_scan_csv(std::ostream& out, const ScanReport& report) {
    out << "group_size,subgroup_size,mean_ratio,mean_false_positive_rate,sample_count,"
           "low_sample_flag\n";
    for (const auto& c : report.cells) {
        out << c.group_size << ',' << c.subgroup_size << ',' << double_repr(c.mean_ratio) << ','
            << double_repr(c.mean_false_positive_rate) << ',' << c.sample_count << ','
            << (c.flagged_low_sample ? 1 : 0) << '\n';
    }
    out << "group_size,empirical_pareto_fraction,theoretical_pareto_fraction\n";
    for (const auto& f : report.per_group_size) {
        out << f.group_size << ',' << double_repr(f.empirical_pareto_fraction) << ','
            << double_repr(f.theoretical_pareto_fraction) << '\n';
    }
}

} // namespace subpareto
