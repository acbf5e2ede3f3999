#pragma once

#include "subpareto/model.hpp"
#include "subpareto/scan.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace subpareto {

/// Shortest decimal representation that parses back to the same double.
std::string double_repr(double value);

/// Splits one CSV record; fields may be double-quoted, quotes escape by
/// doubling. Throws parse_error on unterminated quotes.
std::vector<std::string> split_csv_record(const std::string& line, const std::string& file,
                                          long line_no);

/// Quotes a field if it contains separators, quotes or newlines.
std::string csv_field(const std::string& value);

/// Canonical profile CSV: header "outcome,label,agent_0,...,agent_{n-1}",
/// one row per outcome, utilities as shortest round-trip decimals.
void write_profile_csv(std::ostream& out, const ProfileTable& table);
void write_profile_csv_file(const std::string& path, const ProfileTable& table);
ProfileTable read_profile_csv(std::istream& in, const std::string& name);
ProfileTable read_profile_csv_file(const std::string& path);

/// Scan report CSV: the (group_size, subgroup_size) table followed by the
/// per-group-size fraction table, each with its own header.
void write_scan_csv(std::ostream& out, const ScanReport& report);

} // namespace subpareto
