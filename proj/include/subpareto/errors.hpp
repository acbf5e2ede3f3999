#pragma once

#include <stdexcept>
#include <string>

namespace subpareto {

/// Invalid arguments: out-of-range indices, bad group membership, bad query
/// parameters. CLI exit code 2.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally inconsistent inputs, e.g. profiles whose utility vectors do
/// not match the outcome space they are used with. CLI exit code 2.
class consistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. The message carries file and line context.
/// CLI exit code 3.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& file, long line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          file_(file),
          line_(line) {}

    const std::string& file() const { return file_; }
    long line() const { return line_; }

private:
    std::string file_;
    long line_;
};

/// Ratings matrix admits no usable complete submatrix. CLI exit code 2.
class extraction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace subpareto
