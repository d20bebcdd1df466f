#pragma once

#include <string>
#include <vector>

namespace mmpr {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double x);

/// Strict double parse of a whole field.
double parse_double(const std::string& field);

/// RFC-4180-style escaping: quote fields containing commas, quotes or
/// line breaks.
std::string csv_escape(const std::string& field);

std::string csv_join(const std::vector<std::string>& fields);

/// Split one CSV record into fields, honoring quoted fields.
std::vector<std::string> csv_split(const std::string& line);

struct CsvDocument {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments;  // lines starting with '#'
};

/// Read a CSV file with a mandatory header row; '#' lines are
/// collected separately.
CsvDocument read_csv_file(const std::string& path);

}  // namespace mmpr
