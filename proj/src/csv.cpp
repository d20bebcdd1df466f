#include "mmpr/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "mmpr/errors.hpp"

namespace mmpr {

std::string format_double(double x) {
    char buffer[64];
    const auto res = std::to_chars(buffer, buffer + sizeof(buffer), x);
    return std::string(buffer, res.ptr);
}

double parse_double(const std::string& field) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw IoError("not a number: '" + field + "'");
    }
    return value;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += csv_escape(fields[i]);
    }
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

CsvDocument read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    CsvDocument doc;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            doc.comments.push_back(line);
            continue;
        }
        if (!have_header) {
            doc.header = csv_split(line);
            have_header = true;
        } else {
            doc.rows.push_back(csv_split(line));
        }
    }
    if (!have_header) {
        throw IoError("'" + path + "' has no header row");
    }
    return doc;
}

}  // namespace mmpr
