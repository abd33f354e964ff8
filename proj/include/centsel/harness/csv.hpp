#ifndef CENTSEL_HARNESS_CSV_HPP
#define CENTSEL_HARNESS_CSV_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iterator>
#include <limits>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "centsel/error.hpp"

namespace centsel::harness {

/// Shortest decimal that round-trips the double; "nan"/"inf" spelled out.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

inline std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// RFC-4180 rows, CRLF-free (plain '\n' line ends).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_escape(fields[i]);
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw Error(ErrorKind::Parse, "csv: missing column '" + std::string(name) + "'");
    }

    bool has_column(std::string_view name) const {
        for (const auto& h : header) {
            if (h == name) return true;
        }
        return false;
    }
};

/// Parses RFC-4180 text. Lines starting with '#' before the header are skipped.
inline CsvTable parse_csv(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    bool at_line_start = true;
    bool closed_quote = false;  // a quoted field just ended; only a separator may follow
    std::size_t i = 0;
    auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        records.push_back(std::move(record));
        record.clear();
        field_started = false;
        at_line_start = true;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
                closed_quote = true;
            } else {
                field += c;
            }
            ++i;
            continue;
        }
        if (at_line_start && c == '#' && records.empty()) {
            while (i < text.size() && text[i] != '\n') ++i;
            ++i;
            continue;
        }
        at_line_start = false;
        if (closed_quote && c != ',' && c != '\n' && c != '\r') {
            throw Error(ErrorKind::Parse, "csv: text after closing quote");
        }
        closed_quote = false;
        if (c == '"') {
            if (!field.empty()) throw Error(ErrorKind::Parse, "csv: stray quote inside unquoted field");
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (c == '\n') {
            end_record();
        } else if (c != '\r') {
            field += c;
            field_started = true;
        }
        ++i;
    }
    if (quoted) throw Error(ErrorKind::Parse, "csv: unterminated quoted field");
    if (field_started || !record.empty()) end_record();

    CsvTable table;
    if (records.empty()) throw Error(ErrorKind::Parse, "csv: no header");
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() == 1 && records[r][0].empty()) continue;
        if (records[r].size() != table.header.size()) {
            throw Error(ErrorKind::Parse, "csv: row " + std::to_string(r) + " has " +
                                              std::to_string(records[r].size()) + " fields, header has " +
                                              std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

inline CsvTable load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    return parse_csv(in);
}

inline double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "not a number: '" + s + "'");
    }
}

}  // namespace centsel::harness

#endif  // CENTSEL_HARNESS_CSV_HPP
