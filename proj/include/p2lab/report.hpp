#pragma once
// Output formatting shared by the CLI: CSV tables (header row, LF, UTF-8),
// a single-object JSON form, deterministic number formatting, and exact
// parsing of rational parameters like "16/15".

#include <cstdio>
#include <string>
#include <vector>

#include "ntcore.hpp"

namespace p2lab {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string fmt_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_escape(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += detail::csv_escape(row[i]);
        }
        out += '\n';
    }
    return out;
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Single top-level object: {"params": {...}, "results": [...], "diagnostics": {...}}
inline std::string to_json(const KeyValues& params, const Table& results,
                           const KeyValues& diagnostics) {
    std::string out = "{\"params\":{";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) out += ',';
        out += "\"" + detail::json_escape(params[i].first) + "\":\"" +
               detail::json_escape(params[i].second) + "\"";
    }
    out += "},\"results\":[";
    for (size_t r = 0; r < results.rows.size(); ++r) {
        if (r) out += ',';
        out += '{';
        for (size_t i = 0; i < results.columns.size() && i < results.rows[r].size();
             ++i) {
            if (i) out += ',';
            out += "\"" + detail::json_escape(results.columns[i]) + "\":\"" +
                   detail::json_escape(results.rows[r][i]) + "\"";
        }
        out += '}';
    }
    out += "],\"diagnostics\":{";
    for (size_t i = 0; i < diagnostics.size(); ++i) {
        if (i) out += ',';
        out += "\"" + detail::json_escape(diagnostics[i].first) + "\":\"" +
               detail::json_escape(diagnostics[i].second) + "\"";
    }
    out += "}}";
    return out;
}

// Exact rational parsing: "16/15" stays a num/den pair until the final
// division, so string round-trips are lossless.
inline double parse_rational(const std::string& text) {
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            size_t used = 0;
            double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
        size_t un = 0, ud = 0;
        long long num = std::stoll(ns, &un);
        long long den = std::stoll(ds, &ud);
        if (un != ns.size() || ud != ds.size() || den == 0)
            throw std::invalid_argument(text);
        return (double)num / (double)den;
    } catch (const std::exception&) {
        throw std::domain_error("cannot parse rational \"" + text + "\"");
    }
}

}  // namespace p2lab
