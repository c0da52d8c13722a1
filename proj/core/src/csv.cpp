#include "qgsynth/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

#include "qgsynth/errors.hpp"

namespace qgsynth {

namespace {

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool is_missing_field(const std::string& field) {
    return field.empty() || lower(field) == "nan";
}

double parse_value(const std::string& field, const std::filesystem::path& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw ParseError(path.string() + ":" + std::to_string(line) + ": bad value '" + field + "'");
    }
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

TimeSeries read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    TimeSeries out;
    bool with_timestamps = false;
    bool header_seen = false;
    std::string line;
    std::size_t line_no = 0;
    bool any_missing = false;

    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;

        if (!header_seen) {
            header_seen = true;
            const std::string l = lower(line);
            if (l == "timestamp,value") {
                with_timestamps = true;
                continue;
            }
            if (l == "value") continue;
            // headerless data: infer the column layout from the first row
            with_timestamps = line.find(',') != std::string::npos;
        }

        const auto comma = line.find(',');
        std::string ts_field, value_field;
        if (with_timestamps) {
            if (comma == std::string::npos)
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": expected timestamp,value");
            ts_field = trim(line.substr(0, comma));
            value_field = trim(line.substr(comma + 1));
            out.timestamps.push_back(
                static_cast<std::int64_t>(parse_value(ts_field, path, line_no)));
        } else {
            value_field = trim(line);
        }

        if (is_missing_field(value_field)) {
            out.values.push_back(0.0);
            out.missing.push_back(true);
            any_missing = true;
        } else {
            out.values.push_back(parse_value(value_field, path, line_no));
            out.missing.push_back(false);
        }
    }
    if (out.values.empty()) throw EmptyInput("no observations in " + path.string());
    if (!any_missing) out.missing.clear();
    out.check_invariants();
    return out;
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    if (series.has_timestamps()) {
        out << "timestamp,value\n";
        for (std::size_t i = 0; i < series.size(); ++i) {
            out << series.timestamps[i] << ',';
            if (!series.is_missing(i)) out << format_value(series.values[i]);
            out << '\n';
        }
    } else {
        out << "value\n";
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (series.is_missing(i))
                out << "NaN\n";
            else
                out << format_value(series.values[i]) << '\n';
        }
    }
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace qgsynth
