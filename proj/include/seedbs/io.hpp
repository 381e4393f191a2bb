#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seedbs/signals.hpp"
#include "seedbs/types.hpp"

namespace seedbs {

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline bool parse_double(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

} // namespace detail

// One float per line; '#' starts a comment; blank lines are skipped. A single
// non-numeric first data line is treated as a CSV header.
inline TimeSeries read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open series file: " + path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string token = detail::strip(line);
        if (token.empty()) continue;
        double v = 0.0;
        if (!detail::parse_double(token, v)) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": not a number: '" + token + "'");
        }
        header_allowed = false;
        if (!std::isfinite(v))
            throw ParseError(path + ":" + std::to_string(lineno) + ": non-finite value");
        values.push_back(v);
    }
    if (values.size() < 2)
        throw ParseError(path + ": need at least 2 observations");
    return TimeSeries(std::move(values));
}

// JSON object {"T": int, "change_points": [int...], "means": [float...],
// "name": string}; "name" is optional and ignored beyond validation.
inline PiecewiseSignal load_signal_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open signal spec file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": invalid JSON: " + e.what());
    }
    PiecewiseSignal sig;
    try {
        sig.length = doc.at("T").get<index_t>();
        sig.change_points = doc.at("change_points").get<std::vector<index_t>>();
        sig.segment_means = doc.at("means").get<std::vector<double>>();
        if (doc.contains("name") && !doc["name"].is_string())
            throw ParseError(path + ": 'name' must be a string");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": bad signal spec: " + e.what());
    }
    try {
        sig.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
    return sig;
}

inline void write_series(const std::string& path, const TimeSeries& series) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot open output file: " + path);
    out.precision(17);
    for (double v : series.values()) out << v << '\n';
}

} // namespace seedbs
