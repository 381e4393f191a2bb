#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seedbs {

using index_t = std::int64_t;

// Thrown when an input file (series or signal spec) cannot be parsed.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an option combination is invalid.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Observed sequence X_1..X_T. All values finite, T >= 2.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < 2)
            throw std::invalid_argument("TimeSeries: need at least 2 observations");
        for (double v : values_)
            if (!std::isfinite(v))
                throw std::invalid_argument("TimeSeries: non-finite value");
    }

    index_t size() const { return static_cast<index_t>(values_.size()); }
    double operator[](index_t t) const { return values_[static_cast<std::size_t>(t)]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

// Half-open index range (start, end]: observations start+1 .. end (1-based),
// i.e. 0-based values[start .. end-1]. A CUSUM split needs end - start >= 2.
struct Interval {
    index_t start = 0;
    index_t end = 0;

    index_t length() const { return end - start; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.start == b.start && a.end == b.end;
    }
};

} // namespace seedbs
