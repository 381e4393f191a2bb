#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "seedbs/types.hpp"

namespace seedbs {

// Cumulative sums with cumulative[0] = 0, cumulative[t] = X_1 + ... + X_t.
// The pass uses Neumaier compensation so the brute-force equivalence of the
// CUSUM statistic holds to tight tolerance even for long series.
class PrefixSums {
public:
    explicit PrefixSums(const TimeSeries& series)
        : cumulative_(static_cast<std::size_t>(series.size()) + 1, 0.0) {
        double sum = 0.0;
        double compensation = 0.0;
        for (index_t t = 0; t < series.size(); ++t) {
            const double x = series[t];
            const double next = sum + x;
            if (std::abs(sum) >= std::abs(x))
                compensation += (sum - next) + x;
            else
                compensation += (x - next) + sum;
            sum = next;
            cumulative_[static_cast<std::size_t>(t) + 1] = sum + compensation;
        }
    }

    index_t size() const { return static_cast<index_t>(cumulative_.size()) - 1; }

    // Sum of observations i+1 .. j (half-open (i, j]).
    double range_sum(index_t i, index_t j) const {
        return cumulative_[static_cast<std::size_t>(j)] - cumulative_[static_cast<std::size_t>(i)];
    }

    const std::vector<double>& cumulative() const { return cumulative_; }

private:
    std::vector<double> cumulative_;
};

// Absolute Gaussian change-in-mean CUSUM of the split b within (s, e]:
// | sqrt((e-b)/(n(b-s))) * S(s,b) - sqrt((b-s)/(n(e-b))) * S(b,e) |,  n = e-s,
// evaluated in the factored form sqrt((b-s)(e-b)/n) * |mean_left - mean_right|
// so segments of constant integer level come out exactly zero.
inline double cusum_at(const PrefixSums& ps, index_t s, index_t e, index_t b) {
    if (!(0 <= s && s < b && b < e && e <= ps.size()))
        throw std::invalid_argument("cusum_at: need 0 <= s < b < e <= T");
    const double n = static_cast<double>(e - s);
    const double left = static_cast<double>(b - s);
    const double right = static_cast<double>(e - b);
    const double mean_gap = ps.range_sum(s, b) / left - ps.range_sum(b, e) / right;
    return std::sqrt(left * right / n) * std::abs(mean_gap);
}

struct CusumResult {
    Interval interval;
    index_t best_split = 0;  // in (start, end)
    double value = 0.0;      // max absolute CUSUM over splits
};

// Maximum over all splits; ties resolve to the smallest b.
inline CusumResult max_cusum(const PrefixSums& ps, Interval interval) {
    if (interval.length() < 2 || interval.start < 0 || interval.end > ps.size())
        throw std::invalid_argument("max_cusum: invalid interval");
    CusumResult best{interval, interval.start + 1, cusum_at(ps, interval.start, interval.end, interval.start + 1)};
    for (index_t b = interval.start + 2; b < interval.end; ++b) {
        const double v = cusum_at(ps, interval.start, interval.end, b);
        if (v > best.value) {
            best.value = v;
            best.best_split = b;
        }
    }
    return best;
}

} // namespace seedbs
