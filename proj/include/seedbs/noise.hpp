#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seedbs/types.hpp"

namespace seedbs {

enum class NoiseMethod { jfnl, jfnl_tilde, jfnl_lag, mad, ensemble };

inline const char* to_string(NoiseMethod m) {
    switch (m) {
    case NoiseMethod::jfnl: return "jfnl";
    case NoiseMethod::jfnl_tilde: return "jfnl_tilde";
    case NoiseMethod::jfnl_lag: return "jfnl_lag";
    case NoiseMethod::mad: return "mad";
    case NoiseMethod::ensemble: return "ensemble";
    }
    return "?";
}

struct NoiseEstimate {
    double sigma2 = 0.0;
    double sigma = 0.0;  // sqrt(sigma2)
    NoiseMethod method = NoiseMethod::jfnl;
    std::optional<std::pair<index_t, index_t>> lags;
};

// v (centered): sum (Y_i - mean)^2 / l.  v-tilde (uncentered): sum Y_i^2 / l.
// Divisor is the number of values in both cases.
inline double empirical_variance(const std::vector<double>& y, bool centered) {
    if (y.empty())
        throw std::invalid_argument("empirical_variance: empty input");
    const double l = static_cast<double>(y.size());
    if (!centered) {
        double ss = 0.0;
        for (double v : y) ss += v * v;
        return ss / l;
    }
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= l;
    double ss = 0.0;
    for (double v : y) ss += (v - mean) * (v - mean);
    return ss / l;
}

// Lower median: for even length the smaller of the two middle order
// statistics, keeping every aggregation deterministic.
inline double lower_median(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("lower_median: empty input");
    const std::size_t k = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
    return values[k];
}

namespace detail {

// (X_{i+lag} - X_i) / sqrt(2) for all valid i.
inline std::vector<double> scaled_lag_differences(const TimeSeries& x, index_t lag) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<double> d(static_cast<std::size_t>(x.size() - lag));
    for (index_t i = 0; i + lag < x.size(); ++i)
        d[static_cast<std::size_t>(i)] = (x[i + lag] - x[i]) * inv_sqrt2;
    return d;
}

inline NoiseEstimate from_sigma2(double sigma2, NoiseMethod method,
                                 std::optional<std::pair<index_t, index_t>> lags = std::nullopt) {
    NoiseEstimate est;
    est.sigma2 = sigma2;
    est.sigma = std::sqrt(sigma2);
    est.method = method;
    est.lags = lags;
    return est;
}

} // namespace detail

// Jump filtered noise level: max{0, 2 v(lag-1 diffs / sqrt 2) - v(lag-2 diffs / sqrt 2)}
// with centered v. Lag-1 differences count each jump once, lag-2 differences
// twice (valid when every true segment has at least 2 observations), so the
// combination cancels the jump contribution.
inline NoiseEstimate jfnl(const TimeSeries& series) {
    if (series.size() < 3)
        throw std::invalid_argument("jfnl: need at least 3 observations");
    const double v1 = empirical_variance(detail::scaled_lag_differences(series, 1), true);
    const double v2 = empirical_variance(detail::scaled_lag_differences(series, 2), true);
    return detail::from_sigma2(std::max(0.0, 2.0 * v1 - v2), NoiseMethod::jfnl);
}

// Same construction with the uncentered variance; tends to work better on
// monotone signals such as staircases.
inline NoiseEstimate jfnl_tilde(const TimeSeries& series) {
    if (series.size() < 3)
        throw std::invalid_argument("jfnl_tilde: need at least 3 observations");
    const double v1 = empirical_variance(detail::scaled_lag_differences(series, 1), false);
    const double v2 = empirical_variance(detail::scaled_lag_differences(series, 2), false);
    return detail::from_sigma2(std::max(0.0, 2.0 * v1 - v2), NoiseMethod::jfnl_tilde);
}

// Two-lag generalization: lag-j differences count each jump j times, so with
// v_j the variance of the scaled lag-j differences,
//   sigma2 = max{0, (j2 v_{j1} - j1 v_{j2}) / (j2 - j1)}
// is the affine combination cancelling the jump term. Requires the true
// minimal segment length to be at least j2 (not checkable from data).
// (1, 2, centered) reproduces jfnl.
inline NoiseEstimate jfnl_lag(const TimeSeries& series, index_t j1, index_t j2, bool centered) {
    if (j1 < 1 || j1 >= j2)
        throw std::invalid_argument("jfnl_lag: need 1 <= j1 < j2");
    if (series.size() <= j2)
        throw std::invalid_argument("jfnl_lag: need T > j2");
    const double vj1 = empirical_variance(detail::scaled_lag_differences(series, j1), centered);
    const double vj2 = empirical_variance(detail::scaled_lag_differences(series, j2), centered);
    const double sigma2 =
        (static_cast<double>(j2) * vj1 - static_cast<double>(j1) * vj2) /
        static_cast<double>(j2 - j1);
    return detail::from_sigma2(std::max(0.0, sigma2), NoiseMethod::jfnl_lag,
                               std::make_pair(j1, j2));
}

// Robust baseline: 1.4826 * MAD of the scaled lag-1 differences. 1.4826 is
// the Gaussian consistency constant. Frequent jumps inflate this estimate.
inline NoiseEstimate mad_sigma(const TimeSeries& series) {
    std::vector<double> d = detail::scaled_lag_differences(series, 1);
    const double med = lower_median(d);
    for (double& v : d) v = std::abs(v - med);
    const double sigma = 1.4826 * lower_median(std::move(d));
    NoiseEstimate est;
    est.sigma = sigma;
    est.sigma2 = sigma * sigma;
    est.method = NoiseMethod::mad;
    return est;
}

// Median aggregation over sigma2 values (lower median for even counts).
inline NoiseEstimate ensemble_sigma(const std::vector<NoiseEstimate>& estimates) {
    if (estimates.empty())
        throw std::invalid_argument("ensemble_sigma: empty input");
    std::vector<double> sigma2s;
    sigma2s.reserve(estimates.size());
    for (const NoiseEstimate& e : estimates) sigma2s.push_back(e.sigma2);
    return detail::from_sigma2(lower_median(std::move(sigma2s)), NoiseMethod::ensemble);
}

} // namespace seedbs
