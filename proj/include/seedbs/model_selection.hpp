#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "seedbs/segmentation.hpp"
#include "seedbs/types.hpp"

namespace seedbs {

struct PiecewiseFit {
    ChangePointSet change_points;
    std::vector<double> means;  // one per segment
    double rss = 0.0;
    double mse = 0.0;           // rss / T
};

// Least-squares fit with the given change points as segment boundaries.
inline PiecewiseFit fit_means(const TimeSeries& series, const ChangePointSet& cpts) {
    const index_t T = series.size();
    PiecewiseFit fit;
    fit.change_points = cpts;
    std::vector<index_t> bounds;
    bounds.push_back(0);
    for (index_t p : cpts.positions) {
        if (p <= bounds.back() || p >= T)
            throw std::invalid_argument("fit_means: invalid change point positions");
        bounds.push_back(p);
    }
    bounds.push_back(T);
    for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
        const index_t s = bounds[g];
        const index_t e = bounds[g + 1];
        double mean = 0.0;
        for (index_t t = s; t < e; ++t) mean += series[t];
        mean /= static_cast<double>(e - s);
        fit.means.push_back(mean);
        for (index_t t = s; t < e; ++t) fit.rss += (series[t] - mean) * (series[t] - mean);
    }
    fit.mse = fit.rss / static_cast<double>(T);
    return fit;
}

// Fixed model-selection cutoff C * sigma_hat * sqrt(2 ln T).
inline double universal_threshold(double sigma_hat, index_t T, double C) {
    if (sigma_hat < 0.0)
        throw std::invalid_argument("universal_threshold: sigma_hat must be >= 0");
    if (T < 2)
        throw std::invalid_argument("universal_threshold: T must be >= 2");
    if (!(C > 0.0))
        throw std::invalid_argument("universal_threshold: C must be > 0");
    return C * sigma_hat * std::sqrt(2.0 * std::log(static_cast<double>(T)));
}

namespace detail {

// rss of every path-prefix model, computed incrementally: splitting (s, e]
// at b lowers the rss by S_l^2/n_l + S_r^2/n_r - S^2/n (>= 0; clamped so the
// sequence is non-increasing under floating point too).
inline std::vector<double> prefix_rss(const SolutionPath& path, const TimeSeries& series) {
    const index_t T = series.size();
    std::vector<double> cum(static_cast<std::size_t>(T) + 1, 0.0);
    std::vector<double> cum2(static_cast<std::size_t>(T) + 1, 0.0);
    for (index_t t = 0; t < T; ++t) {
        cum[static_cast<std::size_t>(t) + 1] = cum[static_cast<std::size_t>(t)] + series[t];
        cum2[static_cast<std::size_t>(t) + 1] =
            cum2[static_cast<std::size_t>(t)] + series[t] * series[t];
    }
    auto seg_fit = [&](index_t s, index_t e) {
        const double sum = cum[static_cast<std::size_t>(e)] - cum[static_cast<std::size_t>(s)];
        return sum * sum / static_cast<double>(e - s);
    };

    std::vector<double> rss;
    rss.reserve(path.nodes.size() + 1);
    double current = std::max(0.0, cum2[static_cast<std::size_t>(T)] - seg_fit(0, T));
    rss.push_back(current);
    std::set<index_t> bounds{0, T};
    for (const PathNode& node : path.nodes) {
        const index_t b = node.candidate.best_split;
        const auto hi = bounds.upper_bound(b);
        const index_t e = *hi;
        const index_t s = *std::prev(hi);
        const double gain = std::max(0.0, seg_fit(s, b) + seg_fit(b, e) - seg_fit(s, e));
        current = std::max(0.0, current - gain);
        rss.push_back(current);
        bounds.insert(b);
    }
    return rss;
}

inline PiecewiseFit fit_prefix(const SolutionPath& path, const TimeSeries& series,
                               std::size_t k) {
    ChangePointSet cps;
    for (std::size_t i = 0; i < k; ++i) {
        cps.positions.push_back(path.nodes[i].candidate.best_split);
        cps.scores.push_back(path.nodes[i].candidate.value);
    }
    sort_by_position(cps);
    return fit_means(series, cps);
}

} // namespace detail

// Unknown-variance criterion: over the parent-closed prefixes of the path,
// minimize (T/2) ln(mse_k) + k * penalty_per_cpt (ties: smaller k). The scan
// short-circuits at the first prefix with mse exactly 0 (noiseless exact
// fit). The path must not be able to interpolate the data (a complete path
// down to length-1 segments drives mse to 0 on any input and makes the log
// criterion meaningless); generate it from intervals with a larger min_len
// for this selector.
inline PiecewiseFit bic_unknown_variance(const SolutionPath& path, const TimeSeries& series,
                                         double penalty_per_cpt) {
    if (!(penalty_per_cpt > 0.0))
        throw std::invalid_argument("bic_unknown_variance: penalty must be > 0");
    const std::vector<double> rss = detail::prefix_rss(path, series);
    const double T = static_cast<double>(series.size());
    std::size_t best_k = 0;
    double best_obj = 0.0;
    bool have = false;
    for (std::size_t k = 0; k < rss.size(); ++k) {
        if (rss[k] == 0.0) {
            best_k = k;
            break;
        }
        const double obj = 0.5 * T * std::log(rss[k] / T) +
                           static_cast<double>(k) * penalty_per_cpt;
        if (!have || obj < best_obj) {
            best_obj = obj;
            best_k = k;
            have = true;
        }
    }
    return detail::fit_prefix(path, series, best_k);
}

// Known-variance criterion: minimize rss_k + k * beta with
// beta = beta_factor * sigma2 * ln T (ties: smaller k). Plug in an estimate
// (e.g. the jump filtered noise level) when sigma2 is unknown.
inline PiecewiseFit bic_known_variance(const SolutionPath& path, const TimeSeries& series,
                                       double sigma2, double beta_factor = 1.0) {
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("bic_known_variance: sigma2 must be > 0");
    if (!(beta_factor > 0.0))
        throw std::invalid_argument("bic_known_variance: beta_factor must be > 0");
    const std::vector<double> rss = detail::prefix_rss(path, series);
    const double beta = beta_factor * sigma2 * std::log(static_cast<double>(series.size()));
    std::size_t best_k = 0;
    double best_obj = rss[0];
    for (std::size_t k = 1; k < rss.size(); ++k) {
        const double obj = rss[k] + static_cast<double>(k) * beta;
        if (obj < best_obj) {
            best_obj = obj;
            best_k = k;
        }
    }
    return detail::fit_prefix(path, series, best_k);
}

} // namespace seedbs
