#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "seedbs/rng.hpp"
#include "seedbs/types.hpp"

namespace seedbs {

// Piecewise-constant mean signal. A change point at position k (1-based,
// 0 < k < T) means the mean jumps between observations k and k+1.
struct PiecewiseSignal {
    index_t length = 0;                      // T
    std::vector<index_t> change_points;      // strictly increasing, in [1, T-1]
    std::vector<double> segment_means;       // change_points.size() + 1 entries

    void validate() const {
        if (length < 2)
            throw std::invalid_argument("PiecewiseSignal: length must be >= 2");
        index_t prev = 0;
        for (index_t cp : change_points) {
            if (cp <= prev || cp >= length)
                throw std::invalid_argument(
                    "PiecewiseSignal: change points must be strictly increasing in (0, T)");
            prev = cp;
        }
        if (segment_means.size() != change_points.size() + 1)
            throw std::invalid_argument(
                "PiecewiseSignal: need exactly one mean per segment");
        for (double m : segment_means)
            if (!std::isfinite(m))
                throw std::invalid_argument("PiecewiseSignal: non-finite segment mean");
        for (std::size_t i = 0; i + 1 < segment_means.size(); ++i)
            if (segment_means[i] == segment_means[i + 1])
                throw std::invalid_argument(
                    "PiecewiseSignal: adjacent segments must have different means");
    }

    index_t num_change_points() const { return static_cast<index_t>(change_points.size()); }

    // Mean of observation t (0-based).
    double mean_at(index_t t) const {
        auto it = std::upper_bound(change_points.begin(), change_points.end(), t);
        return segment_means[static_cast<std::size_t>(it - change_points.begin())];
    }

    std::vector<double> mean_vector() const {
        std::vector<double> mu(static_cast<std::size_t>(length));
        std::size_t seg = 0;
        for (index_t t = 0; t < length; ++t) {
            if (seg < change_points.size() && t >= change_points[seg]) ++seg;
            mu[static_cast<std::size_t>(t)] = segment_means[seg];
        }
        return mu;
    }

    // Smallest jump magnitude across change points.
    double min_jump() const {
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < segment_means.size(); ++i) {
            double d = std::abs(segment_means[i + 1] - segment_means[i]);
            if (i == 0 || d < m) m = d;
        }
        return m;
    }
};

// Alternating low/high/low/... means, num_segments segments of segment_len
// observations each.
inline PiecewiseSignal make_teeth(index_t segment_len, index_t num_segments,
                                  double low, double high) {
    if (segment_len < 2)
        throw std::invalid_argument("make_teeth: segment_len must be >= 2");
    if (num_segments < 2)
        throw std::invalid_argument("make_teeth: num_segments must be >= 2");
    if (low == high)
        throw std::invalid_argument("make_teeth: low and high must differ");
    PiecewiseSignal sig;
    sig.length = segment_len * num_segments;
    for (index_t i = 1; i < num_segments; ++i)
        sig.change_points.push_back(i * segment_len);
    for (index_t i = 0; i < num_segments; ++i)
        sig.segment_means.push_back(i % 2 == 0 ? low : high);
    sig.validate();
    return sig;
}

// Monotone staircase: means 0, h, 2h, ... with num_steps steps of step_len
// observations each.
inline PiecewiseSignal make_stairs(index_t step_len, index_t num_steps,
                                   double step_height) {
    if (step_len < 2)
        throw std::invalid_argument("make_stairs: step_len must be >= 2");
    if (num_steps < 2)
        throw std::invalid_argument("make_stairs: num_steps must be >= 2");
    if (step_height == 0.0)
        throw std::invalid_argument("make_stairs: step_height must be nonzero");
    PiecewiseSignal sig;
    sig.length = step_len * num_steps;
    for (index_t i = 1; i < num_steps; ++i)
        sig.change_points.push_back(i * step_len);
    for (index_t i = 0; i < num_steps; ++i)
        sig.segment_means.push_back(static_cast<double>(i) * step_height);
    sig.validate();
    return sig;
}

// Signal plus i.i.d. N(0, sigma^2) noise from a NormalSampler stream.
// Pure in (signal, sigma, seed); sigma = 0 reproduces the means exactly.
inline TimeSeries sample_noisy(const PiecewiseSignal& signal, double sigma,
                               std::uint64_t seed) {
    if (sigma < 0.0)
        throw std::invalid_argument("sample_noisy: sigma must be >= 0");
    signal.validate();
    NormalSampler rng(seed);
    std::vector<double> x = signal.mean_vector();
    for (double& v : x) v += sigma * rng.normal();
    return TimeSeries(std::move(x));
}

} // namespace seedbs
