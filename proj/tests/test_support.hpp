// Shared helpers and independent reference implementations for the test
// suites. The reference code deliberately avoids the library's prefix-sum /
// queue machinery: statistics are recomputed from raw means so the two
// routes only share the mathematical definition.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "seedbs/segmentation.hpp"
#include "seedbs/types.hpp"

namespace testref {

using seedbs::index_t;

inline double mean_of(const std::vector<double>& x, index_t from, index_t to) {
    double m = 0.0;
    for (index_t t = from; t < to; ++t) m += x[static_cast<std::size_t>(t)];
    return m / static_cast<double>(to - from);
}

// |left mean - right mean| * sqrt((b-s)(e-b)/(e-s)), evaluated directly.
inline double naive_cusum(const std::vector<double>& x, index_t s, index_t e, index_t b) {
    const double left = mean_of(x, s, b);
    const double right = mean_of(x, b, e);
    const double w = static_cast<double>(b - s) * static_cast<double>(e - b) /
                     static_cast<double>(e - s);
    return std::abs(left - right) * std::sqrt(w);
}

struct NaiveBest {
    index_t split = 0;
    double value = -1.0;
};

inline NaiveBest naive_max_cusum(const std::vector<double>& x, index_t s, index_t e) {
    NaiveBest best;
    for (index_t b = s + 1; b < e; ++b) {
        const double v = naive_cusum(x, s, e, b);
        if (v > best.value) best = {b, v};
    }
    return best;
}

struct NaiveNode {
    index_t seg_start = 0, seg_end = 0;
    index_t iv_start = 0, iv_end = 0;
    index_t split = 0;
    double value = 0.0;
    int parent = -1;
};

// Reference greedy recursion: keep a flat list of open segments, rescan all
// intervals for each of them every round, and place the globally best
// candidate under the (value, narrower, start, split) order.
inline std::vector<NaiveNode> naive_greedy_path(const std::vector<double>& x,
                                                const std::vector<seedbs::Interval>& intervals) {
    struct Open {
        index_t s, e;
        int parent;
    };
    std::vector<Open> open{{0, static_cast<index_t>(x.size()), -1}};
    std::vector<NaiveNode> path;

    auto better = [](const NaiveNode& a, const NaiveNode& b) {
        if (a.value != b.value) return a.value > b.value;
        const index_t la = a.iv_end - a.iv_start, lb = b.iv_end - b.iv_start;
        if (la != lb) return la < lb;
        if (a.iv_start != b.iv_start) return a.iv_start < b.iv_start;
        return a.split < b.split;
    };

    for (;;) {
        bool any = false;
        NaiveNode best;
        std::size_t best_seg = 0;
        for (std::size_t g = 0; g < open.size(); ++g) {
            for (const seedbs::Interval& iv : intervals) {
                if (iv.start < open[g].s || iv.end > open[g].e || iv.length() < 2) continue;
                const NaiveBest nb = naive_max_cusum(x, iv.start, iv.end);
                NaiveNode node{open[g].s, open[g].e, iv.start, iv.end, nb.split, nb.value,
                               open[g].parent};
                if (!any || better(node, best)) {
                    best = node;
                    best_seg = g;
                    any = true;
                }
            }
        }
        if (!any) break;
        const int id = static_cast<int>(path.size());
        path.push_back(best);
        const Open seg = open[best_seg];
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(best_seg));
        open.push_back({seg.s, best.split, id});
        open.push_back({best.split, seg.e, id});
    }
    return path;
}

// Every valid interval of a length-T domain.
inline std::vector<seedbs::Interval> exhaustive_intervals(index_t T) {
    std::vector<seedbs::Interval> out;
    for (index_t s = 0; s + 2 <= T; ++s)
        for (index_t e = s + 2; e <= T; ++e) out.push_back({s, e});
    return out;
}

// Test data generator, independent of the library's sampling stack.
inline std::vector<double> random_series(std::mt19937& gen, std::size_t n, double spread = 1.0) {
    std::uniform_real_distribution<double> dist(-spread, spread);
    std::vector<double> x(n);
    for (double& v : x) v = dist(gen);
    return x;
}

} // namespace testref
