#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "seedbs/cusum.hpp"
#include "seedbs/intervals.hpp"
#include "seedbs/parallel.hpp"
#include "seedbs/types.hpp"

namespace seedbs {

// Total order on candidates: larger value, then narrower interval, then
// smaller start, then smaller split. Every selection and every cross-segment
// reduction uses this order, so parallel evaluation cannot change results.
inline bool candidate_precedes(const CusumResult& a, const CusumResult& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.interval.length() != b.interval.length())
        return a.interval.length() < b.interval.length();
    if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
    return a.best_split < b.best_split;
}

struct PathNode {
    CusumResult candidate;
    Interval segment;   // recursion segment the candidate was selected in
    int parent = -1;    // index of the parent node, -1 for the root segment
    int order = 0;      // detection rank
};

// Greedy recursion tree in detection order: node k was the best remaining
// candidate when nodes 0..k-1 had been placed, so every prefix of `nodes` is
// closed under the parent relation.
struct SolutionPath {
    std::vector<PathNode> nodes;
    index_t T = 0;
    IntervalSetMeta meta;
};

// Sorted distinct change point positions with the CUSUM value at detection.
struct ChangePointSet {
    std::vector<index_t> positions;
    std::vector<double> scores;

    index_t size() const { return static_cast<index_t>(positions.size()); }
};

namespace detail {

inline std::vector<CusumResult> evaluate_all(const PrefixSums& ps,
                                             const std::vector<Interval>& intervals,
                                             unsigned workers) {
    std::vector<CusumResult> results(intervals.size());
    parallel_for(intervals.size(), workers,
                 [&](std::size_t i) { results[i] = max_cusum(ps, intervals[i]); });
    return results;
}

inline void sort_by_position(ChangePointSet& cps) {
    std::vector<std::size_t> order(cps.positions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return cps.positions[a] < cps.positions[b]; });
    ChangePointSet sorted;
    sorted.positions.reserve(order.size());
    sorted.scores.reserve(order.size());
    for (std::size_t i : order) {
        sorted.positions.push_back(cps.positions[i]);
        sorted.scores.push_back(cps.scores[i]);
    }
    cps = std::move(sorted);
}

} // namespace detail

// Complete greedy solution path: repeatedly take the globally best candidate
// among intervals fully inside a current segment, split there, and continue
// until no interval fits. Candidate statistics are evaluated once up front
// (in parallel when workers > 1); the selection itself is a deterministic
// reduction under candidate_precedes.
inline SolutionPath greedy_path(const TimeSeries& series, const IntervalSet& intervals,
                                unsigned workers = 1) {
    const index_t T = series.size();
    SolutionPath path;
    path.T = T;
    path.meta = intervals.meta;
    if (intervals.intervals.empty()) return path;

    const PrefixSums ps(series);
    const std::vector<CusumResult> results =
        detail::evaluate_all(ps, intervals.intervals, workers);

    struct Segment {
        Interval range;
        int parent;
        std::size_t best;           // index into results
        std::vector<std::size_t> candidates;
    };
    auto segment_after = [&](const Segment& a, const Segment& b) {
        return candidate_precedes(results[b.best], results[a.best]);
    };
    std::priority_queue<Segment, std::vector<Segment>, decltype(segment_after)> queue(segment_after);

    auto enqueue = [&](Interval range, std::vector<std::size_t> candidates, int parent) {
        Segment seg{range, parent, 0, {}};
        bool any = false;
        for (std::size_t i : candidates) {
            const Interval& iv = intervals.intervals[i];
            if (iv.start >= range.start && iv.end <= range.end) {
                seg.candidates.push_back(i);
                if (!any || candidate_precedes(results[i], results[seg.best])) {
                    seg.best = i;
                    any = true;
                }
            }
        }
        if (any) queue.push(std::move(seg));
    };

    std::vector<std::size_t> all(intervals.intervals.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    enqueue({0, T}, std::move(all), -1);

    while (!queue.empty()) {
        Segment seg = queue.top();
        queue.pop();
        const int id = static_cast<int>(path.nodes.size());
        path.nodes.push_back({results[seg.best], seg.range, seg.parent, id});
        const index_t b = results[seg.best].best_split;

        std::vector<std::size_t> left, right;
        for (std::size_t i : seg.candidates) {
            const Interval& iv = intervals.intervals[i];
            if (iv.end <= b)
                left.push_back(i);
            else if (iv.start >= b)
                right.push_back(i);
        }
        enqueue({seg.range.start, b}, std::move(left), id);
        enqueue({b, seg.range.end}, std::move(right), id);
    }
    return path;
}

// Keep a node iff its value strictly exceeds the threshold and its parent is
// kept; return the kept split positions.
inline ChangePointSet threshold_prune(const SolutionPath& path, double threshold) {
    if (threshold < 0.0)
        throw std::invalid_argument("threshold_prune: threshold must be >= 0");
    std::vector<char> kept(path.nodes.size(), 0);
    ChangePointSet cps;
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        const PathNode& node = path.nodes[i];
        const bool parent_kept = node.parent < 0 || kept[static_cast<std::size_t>(node.parent)];
        if (parent_kept && node.candidate.value > threshold) {
            kept[i] = 1;
            cps.positions.push_back(node.candidate.best_split);
            cps.scores.push_back(node.candidate.value);
        }
    }
    detail::sort_by_position(cps);
    return cps;
}

// Narrowest-over-threshold selection: within each segment, among contained
// intervals whose max CUSUM exceeds the threshold, split at the narrowest
// one (ties: smaller start) and recurse into both sides.
inline ChangePointSet not_select(const TimeSeries& series, const IntervalSet& intervals,
                                 double threshold, unsigned workers = 1) {
    if (!(threshold > 0.0))
        throw std::invalid_argument("not_select: threshold must be > 0");
    ChangePointSet cps;
    if (intervals.intervals.empty()) return cps;

    const PrefixSums ps(series);
    const std::vector<CusumResult> results =
        detail::evaluate_all(ps, intervals.intervals, workers);

    struct Task {
        Interval range;
        std::vector<std::size_t> candidates;
    };
    std::vector<std::size_t> all(intervals.intervals.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<Task> stack;
    stack.push_back({{0, series.size()}, std::move(all)});

    while (!stack.empty()) {
        Task task = std::move(stack.back());
        stack.pop_back();
        bool found = false;
        std::size_t pick = 0;
        std::vector<std::size_t> inside;
        for (std::size_t i : task.candidates) {
            const Interval& iv = intervals.intervals[i];
            if (iv.start < task.range.start || iv.end > task.range.end) continue;
            inside.push_back(i);
            if (results[i].value <= threshold) continue;
            if (!found) {
                pick = i;
                found = true;
                continue;
            }
            const Interval& best = intervals.intervals[pick];
            if (iv.length() < best.length() ||
                (iv.length() == best.length() && iv.start < best.start))
                pick = i;
        }
        if (!found) continue;
        const index_t b = results[pick].best_split;
        cps.positions.push_back(b);
        cps.scores.push_back(results[pick].value);

        std::vector<std::size_t> left, right;
        for (std::size_t i : inside) {
            const Interval& iv = intervals.intervals[i];
            if (iv.end <= b)
                left.push_back(i);
            else if (iv.start >= b)
                right.push_back(i);
        }
        stack.push_back({{task.range.start, b}, std::move(left)});
        stack.push_back({{b, task.range.end}, std::move(right)});
    }
    detail::sort_by_position(cps);
    return cps;
}

// Adaptive SeedBS: regenerate seeded intervals inside every current segment
// (layer lengths relative to the segment), take the single best candidate
// across segments, and keep it while its value exceeds the threshold.
// Candidates are recomputed from scratch each round.
inline ChangePointSet aseedbs(const TimeSeries& series, double decay, index_t min_len,
                              double threshold, unsigned workers = 1) {
    if (!(threshold > 0.0))
        throw std::invalid_argument("aseedbs: threshold must be > 0");
    const index_t T = series.size();
    const PrefixSums ps(series);

    std::vector<index_t> boundaries{0, T};
    ChangePointSet cps;
    for (;;) {
        std::vector<Interval> candidates;
        for (std::size_t g = 0; g + 1 < boundaries.size(); ++g) {
            const index_t s = boundaries[g];
            const index_t e = boundaries[g + 1];
            if (e - s < 2) continue;
            const IntervalSet local = seeded_intervals(e - s, decay, min_len);
            for (const Interval& iv : local.intervals)
                candidates.push_back({s + iv.start, s + iv.end});
        }
        if (candidates.empty()) break;

        std::vector<CusumResult> results(candidates.size());
        parallel_for(candidates.size(), workers,
                     [&](std::size_t i) { results[i] = max_cusum(ps, candidates[i]); });
        std::size_t best = 0;
        for (std::size_t i = 1; i < results.size(); ++i)
            if (candidate_precedes(results[i], results[best])) best = i;
        if (!(results[best].value > threshold)) break;

        const index_t b = results[best].best_split;
        cps.positions.push_back(b);
        cps.scores.push_back(results[best].value);
        boundaries.insert(std::upper_bound(boundaries.begin(), boundaries.end(), b), b);
    }
    detail::sort_by_position(cps);
    return cps;
}

// WBS reference: greedy selection over M random intervals, pruned at the
// given threshold.
inline ChangePointSet wbs_baseline(const TimeSeries& series, index_t M, std::uint64_t seed,
                                   double threshold, unsigned workers = 1) {
    if (!(threshold > 0.0))
        throw std::invalid_argument("wbs_baseline: threshold must be > 0");
    const IntervalSet intervals = random_intervals(series.size(), M, seed);
    return threshold_prune(greedy_path(series, intervals, workers), threshold);
}

} // namespace seedbs
