#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seedbs/rng.hpp"
#include "seedbs/types.hpp"

namespace seedbs {

enum class IntervalKind { seeded, random, augmented };

inline const char* to_string(IntervalKind k) {
    switch (k) {
    case IntervalKind::seeded: return "seeded";
    case IntervalKind::random: return "random";
    case IntervalKind::augmented: return "augmented";
    }
    return "?";
}

struct IntervalSetMeta {
    IntervalKind kind = IntervalKind::seeded;
    double decay = 0.0;
    index_t min_len = 0;
    index_t augment_max_len = 0;  // 0: no augmentation
    index_t num_draws = 0;        // M, random kind only
    std::uint64_t seed = 0;       // random kind only
};

// Ordered, duplicate-free interval collection plus its generation record.
struct IntervalSet {
    std::vector<Interval> intervals;
    IntervalSetMeta meta;

    index_t total_length() const {
        index_t sum = 0;
        for (const Interval& iv : intervals) sum += iv.length();
        return sum;
    }
};

// Deterministic multi-scale intervals. Layer k holds n_k = 2*ceil(decay^(k-1)) - 1
// intervals of length l_k = ceil(T * decay^-(k-1)), starts evenly placed over
// [0, T - l_k] with round-half-up; layer 1 is the full interval (0, T].
// Generation stops at the first layer with l_k < min_len. Duplicates keep the
// first occurrence; output is ordered by (layer, start).
inline IntervalSet seeded_intervals(index_t T, double decay, index_t min_len) {
    if (T < 2)
        throw std::invalid_argument("seeded_intervals: T must be >= 2");
    if (!(decay > 1.0) || decay > 2.0)
        throw std::invalid_argument("seeded_intervals: decay must be in (1, 2]");
    if (min_len < 2)
        throw std::invalid_argument("seeded_intervals: min_len must be >= 2");

    IntervalSet set;
    set.meta.kind = IntervalKind::seeded;
    set.meta.decay = decay;
    set.meta.min_len = min_len;

    std::set<std::pair<index_t, index_t>> seen;
    for (int layer = 1;; ++layer) {
        const double scale = std::pow(decay, -static_cast<double>(layer - 1));
        const auto len = static_cast<index_t>(std::ceil(static_cast<double>(T) * scale));
        if (len < min_len) break;
        const auto count =
            2 * static_cast<index_t>(std::ceil(std::pow(decay, static_cast<double>(layer - 1)))) - 1;
        for (index_t i = 0; i < count; ++i) {
            index_t start = 0;
            if (count > 1) {
                const double pos = static_cast<double>(i) * static_cast<double>(T - len) /
                                   static_cast<double>(count - 1);
                start = static_cast<index_t>(std::floor(pos + 0.5));
            }
            if (seen.emplace(start, start + len).second)
                set.intervals.push_back({start, start + len});
        }
    }
    return set;
}

// Union with every interval of length in [2, max_len); new intervals are
// appended in (length, start) order.
inline IntervalSet augment_small_intervals(IntervalSet set, index_t T, index_t max_len) {
    if (max_len < 2)
        throw std::invalid_argument("augment_small_intervals: max_len must be >= 2");
    std::set<std::pair<index_t, index_t>> seen;
    for (const Interval& iv : set.intervals) seen.emplace(iv.start, iv.end);
    for (index_t len = 2; len < max_len; ++len)
        for (index_t start = 0; start + len <= T; ++start)
            if (seen.emplace(start, start + len).second)
                set.intervals.push_back({start, start + len});
    set.meta.kind = IntervalKind::augmented;
    set.meta.augment_max_len = max_len;
    return set;
}

// M endpoint pairs drawn uniformly from { (s, e) : 0 <= s, e <= T, e - s >= 2 }
// via rejection; stored deduplicated and sorted by (start, end).
inline IntervalSet random_intervals(index_t T, index_t M, std::uint64_t seed) {
    if (T < 2)
        throw std::invalid_argument("random_intervals: T must be >= 2");
    if (M < 1)
        throw std::invalid_argument("random_intervals: M must be >= 1");

    IntervalSet set;
    set.meta.kind = IntervalKind::random;
    set.meta.num_draws = M;
    set.meta.seed = seed;

    NormalSampler rng(seed);
    std::set<std::pair<index_t, index_t>> seen;
    for (index_t m = 0; m < M; ++m) {
        index_t s, e;
        do {
            s = rng.uniform_below(T + 1);
            e = rng.uniform_below(T + 1);
        } while (e - s < 2);
        seen.emplace(s, e);
    }
    for (const auto& [s, e] : seen) set.intervals.push_back({s, e});
    return set;
}

} // namespace seedbs
