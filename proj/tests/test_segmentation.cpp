#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "seedbs/segmentation.hpp"
#include "seedbs/signals.hpp"
#include "test_support.hpp"

using namespace seedbs;

namespace {

std::vector<index_t> positive_splits(const SolutionPath& path) {
    std::vector<index_t> out;
    for (const PathNode& n : path.nodes)
        if (n.candidate.value > 0.0) out.push_back(n.candidate.best_split);
    std::sort(out.begin(), out.end());
    return out;
}

IntervalSet from_intervals(std::vector<Interval> ivs) {
    IntervalSet set;
    set.intervals = std::move(ivs);
    return set;
}

} // namespace

TEST_CASE("greedy path recovers noiseless teeth splits") {
    const TimeSeries x = sample_noisy(make_teeth(5, 4, 0.0, 1.0), 0.0, 1);
    const SolutionPath path = greedy_path(x, seeded_intervals(20, std::sqrt(2.0), 2));
    CHECK(positive_splits(path) == std::vector<index_t>{5, 10, 15});
    const ChangePointSet cps = threshold_prune(path, 0.0);
    CHECK(cps.positions == std::vector<index_t>{5, 10, 15});
    for (double s : cps.scores) CHECK(s > 0.0);
}

TEST_CASE("greedy path edge cases") {
    const TimeSeries flat(std::vector<double>(16, 2.0));
    const SolutionPath path = greedy_path(flat, seeded_intervals(16, std::sqrt(2.0), 2));
    for (const PathNode& n : path.nodes) CHECK(n.candidate.value == 0.0);

    const TimeSeries two(std::vector<double>{0.0, 1.0});
    const SolutionPath tiny = greedy_path(two, from_intervals({{0, 2}}));
    REQUIRE(tiny.nodes.size() == 1);
    CHECK(tiny.nodes[0].candidate.best_split == 1);
    CHECK(tiny.nodes[0].parent == -1);

    const SolutionPath empty = greedy_path(two, from_intervals({}));
    CHECK(empty.nodes.empty());
}

TEST_CASE("path prefixes are parent closed and splits distinct") {
    std::mt19937 gen(11);
    const std::vector<double> x = testref::random_series(gen, 64, 1.0);
    const SolutionPath path =
        greedy_path(TimeSeries(x), seeded_intervals(64, std::sqrt(2.0), 2));
    std::set<index_t> seen;
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        const PathNode& n = path.nodes[i];
        CHECK(n.parent < static_cast<int>(i));
        CHECK(n.order == static_cast<int>(i));
        CHECK(seen.insert(n.candidate.best_split).second);
        if (n.parent >= 0) {
            const Interval outer = path.nodes[static_cast<std::size_t>(n.parent)].segment;
            CHECK(outer.start <= n.segment.start);
            CHECK(n.segment.end <= outer.end);
            CHECK(outer.length() > n.segment.length());
        }
    }
}

TEST_CASE("threshold pruning basics") {
    const TimeSeries x = sample_noisy(make_teeth(5, 4, 0.0, 1.0), 0.0, 1);
    const SolutionPath path =
        greedy_path(x, augment_small_intervals(seeded_intervals(20, std::sqrt(2.0), 2), 20, 10));
    CHECK(threshold_prune(path, 1e12).positions.empty());
    CHECK(threshold_prune(path, 0.0).positions == std::vector<index_t>{5, 10, 15});
    CHECK_THROWS_AS(threshold_prune(path, -1.0), std::invalid_argument);
}

TEST_CASE("threshold pruning is monotone in the threshold") {
    std::mt19937 gen(23);
    const std::vector<double> x = testref::random_series(gen, 120, 1.5);
    const SolutionPath path =
        greedy_path(TimeSeries(x), seeded_intervals(120, std::sqrt(2.0), 2));
    const std::vector<double> lams{0.0, 0.4, 0.8, 1.2, 2.0, 3.5};
    for (std::size_t i = 0; i + 1 < lams.size(); ++i) {
        const ChangePointSet lo = threshold_prune(path, lams[i]);
        const ChangePointSet hi = threshold_prune(path, lams[i + 1]);
        const std::set<index_t> lo_set(lo.positions.begin(), lo.positions.end());
        for (index_t p : hi.positions) CHECK(lo_set.count(p) == 1);
    }
}

TEST_CASE("narrowest over threshold selection") {
    std::vector<double> one(14, 0.0);
    for (std::size_t t = 9; t < one.size(); ++t) one[t] = 1.0;
    const IntervalSet set =
        augment_small_intervals(seeded_intervals(14, std::sqrt(2.0), 2), 14, 10);
    const ChangePointSet hit = not_select(TimeSeries(one), set, 0.3);
    CHECK(hit.positions == std::vector<index_t>{9});

    const ChangePointSet none = not_select(TimeSeries(one), set, 1e12);
    CHECK(none.positions.empty());

    const TimeSeries teeth = sample_noisy(make_teeth(5, 4, 0.0, 1.0), 0.0, 1);
    const IntervalSet tset =
        augment_small_intervals(seeded_intervals(20, std::sqrt(2.0), 2), 20, 10);
    CHECK(not_select(teeth, tset, 0.1).positions == std::vector<index_t>{5, 10, 15});

    CHECK_THROWS_AS(not_select(teeth, tset, 0.0), std::invalid_argument);
}

TEST_CASE("adaptive segmentation") {
    const TimeSeries flat(std::vector<double>(32, 1.5));
    CHECK(aseedbs(flat, std::sqrt(2.0), 2, 0.1).positions.empty());

    std::vector<double> one(20, 2.0);
    for (std::size_t t = 13; t < one.size(); ++t) one[t] = 4.0;
    const ChangePointSet single = aseedbs(TimeSeries(one), std::sqrt(2.0), 2, 0.3);
    CHECK(single.positions == std::vector<index_t>{13});

    const TimeSeries teeth = sample_noisy(make_teeth(5, 20, 0.0, 1.0), 0.0, 1);
    const ChangePointSet all = aseedbs(teeth, std::sqrt(2.0), 2, 0.1);
    CHECK(all.positions.size() == 19);
    for (std::size_t i = 0; i < all.positions.size(); ++i)
        CHECK(all.positions[i] == 5 * static_cast<index_t>(i + 1));
}

TEST_CASE("wbs baseline is reproducible for a fixed seed") {
    const TimeSeries x = sample_noisy(make_teeth(5, 20, 0.0, 1.0), 0.45, 77);
    const ChangePointSet a = wbs_baseline(x, 500, 9, 1.0);
    const ChangePointSet b = wbs_baseline(x, 500, 9, 1.0);
    CHECK(a.positions == b.positions);
    CHECK(a.scores == b.scores);
}

TEST_CASE("wbs with every interval equals the complete greedy path") {
    std::mt19937 gen(31);
    const std::vector<double> raw = testref::random_series(gen, 12, 1.0);
    const TimeSeries x(raw);

    const IntervalSet exhaustive = from_intervals(testref::exhaustive_intervals(12));
    // enough draws to hit all 66 intervals of a length-12 domain
    const IntervalSet drawn = random_intervals(12, 20000, 5);
    REQUIRE(drawn.intervals.size() == exhaustive.intervals.size());

    const double lam = 0.25;
    const ChangePointSet via_wbs = wbs_baseline(x, 20000, 5, lam);
    const ChangePointSet via_path = threshold_prune(greedy_path(x, exhaustive), lam);
    CHECK(via_wbs.positions == via_path.positions);
}

TEST_CASE("greedy path equals the naive reference recursion") {
    std::mt19937 gen(20240518);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t T = 4 + gen() % 27;
        const std::vector<double> x = testref::random_series(gen, T, 1.0);
        const IntervalSet set = from_intervals(testref::exhaustive_intervals(static_cast<index_t>(T)));
        const SolutionPath got = greedy_path(TimeSeries(x), set);
        const std::vector<testref::NaiveNode> want = testref::naive_greedy_path(x, set.intervals);
        REQUIRE(got.nodes.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(got.nodes[i].candidate.best_split == want[i].split);
            CHECK(got.nodes[i].parent == want[i].parent);
            CHECK(got.nodes[i].segment.start == want[i].seg_start);
            CHECK(got.nodes[i].segment.end == want[i].seg_end);
            CHECK(got.nodes[i].candidate.interval.start == want[i].iv_start);
            CHECK(got.nodes[i].candidate.interval.end == want[i].iv_end);
            CHECK(std::abs(got.nodes[i].candidate.value - want[i].value) <= 1e-12);
        }
    }
}

TEST_CASE("worker count never changes results") {
    const TimeSeries x = sample_noisy(make_teeth(5, 40, 0.0, 1.0), 0.4, 4242);
    const IntervalSet set =
        augment_small_intervals(seeded_intervals(x.size(), std::sqrt(2.0), 2), x.size(), 10);

    const SolutionPath p1 = greedy_path(x, set, 1);
    const SolutionPath p4 = greedy_path(x, set, 4);
    REQUIRE(p1.nodes.size() == p4.nodes.size());
    for (std::size_t i = 0; i < p1.nodes.size(); ++i) {
        CHECK(p1.nodes[i].candidate.best_split == p4.nodes[i].candidate.best_split);
        CHECK(p1.nodes[i].candidate.value == p4.nodes[i].candidate.value);
        CHECK(p1.nodes[i].parent == p4.nodes[i].parent);
    }

    CHECK(not_select(x, set, 1.0, 1).positions == not_select(x, set, 1.0, 4).positions);
    CHECK(aseedbs(x, std::sqrt(2.0), 2, 1.0, 1).positions ==
          aseedbs(x, std::sqrt(2.0), 2, 1.0, 4).positions);
}

TEST_CASE("exact recovery on a noiseless corpus") {
    const std::vector<PiecewiseSignal> corpus{
        make_teeth(2, 2, 0.0, 1.0),   make_teeth(3, 4, -1.0, 1.0),
        make_teeth(2, 10, 0.0, 3.0),  make_stairs(10, 3, 1.0),
        make_stairs(2, 2, 5.0),       make_stairs(3, 5, -2.0),
    };
    for (const PiecewiseSignal& sig : corpus) {
        const TimeSeries x = sample_noisy(sig, 0.0, 1);
        const IntervalSet set = augment_small_intervals(
            seeded_intervals(sig.length, std::sqrt(2.0), 2), sig.length, 10);
        const double cap = sig.min_jump() / std::sqrt(2.0);
        for (double f : {0.25, 0.5, 0.9}) {
            const double lam = f * cap;
            CHECK(threshold_prune(greedy_path(x, set), lam).positions == sig.change_points);
            CHECK(not_select(x, set, lam).positions == sig.change_points);
            CHECK(aseedbs(x, std::sqrt(2.0), 2, lam).positions == sig.change_points);
        }
    }
}
