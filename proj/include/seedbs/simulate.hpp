#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seedbs/io.hpp"
#include "seedbs/model_selection.hpp"
#include "seedbs/noise.hpp"
#include "seedbs/parallel.hpp"
#include "seedbs/segmentation.hpp"
#include "seedbs/signals.hpp"
#include "seedbs/types.hpp"

namespace seedbs {

enum class Selection { greedy, not_sel, aseedbs_sel, wbs };
enum class ModelSel { threshold, bic_unknown, bic_known };

inline const char* to_string(Selection s) {
    switch (s) {
    case Selection::greedy: return "greedy";
    case Selection::not_sel: return "not";
    case Selection::aseedbs_sel: return "aseedbs";
    case Selection::wbs: return "wbs";
    }
    return "?";
}

inline const char* to_string(ModelSel m) {
    switch (m) {
    case ModelSel::threshold: return "threshold";
    case ModelSel::bic_unknown: return "bic_unknown";
    case ModelSel::bic_known: return "bic_known";
    }
    return "?";
}

struct DetectionConfig {
    double decay = std::sqrt(2.0);
    index_t min_len = 2;
    index_t augment_below = 10;  // 0 disables the small-interval augmentation
    Selection selection = Selection::greedy;
    index_t wbs_intervals = 0;   // M, wbs only
    std::uint64_t wbs_seed = 0;  // wbs only
    NoiseMethod noise_method = NoiseMethod::jfnl;
    index_t lag_j1 = 1;          // jfnl_lag only
    index_t lag_j2 = 2;
    bool lag_centered = true;
    ModelSel model_sel = ModelSel::threshold;
    double threshold_scale = 1.0;   // C in C * sigma_hat * sqrt(2 ln T)
    double bic_beta_factor = 1.0;   // bic_known only
    unsigned workers = 1;

    void validate() const {
        if (!(decay > 1.0) || decay > 2.0)
            throw ConfigError("decay must be in (1, 2]");
        if (min_len < 2)
            throw ConfigError("min-len must be >= 2");
        if (augment_below < 0 || augment_below == 1)
            throw ConfigError("augment-below must be 0 (off) or >= 2");
        if (selection == Selection::wbs && wbs_intervals < 1)
            throw ConfigError("selection=wbs requires M >= 1");
        if (selection != Selection::wbs && wbs_intervals != 0)
            throw ConfigError("M is only valid with selection=wbs");
        if (noise_method == NoiseMethod::jfnl_lag && (lag_j1 < 1 || lag_j1 >= lag_j2))
            throw ConfigError("jfnl_lag needs 1 <= j1 < j2");
        if (model_sel != ModelSel::threshold && selection != Selection::greedy)
            throw ConfigError("bic model selection requires selection=greedy");
        if (!(threshold_scale > 0.0))
            throw ConfigError("C must be > 0");
        if (!(bic_beta_factor > 0.0))
            throw ConfigError("beta-factor must be > 0");
        if (workers < 1)
            throw ConfigError("workers must be >= 1");
    }

    std::string describe() const {
        std::ostringstream out;
        out << "selection=" << to_string(selection) << " noise=" << to_string(noise_method);
        if (noise_method == NoiseMethod::jfnl_lag)
            out << "(" << lag_j1 << "," << lag_j2 << (lag_centered ? ",v)" : ",vtilde)");
        out << " model=" << to_string(model_sel);
        out << " decay=" << decay << " min_len=" << min_len
            << " augment_below=" << augment_below;
        if (selection == Selection::wbs)
            out << " M=" << wbs_intervals << " interval_seed=" << wbs_seed;
        if (model_sel == ModelSel::threshold)
            out << " C=" << threshold_scale;
        if (model_sel == ModelSel::bic_known)
            out << " beta_factor=" << bic_beta_factor;
        return out.str();
    }
};

struct DetectionReport {
    index_t n = 0;  // series length
    double sigma_hat = 0.0;
    std::string method;
    std::string threshold_or_criterion;
    ChangePointSet change_points;
    double runtime_ms = 0.0;

    nlohmann::json to_json() const {
        nlohmann::json doc;
        doc["n"] = n;
        doc["sigma_hat"] = sigma_hat;
        doc["method"] = method;
        doc["threshold_or_criterion"] = threshold_or_criterion;
        doc["change_points"] = change_points.positions;
        doc["runtime_ms"] = runtime_ms;
        return doc;
    }
};

namespace detail {

inline NoiseEstimate estimate_noise(const TimeSeries& series, const DetectionConfig& cfg) {
    switch (cfg.noise_method) {
    case NoiseMethod::jfnl: return jfnl(series);
    case NoiseMethod::jfnl_tilde: return jfnl_tilde(series);
    case NoiseMethod::jfnl_lag:
        return jfnl_lag(series, cfg.lag_j1, cfg.lag_j2, cfg.lag_centered);
    case NoiseMethod::mad: return mad_sigma(series);
    case NoiseMethod::ensemble:
        return ensemble_sigma({jfnl(series), jfnl_tilde(series), mad_sigma(series)});
    }
    throw ConfigError("unknown noise method");
}

inline std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace detail

inline DetectionReport detect(const TimeSeries& series, const DetectionConfig& cfg) {
    cfg.validate();
    const index_t T = series.size();
    const auto started = std::chrono::steady_clock::now();

    const NoiseEstimate noise = detail::estimate_noise(series, cfg);
    DetectionReport report;
    report.n = T;
    report.sigma_hat = noise.sigma;
    report.method = cfg.describe();

    // Raise thresholds at least above the rounding residue of the prefix-sum
    // CUSUM evaluation, so sigma_hat = 0 (noise-free input) cannot turn float
    // dust into detections.
    double scale = 1.0;
    for (double v : series.values()) scale = std::max(scale, std::abs(v));
    const double noise_floor = 1e-10 * scale * std::sqrt(static_cast<double>(T));
    const double threshold =
        std::max(universal_threshold(noise.sigma, T, cfg.threshold_scale), noise_floor);
    switch (cfg.selection) {
    case Selection::greedy: {
        IntervalSet set = seeded_intervals(T, cfg.decay, cfg.min_len);
        if (cfg.augment_below >= 2)
            set = augment_small_intervals(std::move(set), T, cfg.augment_below);
        const SolutionPath path = greedy_path(series, set, cfg.workers);
        if (cfg.model_sel == ModelSel::threshold) {
            report.change_points = threshold_prune(path, threshold);
            report.threshold_or_criterion = "threshold=" + detail::format_double(threshold);
        } else if (cfg.model_sel == ModelSel::bic_unknown) {
            const double penalty = std::log(static_cast<double>(T));
            report.change_points =
                bic_unknown_variance(path, series, penalty).change_points;
            report.threshold_or_criterion =
                "bic_unknown(penalty=" + detail::format_double(penalty) + ")";
        } else {
            if (!(noise.sigma2 > 0.0))
                throw ConfigError("bic_known needs a positive noise estimate");
            report.change_points =
                bic_known_variance(path, series, noise.sigma2, cfg.bic_beta_factor)
                    .change_points;
            report.threshold_or_criterion =
                "bic_known(beta=" +
                detail::format_double(cfg.bic_beta_factor * noise.sigma2 *
                                      std::log(static_cast<double>(T))) +
                ")";
        }
        break;
    }
    case Selection::not_sel: {
        IntervalSet set = seeded_intervals(T, cfg.decay, cfg.min_len);
        if (cfg.augment_below >= 2)
            set = augment_small_intervals(std::move(set), T, cfg.augment_below);
        report.change_points = not_select(series, set, threshold, cfg.workers);
        report.threshold_or_criterion = "threshold=" + detail::format_double(threshold);
        break;
    }
    case Selection::aseedbs_sel:
        report.change_points = aseedbs(series, cfg.decay, cfg.min_len, threshold, cfg.workers);
        report.threshold_or_criterion = "threshold=" + detail::format_double(threshold);
        break;
    case Selection::wbs:
        report.change_points =
            wbs_baseline(series, cfg.wbs_intervals, cfg.wbs_seed, threshold, cfg.workers);
        report.threshold_or_criterion = "threshold=" + detail::format_double(threshold);
        break;
    }

    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return report;
}

// ---------------------------------------------------------------------------
// Monte Carlo harness
// ---------------------------------------------------------------------------

// Named presets used by the simulate subcommand.
inline const std::map<std::string, DetectionConfig>& method_registry() {
    static const std::map<std::string, DetectionConfig> registry = [] {
        std::map<std::string, DetectionConfig> m;
        DetectionConfig base;

        m["seedbs_thr_jfnl"] = base;

        DetectionConfig c = base;
        c.noise_method = NoiseMethod::mad;
        m["seedbs_thr_mad"] = c;

        c = base;
        c.selection = Selection::not_sel;
        m["seedbs_not_jfnl"] = c;

        c = base;
        c.selection = Selection::aseedbs_sel;
        m["aseedbs_thr_jfnl"] = c;

        c = base;
        c.selection = Selection::wbs;
        c.wbs_intervals = 5000;
        m["wbs_thr_jfnl"] = c;

        c = base;
        c.selection = Selection::wbs;
        c.wbs_intervals = 5000;
        c.noise_method = NoiseMethod::mad;
        m["wbs_thr_mad"] = c;

        c = base;
        c.model_sel = ModelSel::bic_known;
        m["seedbs_bic_known_jfnl"] = c;

        // The log-mse criterion needs a path that cannot interpolate the
        // data, hence the coarser interval set.
        c = base;
        c.model_sel = ModelSel::bic_unknown;
        c.min_len = 30;
        c.augment_below = 0;
        m["seedbs_bic_unknown"] = c;
        return m;
    }();
    return registry;
}

inline PiecewiseSignal load_scenario(const std::string& name) {
    if (name == "extreme.teeth") return make_teeth(5, 200, 0.0, 1.0);
    if (name == "stairs10") return make_stairs(10, 50, 1.0);
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
        return load_signal_spec(name);
    throw ConfigError("unknown scenario: " + name +
                      " (use extreme.teeth, stairs10 or a .json signal spec)");
}

struct SimulationConfig {
    std::string scenario = "extreme.teeth";
    std::vector<double> sigmas{0.3};
    index_t replications = 100;
    std::vector<std::string> methods{"seedbs_thr_jfnl"};
    std::uint64_t base_seed = 1;
    unsigned workers = 1;

    void validate() const {
        if (replications < 1) throw ConfigError("reps must be >= 1");
        if (sigmas.empty()) throw ConfigError("need at least one sigma");
        if (methods.empty()) throw ConfigError("need at least one method");
        for (const std::string& m : methods)
            if (method_registry().find(m) == method_registry().end())
                throw ConfigError("unknown method: " + m);
        for (double s : sigmas)
            if (s < 0.0) throw ConfigError("sigma must be >= 0");
    }
};

struct SimulationRow {
    index_t replication = 0;
    std::string method;
    double sigma_true = 0.0;
    double sigma_hat = 0.0;
    index_t n_detected = 0;
    double runtime_ms = 0.0;
    std::uint64_t seed = 0;
};

// Lower empirical quantile: sorted[floor(p * (n - 1))].
inline double lower_quantile(std::vector<double> values, double p) {
    if (values.empty())
        throw std::invalid_argument("lower_quantile: empty input");
    std::sort(values.begin(), values.end());
    const auto idx = static_cast<std::size_t>(p * static_cast<double>(values.size() - 1));
    return values[idx];
}

struct SimulationReport {
    SimulationConfig config;
    std::vector<SimulationRow> rows;  // ordered by (sigma, method, replication)

    std::string to_csv() const {
        std::ostringstream out;
        out << "replication,method,sigma_true,sigma_hat,n_detected,runtime_ms,seed\n";
        for (const SimulationRow& r : rows) {
            char ms[32];
            std::snprintf(ms, sizeof(ms), "%.3f", r.runtime_ms);
            out << r.replication << ',' << r.method << ','
                << detail::format_double(r.sigma_true) << ','
                << detail::format_double(r.sigma_hat) << ',' << r.n_detected << ',' << ms
                << ',' << r.seed << '\n';
        }
        return out.str();
    }

    nlohmann::json summary_json() const {
        nlohmann::json doc;
        doc["scenario"] = config.scenario;
        doc["replications"] = config.replications;
        doc["base_seed"] = config.base_seed;
        doc["workers"] = config.workers;
        nlohmann::json groups = nlohmann::json::array();
        for (double sigma : config.sigmas) {
            for (const std::string& method : config.methods) {
                std::vector<double> counts, sigma_hats;
                for (const SimulationRow& r : rows)
                    if (r.method == method && r.sigma_true == sigma) {
                        counts.push_back(static_cast<double>(r.n_detected));
                        sigma_hats.push_back(r.sigma_hat);
                    }
                nlohmann::json g;
                g["method"] = method;
                g["config"] = method_registry().at(method).describe();
                g["sigma_true"] = sigma;
                g["n_detected"] = {{"median", lower_quantile(counts, 0.5)},
                                   {"q25", lower_quantile(counts, 0.25)},
                                   {"q75", lower_quantile(counts, 0.75)}};
                g["sigma_hat"] = {{"median", lower_quantile(sigma_hats, 0.5)},
                                  {"q25", lower_quantile(sigma_hats, 0.25)},
                                  {"q75", lower_quantile(sigma_hats, 0.75)}};
                groups.push_back(std::move(g));
            }
        }
        doc["groups"] = std::move(groups);
        return doc;
    }
};

// Runs replications x sigmas x methods. Per-replication seeds derive from
// (base_seed, replication), and rows live at fixed indexes, so any worker
// count produces the identical row set.
inline SimulationReport run_simulation(const SimulationConfig& cfg) {
    cfg.validate();
    const PiecewiseSignal signal = load_scenario(cfg.scenario);
    SimulationReport report;
    report.config = cfg;

    const std::size_t n_methods = cfg.methods.size();
    const std::size_t n_sigmas = cfg.sigmas.size();
    const auto reps = static_cast<std::size_t>(cfg.replications);
    report.rows.resize(n_sigmas * n_methods * reps);

    parallel_for(n_sigmas * reps, cfg.workers, [&](std::size_t task) {
        const std::size_t si = task / reps;
        const std::size_t rep = task % reps;
        const double sigma = cfg.sigmas[si];
        const std::uint64_t noise_seed = derive_seed(cfg.base_seed, rep, 0);
        const TimeSeries series = sample_noisy(signal, sigma, noise_seed);
        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            DetectionConfig dc = method_registry().at(cfg.methods[mi]);
            if (dc.selection == Selection::wbs)
                dc.wbs_seed = derive_seed(cfg.base_seed, rep, 1);
            const DetectionReport det = detect(series, dc);
            SimulationRow row;
            row.replication = static_cast<index_t>(rep);
            row.method = cfg.methods[mi];
            row.sigma_true = sigma;
            row.sigma_hat = det.sigma_hat;
            row.n_detected = det.change_points.size();
            row.runtime_ms = det.runtime_ms;
            row.seed = noise_seed;
            report.rows[(si * n_methods + mi) * reps + rep] = std::move(row);
        }
    });
    return report;
}

// ---------------------------------------------------------------------------
// Complexity benchmark
// ---------------------------------------------------------------------------

struct BenchRow {
    index_t T = 0;
    index_t interval_count = 0;
    index_t total_length = 0;
    index_t repeat = 0;
    double wall_ms = 0.0;
};

// Seeded-interval workload per length: count, total length, and the wall time
// of a full greedy path on a noisy constant series.
inline std::vector<BenchRow> run_bench(const std::vector<index_t>& lengths, double decay,
                                       index_t min_len, index_t repeats,
                                       std::uint64_t base_seed = 42) {
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const index_t T = lengths[i];
        if (T < 4) throw ConfigError("bench lengths must be >= 4");
        const IntervalSet set = seeded_intervals(T, decay, min_len);
        PiecewiseSignal constant;
        constant.length = T;
        constant.segment_means = {0.0};
        const TimeSeries series = sample_noisy(constant, 1.0, derive_seed(base_seed, i, 2));
        for (index_t rep = 0; rep < repeats; ++rep) {
            const auto started = std::chrono::steady_clock::now();
            const SolutionPath path = greedy_path(series, set);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
            if (path.nodes.empty())
                throw std::logic_error("bench: empty solution path");
            BenchRow row;
            row.T = T;
            row.interval_count = static_cast<index_t>(set.intervals.size());
            row.total_length = set.total_length();
            row.repeat = rep;
            row.wall_ms = ms;
            rows.push_back(row);
        }
    }
    return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "T,interval_count,total_length,repeat,wall_ms\n";
    for (const BenchRow& r : rows) {
        char ms[32];
        std::snprintf(ms, sizeof(ms), "%.3f", r.wall_ms);
        out << r.T << ',' << r.interval_count << ',' << r.total_length << ',' << r.repeat
            << ',' << ms << '\n';
    }
    return out.str();
}

} // namespace seedbs
