// seedbs command line: change point detection, noise estimation, Monte Carlo
// simulation and complexity benchmarks.
//
// Exit codes: 0 success, 2 configuration error, 3 input parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seedbs/seedbs.hpp"

namespace {

seedbs::Selection parse_selection(const std::string& name) {
    if (name == "greedy") return seedbs::Selection::greedy;
    if (name == "not") return seedbs::Selection::not_sel;
    if (name == "aseedbs") return seedbs::Selection::aseedbs_sel;
    if (name == "wbs") return seedbs::Selection::wbs;
    throw seedbs::ConfigError("unknown selection: " + name);
}

seedbs::NoiseMethod parse_noise_method(const std::string& name) {
    if (name == "jfnl") return seedbs::NoiseMethod::jfnl;
    if (name == "jfnl_tilde") return seedbs::NoiseMethod::jfnl_tilde;
    if (name == "jfnl_lag") return seedbs::NoiseMethod::jfnl_lag;
    if (name == "mad") return seedbs::NoiseMethod::mad;
    if (name == "ensemble") return seedbs::NoiseMethod::ensemble;
    throw seedbs::ConfigError("unknown noise method: " + name);
}

seedbs::ModelSel parse_model_sel(const std::string& name) {
    if (name == "threshold") return seedbs::ModelSel::threshold;
    if (name == "bic_unknown") return seedbs::ModelSel::bic_unknown;
    if (name == "bic_known") return seedbs::ModelSel::bic_known;
    throw seedbs::ConfigError("unknown model selection: " + name);
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw seedbs::ConfigError("cannot open output file: " + path);
    out << content;
}

struct DetectionFlags {
    std::string input;
    double decay = std::sqrt(2.0);
    std::int64_t min_len = 2;
    std::int64_t augment_below = 10;
    std::string selection = "greedy";
    std::int64_t wbs_intervals = 0;
    std::uint64_t seed = 0;
    std::string noise_method = "jfnl";
    std::int64_t lag_j1 = 1;
    std::int64_t lag_j2 = 2;
    bool lag_uncentered = false;
    std::string model_sel = "threshold";
    double threshold_scale = 1.0;
    double beta_factor = 1.0;
    unsigned workers = 1;

    void add_common(CLI::App& cmd) {
        cmd.add_option("input", input, "series file (one value per line, '#' comments)")
            ->required();
        cmd.add_option("--decay", decay, "seeded interval decay, in (1, 2]");
        cmd.add_option("--min-len", min_len, "smallest seeded interval length (>= 2)");
        cmd.add_option("--augment-below", augment_below,
                       "add every interval shorter than this (0 disables)");
        cmd.add_option("--selection", selection, "greedy | not | aseedbs | wbs");
        cmd.add_option("--M", wbs_intervals, "number of random intervals (wbs only)");
        cmd.add_option("--seed", seed, "interval seed (wbs only)");
        cmd.add_option("--noise-method", noise_method,
                       "jfnl | jfnl_tilde | jfnl_lag | mad | ensemble");
        cmd.add_option("--lag-j1", lag_j1, "first lag for jfnl_lag");
        cmd.add_option("--lag-j2", lag_j2, "second lag for jfnl_lag");
        cmd.add_flag("--lag-uncentered", lag_uncentered,
                     "use the uncentered variance in jfnl_lag");
        cmd.add_option("--model-sel", model_sel, "threshold | bic_unknown | bic_known");
        cmd.add_option("--C", threshold_scale, "threshold scale C");
        cmd.add_option("--beta-factor", beta_factor, "bic_known penalty factor");
        cmd.add_option("--workers", workers, "parallel evaluation threads");
    }

    seedbs::DetectionConfig to_config() const {
        seedbs::DetectionConfig cfg;
        cfg.decay = decay;
        cfg.min_len = min_len;
        cfg.augment_below = augment_below;
        cfg.selection = parse_selection(selection);
        cfg.wbs_intervals = wbs_intervals;
        cfg.wbs_seed = seed;
        cfg.noise_method = parse_noise_method(noise_method);
        cfg.lag_j1 = lag_j1;
        cfg.lag_j2 = lag_j2;
        cfg.lag_centered = !lag_uncentered;
        cfg.model_sel = parse_model_sel(model_sel);
        cfg.threshold_scale = threshold_scale;
        cfg.bic_beta_factor = beta_factor;
        cfg.workers = workers;
        cfg.validate();
        return cfg;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"seedbs: seeded binary segmentation for change in mean"};
    app.require_subcommand(1);

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "detect change points in a series file");
    DetectionFlags detect_flags;
    detect_flags.add_common(*detect_cmd);

    // noise
    auto* noise_cmd = app.add_subcommand("noise", "print every noise estimator for a file");
    std::string noise_input;
    std::int64_t noise_j1 = 1, noise_j2 = 2;
    noise_cmd->add_option("input", noise_input, "series file")->required();
    noise_cmd->add_option("--lag-j1", noise_j1, "first lag for jfnl_lag");
    noise_cmd->add_option("--lag-j2", noise_j2, "second lag for jfnl_lag");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo detection comparison");
    seedbs::SimulationConfig sim_cfg;
    std::string sim_csv = "-";
    std::string sim_summary;
    sim_cmd->add_option("--scenario", sim_cfg.scenario,
                        "extreme.teeth | stairs10 | signal spec .json");
    sim_cmd->add_option("--sigma", sim_cfg.sigmas, "noise levels")->expected(-1);
    sim_cmd->add_option("--reps", sim_cfg.replications, "replications per level");
    sim_cmd->add_option("--methods", sim_cfg.methods, "method names")->expected(-1);
    sim_cmd->add_option("--base-seed", sim_cfg.base_seed, "base seed");
    sim_cmd->add_option("--workers", sim_cfg.workers, "parallel replication workers");
    sim_cmd->add_option("--csv", sim_csv, "row output path ('-' for stdout)");
    sim_cmd->add_option("--summary", sim_summary, "summary JSON path ('-' for stdout)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "interval workload and timing by length");
    std::vector<std::int64_t> bench_lengths{1024, 2048, 4096, 8192, 16384, 32768, 65536};
    double bench_decay = std::sqrt(2.0);
    std::int64_t bench_min_len = 2;
    std::int64_t bench_repeats = 5;
    std::string bench_csv_path = "-";
    bench_cmd->add_option("--T", bench_lengths, "series lengths")->expected(-1);
    bench_cmd->add_option("--decay", bench_decay, "seeded interval decay");
    bench_cmd->add_option("--min-len", bench_min_len, "smallest interval length");
    bench_cmd->add_option("--repeats", bench_repeats, "timed repeats per length");
    bench_cmd->add_option("--csv", bench_csv_path, "output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (detect_cmd->parsed()) {
        const seedbs::DetectionConfig cfg = detect_flags.to_config();
        const seedbs::TimeSeries series = seedbs::read_series(detect_flags.input);
        if (series.size() < 3)
            throw seedbs::ParseError(detect_flags.input + ": need at least 3 observations");
        const seedbs::DetectionReport report = seedbs::detect(series, cfg);
        std::cout << report.to_json().dump(2) << "\n";
        return 0;
    }

    if (noise_cmd->parsed()) {
        const seedbs::TimeSeries series = seedbs::read_series(noise_input);
        if (series.size() < 3)
            throw seedbs::ParseError(noise_input + ": need at least 3 observations");
        nlohmann::json doc;
        doc["n"] = series.size();
        auto add = [&](const seedbs::NoiseEstimate& est, const std::string& key) {
            nlohmann::json e;
            e["sigma"] = est.sigma;
            e["sigma2"] = est.sigma2;
            if (est.lags) e["lags"] = {est.lags->first, est.lags->second};
            doc["estimates"][key] = std::move(e);
        };
        const auto jf = seedbs::jfnl(series);
        const auto jt = seedbs::jfnl_tilde(series);
        const auto md = seedbs::mad_sigma(series);
        add(jf, "jfnl");
        add(jt, "jfnl_tilde");
        add(md, "mad");
        if (series.size() > noise_j2)
            add(seedbs::jfnl_lag(series, noise_j1, noise_j2, true), "jfnl_lag");
        add(seedbs::ensemble_sigma({jf, jt, md}), "ensemble");
        std::cout << doc.dump(2) << "\n";
        return 0;
    }

    if (sim_cmd->parsed()) {
        const seedbs::SimulationReport report = seedbs::run_simulation(sim_cfg);
        write_text(sim_csv, report.to_csv());
        if (!sim_summary.empty())
            write_text(sim_summary, report.summary_json().dump(2) + "\n");
        return 0;
    }

    if (bench_cmd->parsed()) {
        const auto rows =
            seedbs::run_bench(bench_lengths, bench_decay, bench_min_len, bench_repeats);
        write_text(bench_csv_path, seedbs::bench_csv(rows));
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const seedbs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const seedbs::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
