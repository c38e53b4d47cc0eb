// mtsad: amplitude/shape anomaly detection for multivariate time series.
//
// Subcommands:
//   detect    score a CSV series and write per-point / per-window scores
//   tune      grid-scan cluster count and window length against known labels
//   eval      compare a score file against 0/1 truth labels
//   baseline  unweighted clustering or nearest-neighbor discord scoring
//   synth     generate test series with optional injected anomalies

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtsad/csv.hpp"
#include "mtsad/detector.hpp"
#include "mtsad/errors.hpp"
#include "mtsad/evaluation.hpp"
#include "mtsad/manifest.hpp"
#include "mtsad/rng.hpp"
#include "mtsad/synthetic.hpp"
#include "mtsad/version.hpp"

namespace {

struct range_arg {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

range_arg parse_range(const std::string& text, const std::string& flag) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size()) {
        throw mtsad::invalid_config_error(flag + " expects LO:HI, got '" + text + "'");
    }
    try {
        range_arg range;
        range.lo = std::stoul(text.substr(0, colon));
        range.hi = std::stoul(text.substr(colon + 1));
        return range;
    } catch (const std::exception&) {
        throw mtsad::invalid_config_error(flag + " expects LO:HI, got '" + text + "'");
    }
}

mtsad::detect_mode parse_mode(const std::string& text) {
    if (text == "amplitude") {
        return mtsad::detect_mode::amplitude;
    }
    if (text == "shape") {
        return mtsad::detect_mode::shape;
    }
    throw mtsad::invalid_config_error("mode must be amplitude or shape, got '" +
                                      text + "'");
}

std::string format_optional(const std::optional<double>& value) {
    return value ? mtsad::format_double17(*value) : "n/a";
}

void print_metrics(const mtsad::metric_report& report) {
    std::cout << "threshold " << mtsad::format_double17(report.threshold) << "\n"
              << "tp " << report.counts.tp << " fp " << report.counts.fp << " tn "
              << report.counts.tn << " fn " << report.counts.fn << "\n"
              << "accuracy " << format_optional(report.accuracy) << "\n"
              << "sensitivity " << format_optional(report.sensitivity) << "\n"
              << "specificity " << format_optional(report.specificity) << "\n"
              << "precision " << format_optional(report.precision) << "\n"
              << "recall " << format_optional(report.recall) << "\n"
              << "f_measure " << format_optional(report.f_measure) << "\n";
}

struct detect_args {
    std::string input;
    std::string mode = "amplitude";
    std::size_t clusters = 2;
    std::size_t window = 5;
    std::size_t stride = 1;
    double fuzzifier = 2.0;
    std::size_t pso_particles = 30;
    std::size_t pso_iters = 50;
    std::uint64_t seed = 0;
    std::string out_prefix = "mtsad";
};

// Interactive defaults keep the weight search small; raise --pso-particles /
// --pso-iters for a thorough offline search.
void add_detect_options(CLI::App* cmd, detect_args& args) {
    cmd->add_option("--input", args.input, "input series CSV")->required();
    cmd->add_option("--mode", args.mode, "amplitude or shape");
    cmd->add_option("--clusters", args.clusters, "number of clusters");
    cmd->add_option("--window", args.window, "window length in samples");
    cmd->add_option("--stride", args.stride, "window stride in samples");
    cmd->add_option("--fuzzifier", args.fuzzifier, "clustering fuzzifier (> 1)");
    cmd->add_option("--pso-particles", args.pso_particles, "swarm size");
    cmd->add_option("--pso-iters", args.pso_iters, "swarm iterations");
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_option("--out-prefix", args.out_prefix, "prefix for output files");
}

mtsad::detector_config config_from_args(const detect_args& args) {
    mtsad::detector_config config;
    config.mode = parse_mode(args.mode);
    config.clusters = args.clusters;
    config.fuzzifier = args.fuzzifier;
    config.window = mtsad::window_spec{args.window, args.stride};
    config.pso.particles = args.pso_particles;
    config.pso.iterations = args.pso_iters;
    config.seed = args.seed;
    return config;
}

mtsad::run_manifest make_manifest(const std::string& command, const std::string& input,
                                  std::uint64_t seed) {
    mtsad::run_manifest manifest;
    manifest.tool = "mtsad";
    manifest.version = mtsad::version_string;
    manifest.command = command;
    manifest.input_path = input;
    manifest.input_digest = mtsad::fnv1a64_file(input);
    manifest.seed = seed;
    return manifest;
}

void append_config(mtsad::run_manifest& manifest, const detect_args& args) {
    manifest.config.emplace_back("mode", args.mode);
    manifest.config.emplace_back("clusters", std::to_string(args.clusters));
    manifest.config.emplace_back("window", std::to_string(args.window));
    manifest.config.emplace_back("stride", std::to_string(args.stride));
    manifest.config.emplace_back("fuzzifier", mtsad::format_double17(args.fuzzifier));
    manifest.config.emplace_back("pso_particles", std::to_string(args.pso_particles));
    manifest.config.emplace_back("pso_iters", std::to_string(args.pso_iters));
}

void write_manifest(mtsad::run_manifest& manifest, const std::string& path,
                    std::chrono::steady_clock::time_point started) {
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw mtsad::io_error("cannot open " + path + " for writing");
    }
    out << manifest.to_json_string();
    if (!out.flush()) {
        throw mtsad::io_error("failed writing " + path);
    }
}

void write_detection_outputs(const mtsad::detection_result& result,
                             const std::string& prefix,
                             mtsad::run_manifest& manifest) {
    const std::string points_path = prefix + ".points.csv";
    const std::string windows_path = prefix + ".windows.csv";
    mtsad::write_point_scores(points_path, result.point_scores);
    mtsad::write_window_scores(windows_path, result.window_starts,
                               result.window_scores);
    manifest.outputs.push_back(points_path);
    manifest.outputs.push_back(windows_path);
    std::cout << "wrote " << points_path << "\n" << "wrote " << windows_path << "\n";
}

void print_detection_summary(const mtsad::detection_result& result) {
    std::size_t top = 0;
    for (std::size_t j = 1; j < result.window_scores.size(); ++j) {
        if (result.window_scores[j] > result.window_scores[top]) {
            top = j;
        }
    }
    std::cout << "windows " << result.window_scores.size() << "\n";
    std::cout << "weights";
    for (double w : result.weights.values()) {
        std::cout << ' ' << mtsad::format_double17(w);
    }
    std::cout << "\n";
    std::cout << "top_window start " << result.window_starts[top] << " score "
              << mtsad::format_double17(result.window_scores[top]) << "\n";
    std::cout << "confidence_proxy "
              << mtsad::format_double17(mtsad::confidence_proxy(result.window_scores))
              << "\n";
}

int run_detect(const detect_args& args) {
    const auto started = std::chrono::steady_clock::now();
    const mtsad::multi_series series = mtsad::parse_csv(args.input);
    const mtsad::detection_result result =
        mtsad::detect(series, config_from_args(args));
    print_detection_summary(result);

    mtsad::run_manifest manifest = make_manifest("detect", args.input, args.seed);
    append_config(manifest, args);
    write_detection_outputs(result, args.out_prefix, manifest);
    const std::string manifest_path = args.out_prefix + ".manifest.json";
    manifest.outputs.push_back(manifest_path);
    write_manifest(manifest, manifest_path, started);
    std::cout << "wrote " << manifest_path << "\n";
    return 0;
}

struct tune_args {
    detect_args base;
    std::string labels;
    std::string clusters_range = "2:6";
    std::string window_range = "5:50";
    std::size_t window_step = 1;
};

int run_tune(const tune_args& args) {
    const auto started = std::chrono::steady_clock::now();
    const mtsad::multi_series series = mtsad::parse_csv(args.base.input);
    const std::vector<int> labels = mtsad::read_labels(args.labels);
    const range_arg clusters = parse_range(args.clusters_range, "--clusters-range");
    const range_arg window = parse_range(args.window_range, "--window-range");

    const mtsad::tune_result result = mtsad::tune_parameters(
        series, config_from_args(args.base), clusters.lo, clusters.hi, window.lo,
        window.hi, labels, args.window_step);

    const std::string grid_path = args.base.out_prefix + ".grid.csv";
    std::ofstream out(grid_path, std::ios::binary);
    if (!out) {
        throw mtsad::io_error("cannot open " + grid_path + " for writing");
    }
    out << "clusters,window,confidence_index\n";
    for (const mtsad::tune_cell& cell : result.grid) {
        out << cell.clusters << ',' << cell.window << ','
            << mtsad::format_double17(cell.confidence) << '\n';
    }
    if (!out.flush()) {
        throw mtsad::io_error("failed writing " + grid_path);
    }
    std::cout << "best clusters " << result.best_clusters << " window "
              << result.best_window << "\n";
    std::cout << "wrote " << grid_path << "\n";

    mtsad::run_manifest manifest = make_manifest("tune", args.base.input,
                                                 args.base.seed);
    append_config(manifest, args.base);
    manifest.config.emplace_back("labels", args.labels);
    manifest.config.emplace_back("clusters_range", args.clusters_range);
    manifest.config.emplace_back("window_range", args.window_range);
    manifest.config.emplace_back("window_step", std::to_string(args.window_step));
    manifest.outputs.push_back(grid_path);
    const std::string manifest_path = args.base.out_prefix + ".manifest.json";
    manifest.outputs.push_back(manifest_path);
    write_manifest(manifest, manifest_path, started);
    std::cout << "wrote " << manifest_path << "\n";
    return 0;
}

struct eval_args {
    std::string scores;
    std::string truth;
    double threshold = 0.0;
    bool use_best = false;
    bool threshold_given = false;
};

int run_eval(const eval_args& args) {
    const std::vector<double> scores = mtsad::read_point_scores(args.scores);
    const std::vector<int> truth = mtsad::read_labels(args.truth);
    if (args.use_best == args.threshold_given) {
        throw mtsad::invalid_config_error(
            "pass exactly one of --threshold or --best-threshold");
    }
    const mtsad::metric_report report =
        args.use_best ? mtsad::best_threshold(scores, truth)
                      : mtsad::metrics(scores, truth, args.threshold);
    print_metrics(report);
    return 0;
}

struct baseline_args {
    detect_args base;
    std::string method = "fcm";
    std::size_t exclusion = 0; // 0 means the window length
};

int run_baseline(const baseline_args& args) {
    const auto started = std::chrono::steady_clock::now();
    const mtsad::multi_series series = mtsad::parse_csv(args.base.input);
    mtsad::run_manifest manifest = make_manifest("baseline", args.base.input,
                                                 args.base.seed);
    manifest.config.emplace_back("method", args.method);

    mtsad::detection_result result;
    if (args.method == "fcm") {
        result = mtsad::detect_standard_fcm(series, config_from_args(args.base));
        append_config(manifest, args.base);
        print_detection_summary(result);
    } else if (args.method == "knn") {
        const mtsad::window_spec spec{args.base.window, args.base.stride};
        const mtsad::subsequence_set windows =
            mtsad::slide_windows(mtsad::zscore_normalize(series), spec);
        const std::size_t exclusion =
            args.exclusion == 0 ? spec.length : args.exclusion;
        result.window_starts = windows.starts();
        result.window_scores = mtsad::knn_discord_scores(windows, exclusion);
        result.point_scores = mtsad::aggregate_point_scores(
            result.window_scores, result.window_starts, spec.length, series.length());
        manifest.config.emplace_back("window", std::to_string(args.base.window));
        manifest.config.emplace_back("stride", std::to_string(args.base.stride));
        manifest.config.emplace_back("exclusion", std::to_string(exclusion));
        std::cout << "windows " << result.window_scores.size() << "\n";
    } else {
        throw mtsad::invalid_config_error("method must be fcm or knn, got '" +
                                          args.method + "'");
    }

    write_detection_outputs(result, args.base.out_prefix, manifest);
    const std::string manifest_path = args.base.out_prefix + ".manifest.json";
    manifest.outputs.push_back(manifest_path);
    write_manifest(manifest, manifest_path, started);
    std::cout << "wrote " << manifest_path << "\n";
    return 0;
}

struct synth_args {
    std::string kind = "ecg";
    std::size_t length = 500;
    std::vector<double> rates = {60.0, 80.0, 90.0};
    double sample_rate = 100.0;
    double noise = 0.02;
    std::string inject = "none";
    std::size_t anomalies = 3;
    std::size_t anomaly_length = 20;
    std::vector<std::size_t> anomaly_starts;
    double factor_min = 0.0;
    double factor_max = 3.0;
    std::string factor_exclude;
    std::uint64_t seed = 0;
    std::string out = "series.csv";
    std::string labels_out;
};

int run_synth(const synth_args& args) {
    mtsad::injection_log log;
    mtsad::multi_series series = [&] {
        if (args.kind == "ecg") {
            return mtsad::gen_pseudo_ecg(args.length, args.rates, args.seed,
                                         args.sample_rate, args.noise);
        }
        if (args.kind == "relational") {
            return mtsad::gen_relational(args.seed, args.noise, &log);
        }
        throw mtsad::invalid_config_error("kind must be ecg or relational, got '" +
                                          args.kind + "'");
    }();

    if (args.inject != "none") {
        if (args.kind == "relational") {
            throw mtsad::invalid_config_error(
                "the relational series carries its own anomaly");
        }
        std::optional<mtsad::factor_range> exclude;
        if (!args.factor_exclude.empty()) {
            const std::size_t colon = args.factor_exclude.find(':');
            if (colon == std::string::npos) {
                throw mtsad::invalid_config_error(
                    "--factor-exclude expects LO:HI, got '" + args.factor_exclude +
                    "'");
            }
            try {
                exclude = mtsad::factor_range{
                    std::stod(args.factor_exclude.substr(0, colon)),
                    std::stod(args.factor_exclude.substr(colon + 1))};
            } catch (const std::exception&) {
                throw mtsad::invalid_config_error(
                    "--factor-exclude expects LO:HI, got '" + args.factor_exclude +
                    "'");
            }
        }
        const std::vector<mtsad::injection_interval> intervals = [&] {
            if (args.anomaly_starts.empty()) {
                return mtsad::place_intervals(series.length(), series.vars(),
                                              args.anomalies, args.anomaly_length,
                                              mtsad::rng::mix(args.seed, 1),
                                              args.anomaly_length);
            }
            std::vector<mtsad::injection_interval> fixed;
            for (std::size_t k = 0; k < args.anomaly_starts.size(); ++k) {
                const std::size_t start = args.anomaly_starts[k];
                fixed.push_back({start, start + args.anomaly_length,
                                 k % series.vars()});
            }
            return fixed;
        }();
        const mtsad::factor_range factors{args.factor_min, args.factor_max};
        if (args.inject == "amplitude") {
            log = mtsad::inject_amplitude(series, intervals, factors,
                                          mtsad::rng::mix(args.seed, 2), exclude);
        } else if (args.inject == "shape") {
            log = mtsad::inject_shape(series, intervals, factors,
                                      mtsad::rng::mix(args.seed, 2), exclude);
        } else {
            throw mtsad::invalid_config_error(
                "--inject must be none, amplitude or shape, got '" + args.inject +
                "'");
        }
    }

    mtsad::write_series_csv(args.out, series);
    std::cout << "wrote " << args.out << "\n";
    for (const mtsad::injection_record& rec : log) {
        std::cout << "anomaly var " << rec.variable << " range [" << rec.start << ","
                  << rec.end << ") factor " << mtsad::format_double17(rec.factor)
                  << "\n";
    }
    if (!args.labels_out.empty()) {
        mtsad::write_labels(args.labels_out,
                            mtsad::labels_from_log(log, series.length()));
        std::cout << "wrote " << args.labels_out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"amplitude/shape anomaly detection for multivariate time series"};
    app.set_version_flag("--version", mtsad::version_string);
    app.require_subcommand(1);

    detect_args detect_opts;
    CLI::App* detect_cmd = app.add_subcommand("detect", "score a series");
    add_detect_options(detect_cmd, detect_opts);

    tune_args tune_opts;
    CLI::App* tune_cmd =
        app.add_subcommand("tune", "grid-scan clusters and window length");
    add_detect_options(tune_cmd, tune_opts.base);
    tune_cmd->add_option("--labels", tune_opts.labels, "0/1 point labels CSV")
        ->required();
    tune_cmd->add_option("--clusters-range", tune_opts.clusters_range, "LO:HI");
    tune_cmd->add_option("--window-range", tune_opts.window_range, "LO:HI");
    tune_cmd->add_option("--window-step", tune_opts.window_step, "window increment");

    eval_args eval_opts;
    CLI::App* eval_cmd = app.add_subcommand("eval", "score predictions against truth");
    eval_cmd->add_option("--scores", eval_opts.scores, "point score CSV")->required();
    eval_cmd->add_option("--truth", eval_opts.truth, "0/1 labels CSV")->required();
    CLI::Option* thr =
        eval_cmd->add_option("--threshold", eval_opts.threshold, "fixed threshold");
    eval_cmd->add_flag("--best-threshold", eval_opts.use_best,
                       "pick the threshold with the best accuracy");

    baseline_args baseline_opts;
    CLI::App* baseline_cmd =
        app.add_subcommand("baseline", "unweighted clustering or discord baseline");
    add_detect_options(baseline_cmd, baseline_opts.base);
    baseline_cmd->add_option("--method", baseline_opts.method, "fcm or knn");
    baseline_cmd->add_option("--exclusion", baseline_opts.exclusion,
                             "discord exclusion radius (0: window length)");

    synth_args synth_opts;
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a test series");
    synth_cmd->add_option("--kind", synth_opts.kind, "ecg or relational");
    synth_cmd->add_option("--length", synth_opts.length, "samples to generate");
    synth_cmd->add_option("--rates", synth_opts.rates, "heart rates, one per variable")
        ->delimiter(',');
    synth_cmd->add_option("--sample-rate", synth_opts.sample_rate, "samples per second");
    synth_cmd->add_option("--noise", synth_opts.noise, "uniform noise amplitude");
    synth_cmd->add_option("--inject", synth_opts.inject, "none, amplitude or shape");
    synth_cmd->add_option("--anomalies", synth_opts.anomalies, "intervals to inject");
    synth_cmd->add_option("--anomaly-starts", synth_opts.anomaly_starts,
                          "explicit interval starts, round-robin variables")
        ->delimiter(',');
    synth_cmd->add_option("--anomaly-length", synth_opts.anomaly_length,
                          "interval length in samples");
    synth_cmd->add_option("--factor-min", synth_opts.factor_min, "factor range low");
    synth_cmd->add_option("--factor-max", synth_opts.factor_max, "factor range high");
    synth_cmd->add_option("--factor-exclude", synth_opts.factor_exclude,
                          "skip factors in LO:HI");
    synth_cmd->add_option("--seed", synth_opts.seed, "random seed");
    synth_cmd->add_option("--out", synth_opts.out, "output series CSV");
    synth_cmd->add_option("--labels-out", synth_opts.labels_out,
                          "write 0/1 point labels here");

    try {
        app.parse(argc, argv);
        eval_opts.threshold_given = thr->count() > 0;
        if (detect_cmd->parsed()) {
            return run_detect(detect_opts);
        }
        if (tune_cmd->parsed()) {
            return run_tune(tune_opts);
        }
        if (eval_cmd->parsed()) {
            return run_eval(eval_opts);
        }
        if (baseline_cmd->parsed()) {
            return run_baseline(baseline_opts);
        }
        if (synth_cmd->parsed()) {
            return run_synth(synth_opts);
        }
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const mtsad::invalid_config_error& e) {
        std::cerr << "mtsad error: config: " << e.what() << "\n";
        return 2;
    } catch (const mtsad::csv_parse_error& e) {
        std::cerr << "mtsad error: csv: " << e.what() << " (row " << e.row()
                  << ", column " << e.column() << ")\n";
        return 1;
    } catch (const mtsad::io_error& e) {
        std::cerr << "mtsad error: io: " << e.what() << "\n";
        return 1;
    } catch (const mtsad::pipeline_error& e) {
        std::cerr << "mtsad error: pipeline: " << e.what() << "\n";
        return 1;
    } catch (const mtsad::error& e) {
        std::cerr << "mtsad error: runtime: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "mtsad error: internal: " << e.what() << "\n";
        return 1;
    }
}
