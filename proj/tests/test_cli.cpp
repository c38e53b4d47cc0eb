// End-to-end checks that spawn the real command-line binary. The build
// passes its location in via MTSAD_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "mtsad/csv.hpp"
#include "mtsad/errors.hpp"
#include "mtsad/series.hpp"

namespace fs = std::filesystem;

namespace {

struct cli_result {
    int exit_code = -1;
    std::string output;
};

// Runs the tool with the given arguments, merging stderr into the captured
// output so error messages can be asserted on too.
cli_result run_cli(const std::string& args) {
    const std::string command = std::string(MTSAD_CLI_PATH) + " " + args + " 2>&1";
    cli_result result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// Scratch directory shared by the test cases in this binary, removed at exit.
struct scratch_dir {
    fs::path path;
    scratch_dir() : path(fs::temp_directory_path() / "mtsad_cli_scratch") {
        fs::create_directories(path);
    }
    ~scratch_dir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

scratch_dir scratch;

} // namespace

TEST_CASE("version flag prints and exits cleanly") {
    const cli_result r = run_cli("--version");
    CHECK(r.exit_code == 0);
    CHECK(!r.output.empty());
}

TEST_CASE("a missing subcommand is a usage error") {
    const cli_result r = run_cli("");
    CHECK(r.exit_code == 2);
}

TEST_CASE("synth writes a parsable series with matching labels") {
    const std::string series_path = scratch.file("series.csv");
    const std::string labels_path = scratch.file("labels.csv");
    const cli_result r = run_cli(
        "synth --kind ecg --length 120 --rates 60 --noise 0.02 --inject amplitude"
        " --anomalies 2 --anomaly-length 6 --factor-min 0 --factor-max 3"
        " --factor-exclude 0.8:1.2 --seed 9 --out " + series_path +
        " --labels-out " + labels_path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("wrote " + series_path) != std::string::npos);
    CHECK(r.output.find("anomaly var 0") != std::string::npos);

    const mtsad::multi_series series = mtsad::parse_csv(series_path);
    CHECK(series.length() == 120);
    CHECK(series.vars() == 1);
    const std::vector<int> labels = mtsad::read_labels(labels_path);
    CHECK(labels.size() == 120);
    int marked = 0;
    for (int l : labels) {
        marked += l;
    }
    CHECK(marked == 12); // two injected ranges of 6 samples

    // same seed, same bytes
    const std::string again_path = scratch.file("series_again.csv");
    run_cli("synth --kind ecg --length 120 --rates 60 --noise 0.02"
            " --inject amplitude --anomalies 2 --anomaly-length 6"
            " --factor-min 0 --factor-max 3 --factor-exclude 0.8:1.2 --seed 9"
            " --out " + again_path);
    CHECK(mtsad::fnv1a64_file(again_path) == mtsad::fnv1a64_file(series_path));
}

TEST_CASE("synth can pin anomaly start positions") {
    const std::string series_path = scratch.file("pinned.csv");
    const std::string labels_path = scratch.file("pinned_labels.csv");
    const cli_result r = run_cli(
        "synth --kind ecg --length 120 --rates 60 --inject amplitude"
        " --anomaly-starts 20,70 --anomaly-length 5 --factor-min 2 --factor-max 3"
        " --seed 4 --out " + series_path + " --labels-out " + labels_path);
    CHECK(r.exit_code == 0);
    const std::vector<int> labels = mtsad::read_labels(labels_path);
    REQUIRE(labels.size() == 120);
    for (std::size_t t = 0; t < labels.size(); ++t) {
        const bool inside = (t >= 20 && t < 25) || (t >= 70 && t < 75);
        CHECK(labels[t] == (inside ? 1 : 0));
    }
}

TEST_CASE("detect writes scores and a manifest that describes the run") {
    const std::string series_path = scratch.file("detect_in.csv");
    run_cli("synth --kind ecg --length 120 --rates 60 --inject amplitude"
            " --anomalies 1 --anomaly-length 6 --factor-min 2.5 --factor-max 3"
            " --seed 12 --out " + series_path);
    const std::string prefix = scratch.file("run1");
    const cli_result r = run_cli("detect --input " + series_path +
                                 " --clusters 2 --window 5 --seed 7"
                                 " --pso-particles 4 --pso-iters 3"
                                 " --out-prefix " + prefix);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("windows 116") != std::string::npos);
    CHECK(r.output.find("top_window") != std::string::npos);

    const std::vector<double> points =
        mtsad::read_point_scores(prefix + ".points.csv");
    CHECK(points.size() == 120);
    CHECK(fs::exists(prefix + ".windows.csv"));

    std::ifstream in(prefix + ".manifest.json");
    REQUIRE(in.good());
    const nlohmann::json doc = nlohmann::json::parse(in);
    CHECK(doc["tool"] == "mtsad");
    CHECK(doc["command"] == "detect");
    CHECK(doc["seed"] == 7);
    CHECK(doc["config"]["clusters"] == "2");
    CHECK(doc["input"]["fnv1a64"] == mtsad::fnv1a64_file(series_path));
    CHECK(doc["outputs"].size() == 3);
    CHECK(doc["duration_seconds"].get<double>() >= 0.0);
}

TEST_CASE("eval reports metrics from score and label files") {
    const std::string scores_path = scratch.file("eval_scores.csv");
    const std::string labels_path = scratch.file("eval_labels.csv");
    {
        std::ofstream s(scores_path);
        s << "t,point_score\n0,0.1\n1,0.9\n2,0.2\n3,0.8\n";
        std::ofstream l(labels_path);
        l << "t,label\n0,0\n1,1\n2,0\n3,1\n";
    }
    const cli_result r = run_cli("eval --scores " + scores_path + " --truth " +
                                 labels_path + " --best-threshold");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("tp 2 fp 0 tn 2 fn 0") != std::string::npos);
    CHECK(r.output.find("accuracy 1") != std::string::npos);

    const cli_result fixed = run_cli("eval --scores " + scores_path + " --truth " +
                                     labels_path + " --threshold 0.5");
    CHECK(fixed.exit_code == 0);
    CHECK(fixed.output.find("threshold 0.5") != std::string::npos);

    // exactly one of the two threshold flags must be given
    const cli_result both = run_cli("eval --scores " + scores_path + " --truth " +
                                    labels_path + " --threshold 0.5"
                                    " --best-threshold");
    CHECK(both.exit_code == 2);
    const cli_result neither =
        run_cli("eval --scores " + scores_path + " --truth " + labels_path);
    CHECK(neither.exit_code == 2);
}

TEST_CASE("baseline supports unweighted clustering and discords") {
    const std::string series_path = scratch.file("baseline_in.csv");
    run_cli("synth --kind ecg --length 100 --rates 60 --seed 3 --out " + series_path);

    const std::string fcm_prefix = scratch.file("base_fcm");
    const cli_result fcm = run_cli("baseline --method fcm --input " + series_path +
                                   " --window 5 --out-prefix " + fcm_prefix);
    CHECK(fcm.exit_code == 0);
    CHECK(fs::exists(fcm_prefix + ".points.csv"));

    const std::string knn_prefix = scratch.file("base_knn");
    const cli_result knn = run_cli("baseline --method knn --input " + series_path +
                                   " --window 5 --out-prefix " + knn_prefix);
    CHECK(knn.exit_code == 0);
    const std::vector<double> points =
        mtsad::read_point_scores(knn_prefix + ".points.csv");
    CHECK(points.size() == 100);

    const cli_result bad = run_cli("baseline --method nope --input " + series_path);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("tune prints the winning grid cell") {
    const std::string series_path = scratch.file("tune_in.csv");
    const std::string labels_path = scratch.file("tune_labels.csv");
    run_cli("synth --kind ecg --length 100 --rates 60 --inject amplitude"
            " --anomaly-starts 40 --anomaly-length 6 --factor-min 2.5"
            " --factor-max 3 --seed 2 --out " + series_path +
            " --labels-out " + labels_path);
    const std::string prefix = scratch.file("tune_run");
    const cli_result r = run_cli("tune --input " + series_path + " --labels " +
                                 labels_path + " --clusters-range 2:2"
                                 " --window-range 5:6 --pso-particles 4"
                                 " --pso-iters 3 --out-prefix " + prefix);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("best clusters 2 window ") != std::string::npos);
    REQUIRE(fs::exists(prefix + ".grid.csv"));
    std::ifstream grid(prefix + ".grid.csv");
    std::string header;
    std::getline(grid, header);
    CHECK(header == "clusters,window,confidence_index");
}

TEST_CASE("relational series generation carries its own anomaly") {
    const std::string series_path = scratch.file("rel.csv");
    const std::string labels_path = scratch.file("rel_labels.csv");
    const cli_result r = run_cli("synth --kind relational --seed 6 --out " +
                                 series_path + " --labels-out " + labels_path);
    CHECK(r.exit_code == 0);
    const mtsad::multi_series series = mtsad::parse_csv(series_path);
    CHECK(series.length() == 80);
    CHECK(series.vars() == 2);
    int marked = 0;
    for (int l : mtsad::read_labels(labels_path)) {
        marked += l;
    }
    CHECK(marked == 5);

    // injecting on top of it is refused
    const cli_result bad = run_cli("synth --kind relational --inject amplitude"
                                   " --out " + scratch.file("rel_bad.csv"));
    CHECK(bad.exit_code == 2);
}

TEST_CASE("missing input files and bad flags map to distinct exit codes") {
    const cli_result io = run_cli("detect --input /nonexistent/in.csv");
    CHECK(io.exit_code == 1);
    CHECK(io.output.find("cannot open") != std::string::npos);

    const cli_result usage = run_cli("detect --no-such-flag");
    CHECK(usage.exit_code == 2);

    const std::string series_path = scratch.file("errors_in.csv");
    run_cli("synth --kind ecg --length 60 --rates 60 --seed 1 --out " + series_path);
    const cli_result pipeline = run_cli("detect --input " + series_path +
                                        " --window 200 --out-prefix " +
                                        scratch.file("errors_run"));
    CHECK(pipeline.exit_code == 1);
    CHECK(pipeline.output.find("windows") != std::string::npos);
}
