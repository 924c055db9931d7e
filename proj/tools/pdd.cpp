#include "pdd/error.hpp"
#include "pdd/experiments.hpp"
#include "pdd/io.hpp"

#include <CLI11.hpp>

#include <fnmatch.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;

namespace {

constexpr int kInputError = 2;
constexpr int kBudgetExhausted = 3;

struct ModeFlags {
    std::string mode = "discrete";
    double eps = 0.0;
    int max_rounds = -1;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    bool timing = false;
};

void add_mode_flags(CLI::App* cmd, ModeFlags& f) {
    cmd->add_option("--mode", f.mode, "discrete, refined or subsampled")
        ->check(CLI::IsMember({"discrete", "refined", "subsampled"}));
    cmd->add_option("--eps", f.eps, "target interval width (refined)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-rounds", f.max_rounds, "refinement rounds, 0 for no limit")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--delta", f.delta, "subsample sparsity (subsampled)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--out", f.out, "output file instead of stdout");
    cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

pdd::CompareOptions options_from(const ModeFlags& f) {
    pdd::CompareOptions o;
    o.mode = f.mode == "refined"      ? pdd::IntervalMode::refined
             : f.mode == "subsampled" ? pdd::IntervalMode::subsampled
                                      : pdd::IntervalMode::discrete;
    o.eps = f.eps;
    // a width target alone refines until it is met
    o.max_rounds = f.max_rounds >= 0 ? f.max_rounds : (f.eps > 0.0 ? 0 : 4);
    o.delta = f.delta;
    o.seed = f.seed;
    return o;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw pdd::ParseError("cannot write " + path);
    out << text;
}

pdd::NamedGraph named(const fs::path& path) {
    return {path.filename().string(), pdd::load_any_graph(path).graph};
}

int run_compare(const std::string& a, const std::string& b, const ModeFlags& f) {
    const auto report = pdd::compare(named(a), named(b), options_from(f));
    emit(f.format == "csv" ? pdd::to_csv(report) : pdd::to_json(report, f.timing), f.out);
    return report.interval.budget_exhausted ? kBudgetExhausted : 0;
}

int run_matrix(const std::string& dir, const std::string& pattern, const std::string& csv_out, const ModeFlags& f) {
    if (!fs::is_directory(dir)) throw pdd::ParseError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (fnmatch(pattern.c_str(), entry.path().filename().c_str(), 0) == 0) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.size() < 2) throw pdd::InvalidArgument("matrix needs at least two graphs in " + dir);
    std::vector<pdd::NamedGraph> graphs;
    for (const auto& p : files) graphs.push_back(named(p));

    const auto report = pdd::compare_all(graphs, options_from(f));
    emit(f.format == "csv" ? pdd::to_csv(report) : pdd::to_json(report), f.out);
    if (!csv_out.empty()) emit(pdd::to_csv(report), csv_out);
    return report.budget_exhausted ? kBudgetExhausted : 0;
}

int run_rips(const std::string& points, double radius, const std::string& out) {
    const auto cloud = pdd::load_point_cloud(points);
    const auto g = pdd::rips_skeleton(cloud, radius);
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        coords.emplace_back(p.begin(), p.end());
    }
    if (out.empty()) {
        pdd::write_graph(std::cout, g, coords);
    } else {
        pdd::save_graph(out, g, coords);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistence-distortion distance between metric graphs"};
    app.set_version_flag("--version", PDD_VERSION);
    app.require_subcommand(1);

    ModeFlags cmp;
    std::string g1, g2;
    auto* compare = app.add_subcommand("compare", "distance between two graphs");
    compare->add_option("first", g1)->required()->check(CLI::ExistingFile);
    compare->add_option("second", g2)->required()->check(CLI::ExistingFile);
    add_mode_flags(compare, cmp);
    compare->add_flag("--timing", cmp.timing, "add wall-clock seconds to the JSON report");

    ModeFlags mat;
    std::string dir, pattern = "*.edges", csv_out;
    auto* matrix = app.add_subcommand("matrix", "pairwise distances between the graphs in a directory");
    matrix->add_option("dir", dir)->required();
    matrix->add_option("--glob", pattern, "file name pattern");
    matrix->add_option("--csv", csv_out, "also write the matrix as CSV");
    add_mode_flags(matrix, mat);

    std::string points, rips_out;
    double radius = 0.0;
    auto* rips = app.add_subcommand("rips", "Rips 1-skeleton of a point cloud as an edge list");
    rips->add_option("points", points)->required()->check(CLI::ExistingFile);
    rips->add_option("--radius", radius)->required()->check(CLI::PositiveNumber);
    rips->add_option("--out", rips_out, "output edge list instead of stdout");

    pdd::NoiseSweepOptions sweep;
    std::string hidden, sweep_out;
    auto* noise = app.add_subcommand("noise-sweep", "distance of noisy Rips reconstructions to a graph");
    noise->add_option("graph", hidden)->required()->check(CLI::ExistingFile);
    noise->add_option("--eps-list", sweep.eps, "noise levels")->required()->delimiter(',');
    noise->add_option("--samples", sweep.samples, "draws per noise level")->check(CLI::PositiveNumber);
    noise->add_option("--seed", sweep.seed, "random seed");
    noise->add_option("--spacing", sweep.spacing, "sample spacing along edges (default: automatic)");
    noise->add_option("--delta", sweep.delta, "subsample sparsity (default: tuned to 150-300 basepoints)");
    noise->add_option("--out", sweep_out, "output CSV instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*compare) return run_compare(g1, g2, cmp);
        if (*matrix) return run_matrix(dir, pattern, csv_out, mat);
        if (*rips) return run_rips(points, radius, rips_out);
        if (*noise) {
            const auto report = pdd::noise_sweep(pdd::load_graph(hidden), sweep);
            emit(pdd::to_csv(report), sweep_out);
            return 0;
        }
    } catch (const pdd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return 0;
}
