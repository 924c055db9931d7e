#pragma once

#include "pdd/distortion.hpp"
#include "pdd/io.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pdd {

struct CompareOptions {
    IntervalMode mode = IntervalMode::discrete;
    double eps = 0.0;    // refined: target width, 0 for rounds only
    int max_rounds = 4;  // refined: 0 for no limit
    double delta = 0.0;  // subsampled
    std::uint64_t seed = 0;
};

struct NamedGraph {
    std::string id;
    MetricGraph graph;
};

DistanceInterval run_mode(const MetricGraph& g1, const MetricGraph& g2, const CompareOptions& options);

struct CompareReport {
    std::string first;
    std::string second;
    CompareOptions options;
    DistanceInterval interval;
    std::string witness_first;
    std::string witness_second;
    double seconds = 0.0;
};

CompareReport compare(const NamedGraph& g1, const NamedGraph& g2, const CompareOptions& options);

/// Deterministic unless `with_timing` adds the wall-clock field.
std::string to_json(const CompareReport& report, bool with_timing = false);
std::string to_csv(const CompareReport& report);

struct MatrixReport {
    std::vector<std::string> ids;
    CompareOptions options;
    std::vector<double> upper;  // row-major, size ids.size()^2
    std::vector<double> lower;
    bool budget_exhausted = false;

    double at(std::size_t i, std::size_t j) const { return upper[i * ids.size() + j]; }
    double slack(std::size_t i, std::size_t j) const {
        return upper[i * ids.size() + j] - lower[i * ids.size() + j];
    }
};

/// Every unordered pair once, diagonal included; pairs run in parallel.
MatrixReport compare_all(const std::vector<NamedGraph>& graphs, const CompareOptions& options);

std::string to_json(const MatrixReport& report);
std::string to_csv(const MatrixReport& report);

struct NoiseSweepOptions {
    std::vector<double> eps;
    int samples = 5;
    std::uint64_t seed = 0;
    double spacing = 0.0;  // 0 picks one from the graph and the noise levels
    double delta = -1.0;   // negative tunes delta to the basepoint range below
    std::size_t min_basepoints = 150;
    std::size_t max_basepoints = 300;
    int max_retries = 5;
    double radius_growth = 1.1;
};

struct NoiseSweepRow {
    double eps = 0.0;
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
    int missing = 0;
    std::vector<double> values;  // per successful draw, in draw order
};

struct NoiseSweepReport {
    NoiseSweepOptions options;  // with spacing and delta resolved
    std::vector<NoiseSweepRow> rows;
};

/// Points every `spacing` along the straight segments between node
/// coordinates, each coordinate shifted uniformly in [-eps, eps].
PointCloud sample_noisy(const EmbeddedGraph& hidden, double spacing, double eps, std::mt19937_64& rng);

/// Smallest delta found by doubling, then bisection, for which the sparse
/// subsample size lies in [lo, hi]; 0 when the graph has at most hi nodes.
double tune_delta(const MetricGraph& g, std::size_t lo, std::size_t hi, std::uint64_t seed);

/// For each noise level, `samples` draws of a noisy sample, its Rips skeleton
/// at radius 3 eps / 2, and the subsampled distance to the hidden graph.
/// Draws whose skeleton stays disconnected after the retries count as missing.
NoiseSweepReport noise_sweep(const EmbeddedGraph& hidden, const NoiseSweepOptions& options);

std::string to_csv(const NoiseSweepReport& report);

} // namespace pdd
