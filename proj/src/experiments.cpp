#include "pdd/experiments.hpp"

#include "pdd/error.hpp"
#include "pdd/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>

namespace pdd {

namespace {

using nlohmann::json;

json params_json(const CompareOptions& o) {
    json p;
    p["mode"] = to_string(o.mode);
    p["seed"] = o.seed;
    if (o.mode == IntervalMode::refined) {
        p["eps"] = o.eps;
        p["max_rounds"] = o.max_rounds;
    }
    if (o.mode == IntervalMode::subsampled) p["delta"] = o.delta;
    return p;
}

json header() {
    return json{{"schema", 1}, {"tool", "pdd"}, {"version", PDD_VERSION}};
}

// Runs body(i) for i in [0, n) in parallel and rethrows the first failure by index.
template <class Body>
void parallel_for_each(std::size_t n, Body&& body) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

DistanceInterval run_mode(const MetricGraph& g1, const MetricGraph& g2, const CompareOptions& options) {
    switch (options.mode) {
    case IntervalMode::discrete: return discrete_pd_distance(g1, g2);
    case IntervalMode::refined: return approx_pd_distance(g1, g2, options.eps, options.max_rounds);
    case IntervalMode::subsampled: return subsampled_pd_distance(g1, g2, options.delta, options.seed);
    }
    throw InvalidArgument("unknown mode");
}

CompareReport compare(const NamedGraph& g1, const NamedGraph& g2, const CompareOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    CompareReport r;
    r.first = g1.id;
    r.second = g2.id;
    r.options = options;
    r.interval = run_mode(g1.graph, g2.graph, options);
    r.witness_first = label(g1.graph, r.interval.witness_first);
    r.witness_second = label(g2.graph, r.interval.witness_second);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string to_json(const CompareReport& r, bool with_timing) {
    json j = header();
    j["first"] = r.first;
    j["second"] = r.second;
    j["params"] = params_json(r.options);
    const DistanceInterval& d = r.interval;
    j["interval"] = {{"lower", d.lower}, {"upper", d.upper}, {"width", d.width()}, {"step", d.step}};
    j["forward"] = d.forward;
    j["backward"] = d.backward;
    j["witness"] = {{"first", r.witness_first}, {"second", r.witness_second}};
    j["budget_exhausted"] = d.budget_exhausted;
    json rounds = json::array();
    for (const RefinementRound& k : d.rounds) {
        rounds.push_back({{"step", k.step}, {"max_edge", k.max_edge}, {"value", k.value},
                          {"lower", k.lower}, {"upper", k.upper}});
    }
    j["rounds"] = std::move(rounds);
    if (with_timing) j["seconds"] = r.seconds;
    return j.dump(2) + "\n";
}

std::string to_csv(const CompareReport& r) {
    const DistanceInterval& d = r.interval;
    std::ostringstream out;
    out << "first,second,mode,lower,upper,forward,backward,step,witness_first,witness_second,budget_exhausted,seed\n";
    out << r.first << ',' << r.second << ',' << to_string(d.mode) << ',' << format_double(d.lower) << ','
        << format_double(d.upper) << ',' << format_double(d.forward) << ',' << format_double(d.backward) << ','
        << format_double(d.step) << ',' << r.witness_first << ',' << r.witness_second << ','
        << (d.budget_exhausted ? 1 : 0) << ',' << r.options.seed << '\n';
    return out.str();
}

MatrixReport compare_all(const std::vector<NamedGraph>& graphs, const CompareOptions& options) {
    const std::size_t n = graphs.size();
    MatrixReport m;
    m.options = options;
    for (const NamedGraph& g : graphs) m.ids.push_back(g.id);
    m.upper.assign(n * n, 0.0);
    m.lower.assign(n * n, 0.0);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::vector<char> exhausted(pairs.size(), 0);
    parallel_for_each(pairs.size(), [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const DistanceInterval d = run_mode(graphs[i].graph, graphs[j].graph, options);
        m.upper[i * n + j] = m.upper[j * n + i] = d.upper;
        m.lower[i * n + j] = m.lower[j * n + i] = d.lower;
        exhausted[k] = d.budget_exhausted;
    });
    m.budget_exhausted = std::any_of(exhausted.begin(), exhausted.end(), [](char c) { return c != 0; });
    return m;
}

std::string to_json(const MatrixReport& m) {
    const std::size_t n = m.ids.size();
    json j = header();
    j["params"] = params_json(m.options);
    j["ids"] = m.ids;
    json upper = json::array(), lower = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        upper.push_back(std::vector<double>(m.upper.begin() + i * n, m.upper.begin() + (i + 1) * n));
        lower.push_back(std::vector<double>(m.lower.begin() + i * n, m.lower.begin() + (i + 1) * n));
    }
    j["upper"] = std::move(upper);
    j["lower"] = std::move(lower);
    j["budget_exhausted"] = m.budget_exhausted;
    return j.dump(2) + "\n";
}

std::string to_csv(const MatrixReport& m) {
    std::ostringstream out;
    out << "id";
    for (const auto& id : m.ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < m.ids.size(); ++i) {
        out << m.ids[i];
        for (std::size_t j = 0; j < m.ids.size(); ++j) out << ',' << format_double(m.at(i, j));
        out << '\n';
    }
    return out.str();
}

PointCloud sample_noisy(const EmbeddedGraph& hidden, double spacing, double eps, std::mt19937_64& rng) {
    if (!hidden.has_coordinates()) throw InvalidArgument("noise sampling needs node coordinates");
    if (!(spacing > 0.0)) throw NonPositiveStep("sample spacing must be positive");
    const MetricGraph& g = hidden.graph;
    std::vector<std::vector<double>> rows = hidden.coordinates;
    for (const Edge& e : g.edges()) {
        const auto& a = hidden.coordinates[e.u];
        const auto& b = hidden.coordinates[e.v];
        double len2 = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) len2 += (b[k] - a[k]) * (b[k] - a[k]);
        const auto pieces = static_cast<std::size_t>(std::ceil(std::sqrt(len2) / spacing));
        for (std::size_t i = 1; i < pieces; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(pieces);
            std::vector<double> x(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) x[k] = a[k] + t * (b[k] - a[k]);
            rows.push_back(std::move(x));
        }
    }
    if (eps > 0.0) {
        for (auto& row : rows) {
            for (double& x : row) x += uniform(rng, -eps, eps);
        }
    }
    return PointCloud::from_rows(rows);
}

double tune_delta(const MetricGraph& g, std::size_t lo, std::size_t hi, std::uint64_t seed) {
    if (lo > hi) throw InvalidArgument("empty basepoint range");
    if (g.node_count() <= hi) return 0.0;
    const auto nodes = all_nodes(g);
    auto count = [&](double delta) { return sparse_subsample(nodes, g, delta, seed).size(); };

    double delta = g.min_edge_length();
    while (count(delta) > hi) delta *= 2.0;
    if (count(delta) >= lo) return delta;
    // count(below) > hi and count(above) < lo
    double below = delta / 2.0, above = delta;
    for (int step = 0; step < 60; ++step) {
        const double mid = below + (above - below) / 2.0;
        const std::size_t c = count(mid);
        if (c >= lo && c <= hi) return mid;
        (c > hi ? below : above) = mid;
    }
    return above;
}

NoiseSweepReport noise_sweep(const EmbeddedGraph& hidden, const NoiseSweepOptions& options) {
    if (!hidden.has_coordinates()) throw InvalidArgument("noise sweep needs node coordinates");
    if (options.eps.empty()) throw InvalidArgument("empty noise list");
    if (options.samples < 1) throw InvalidArgument("samples must be positive");
    for (double e : options.eps) {
        if (!(e >= 0.0) || !std::isfinite(e)) throw InvalidArgument("noise levels must be non-negative");
    }

    NoiseSweepReport report;
    report.options = options;
    NoiseSweepOptions& o = report.options;
    if (o.spacing <= 0.0) {
        double shortest = std::numeric_limits<double>::infinity();
        for (const Edge& e : hidden.graph.edges()) {
            const auto& a = hidden.coordinates[e.u];
            const auto& b = hidden.coordinates[e.v];
            double len2 = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) len2 += (b[k] - a[k]) * (b[k] - a[k]);
            shortest = std::min(shortest, std::sqrt(len2));
        }
        if (!(shortest > 0.0)) throw InvalidArgument("edge with coincident endpoint coordinates");
        o.spacing = shortest / 4.0;
        for (double e : o.eps) {
            if (e > 0.0) o.spacing = std::min(o.spacing, e / 4.0);
        }
    }
    const MetricGraph reference = subdivide(hidden.graph, o.spacing);
    if (o.delta < 0.0) o.delta = tune_delta(reference, o.min_basepoints, o.max_basepoints, o.seed);

    const std::size_t samples = static_cast<std::size_t>(o.samples);
    const std::size_t draws = o.eps.size() * samples;
    std::vector<double> values(draws, std::numeric_limits<double>::quiet_NaN());
    parallel_for_each(draws, [&](std::size_t k) {
        const double eps = o.eps[k / samples];
        std::mt19937_64 rng(mix_seed(o.seed, k));
        const PointCloud cloud = sample_noisy(hidden, o.spacing, eps, rng);
        // noise-free samples connect to their neighbours only, so corners are not cut
        double radius = eps > 0.0 ? 1.5 * eps : o.spacing;
        for (int attempt = 0; attempt <= o.max_retries; ++attempt, radius *= o.radius_growth) {
            std::optional<MetricGraph> rips;
            try {
                rips = rips_skeleton(cloud, radius);
            } catch (const DisconnectedGraph&) {
                continue;
            }
            const DistanceInterval d = subsampled_pd_distance(*rips, reference, o.delta, mix_seed(o.seed, k));
            values[k] = std::max(d.forward, d.backward);
            return;
        }
    });

    for (std::size_t i = 0; i < o.eps.size(); ++i) {
        NoiseSweepRow row;
        row.eps = o.eps[i];
        double sum = 0.0;
        row.min = std::numeric_limits<double>::infinity();
        row.max = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < samples; ++s) {
            const double v = values[i * samples + s];
            if (std::isnan(v)) {
                ++row.missing;
                continue;
            }
            row.values.push_back(v);
            sum += v;
            row.min = std::min(row.min, v);
            row.max = std::max(row.max, v);
        }
        if (row.values.empty()) {
            row.min = row.mean = row.max = std::numeric_limits<double>::quiet_NaN();
        } else {
            row.mean = sum / static_cast<double>(row.values.size());
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string to_csv(const NoiseSweepReport& r) {
    std::ostringstream out;
    out << "# pdd " << PDD_VERSION << " seed=" << r.options.seed << " samples=" << r.options.samples
        << " spacing=" << format_double(r.options.spacing) << " delta=" << format_double(r.options.delta) << '\n';
    out << "eps,min,mean,max,missing\n";
    for (const NoiseSweepRow& row : r.rows) {
        out << format_double(row.eps) << ',' << format_double(row.min) << ',' << format_double(row.mean) << ','
            << format_double(row.max) << ',' << row.missing << '\n';
    }
    return out.str();
}

} // namespace pdd
