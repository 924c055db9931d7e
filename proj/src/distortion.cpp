#include "pdd/distortion.hpp"

#include "pdd/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace pdd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RowScan {
    double value = kInf;
    std::size_t col = 0;
    bool exact = true;
};

// Exact min over the second set for one row, starting from a hint column.
// Returns early (exact = false) once the running min drops below `abort_below`.
RowScan scan_row(const PreparedDiagram& row, const DiagramSet& to, std::size_t hint, double abort_below) {
    RowScan out;
    const std::size_t n = to.size();
    if (hint < n) {
        out.value = bottleneck_value(row, to.prepared[hint]);
        out.col = hint;
        if (out.value < abort_below) {
            out.exact = false;
            return out;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (j == hint) continue;
        // below the current witness index a tie also wins
        const double bound = j < out.col ? std::nextafter(out.value, kInf) : out.value;
        const double d = bottleneck_value(row, to.prepared[j], bound);
        if (d < bound) {
            out.value = d;
            out.col = j;
            if (out.value < abort_below) {
                out.exact = false;
                return out;
            }
        }
    }
    return out;
}

void check_distinct(std::span<const GraphPoint> basepoints) {
    std::vector<std::tuple<bool, std::size_t, std::size_t, double>> keys;
    keys.reserve(basepoints.size());
    for (const GraphPoint& p : basepoints) {
        keys.emplace_back(p.is_node(), p.node(), p.edge(), p.offset());
    }
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
        throw InvalidArgument("basepoints must be distinct");
    }
}

DistanceInterval combine(const DiagramSet& s1, const DiagramSet& s2) {
    const HausdorffResult fwd = directed_hausdorff(s1, s2);
    const HausdorffResult bwd = directed_hausdorff(s2, s1);
    DistanceInterval out;
    out.forward = fwd.value;
    out.backward = bwd.value;
    out.lower = out.upper = std::max(fwd.value, bwd.value);
    if (fwd.value >= bwd.value) {
        out.witness_first = s1.basepoints[fwd.from];
        out.witness_second = s2.basepoints[fwd.to];
    } else {
        out.witness_first = s1.basepoints[bwd.to];
        out.witness_second = s2.basepoints[bwd.from];
    }
    return out;
}

} // namespace

DiagramSet diagram_set(const MetricGraph& g, std::span<const GraphPoint> basepoints, std::string source) {
    if (basepoints.empty()) throw EmptyBasepointSet("basepoint set is empty");
    for (const GraphPoint& p : basepoints) validate_point(g, p);
    check_distinct(basepoints);

    DiagramSet set;
    set.source = std::move(source);
    set.basepoints.assign(basepoints.begin(), basepoints.end());
    const auto n = static_cast<std::ptrdiff_t>(basepoints.size());
    set.diagrams.resize(basepoints.size());
    set.prepared.resize(basepoints.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        set.diagrams[i] = diagram(g, basepoints[i]);
        const auto coords = set.diagrams[i].coordinates();
        set.prepared[i] = PreparedDiagram(coords);
    }
    return set;
}

DiagramSet diagram_set(const MetricGraph& g, std::span<const NodeId> basepoints, std::string source) {
    std::vector<GraphPoint> points;
    points.reserve(basepoints.size());
    for (NodeId v : basepoints) points.push_back(GraphPoint::at_node(v));
    return diagram_set(g, points, std::move(source));
}

HausdorffResult directed_hausdorff(const DiagramSet& from, const DiagramSet& to) {
    if (from.size() == 0 || to.size() == 0) throw EmptyBasepointSet("diagram set is empty");
    const std::size_t rows = from.size();
    std::vector<RowScan> scans(rows);

    // Probe rows are computed exactly first; their max is a lower bound on the
    // answer, so any other row whose running min falls below it is dropped.
    const std::size_t stride = std::max<std::size_t>(1, rows / 16);
    std::vector<std::size_t> probes, others;
    for (std::size_t i = 0; i < rows; ++i) (i % stride == 0 ? probes : others).push_back(i);

    const auto n_probes = static_cast<std::ptrdiff_t>(probes.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n_probes; ++k) {
        const std::size_t i = probes[k];
        scans[i] = scan_row(from.prepared[i], to, std::numeric_limits<std::size_t>::max(), -kInf);
    }
    double floor = -kInf;
    for (std::size_t i : probes) floor = std::max(floor, scans[i].value);

    const auto n_others = static_cast<std::ptrdiff_t>(others.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < n_others; ++k) {
        const std::size_t i = others[k];
        const std::size_t hint = scans[i - i % stride].col;
        scans[i] = scan_row(from.prepared[i], to, hint, floor);
    }

    HausdorffResult out;
    out.value = -kInf;
    for (std::size_t i = 0; i < rows; ++i) {
        if (scans[i].exact && scans[i].value > out.value) {
            out.value = scans[i].value;
            out.from = i;
            out.to = scans[i].col;
        }
    }
    return out;
}

const char* to_string(IntervalMode mode) {
    switch (mode) {
    case IntervalMode::discrete: return "discrete";
    case IntervalMode::refined: return "refined";
    case IntervalMode::subsampled: return "subsampled";
    }
    return "unknown";
}

DistanceInterval hausdorff_between(const MetricGraph& g1, std::span<const NodeId> basepoints1,
                                   const MetricGraph& g2, std::span<const NodeId> basepoints2) {
    const DiagramSet s1 = diagram_set(g1, basepoints1);
    const DiagramSet s2 = diagram_set(g2, basepoints2);
    return combine(s1, s2);
}

DistanceInterval discrete_pd_distance(const MetricGraph& g1, const MetricGraph& g2) {
    const auto n1 = all_nodes(g1);
    const auto n2 = all_nodes(g2);
    DistanceInterval out = hausdorff_between(g1, n1, g2, n2);
    out.mode = IntervalMode::discrete;
    out.step = std::max(g1.max_edge_length(), g2.max_edge_length());
    return out;
}

DistanceInterval approx_pd_distance(const MetricGraph& g1, const MetricGraph& g2, double target_eps,
                                    int max_rounds) {
    if (!(target_eps > 0.0) && max_rounds < 1) {
        throw InvalidArgument("refinement needs a positive target width or at least one round");
    }
    if (max_rounds < 0) throw InvalidArgument("max_rounds must be non-negative");
    constexpr int kRoundCap = 40;
    const int rounds = max_rounds == 0 ? kRoundCap : max_rounds;

    DistanceInterval out;
    out.mode = IntervalMode::refined;
    double step = std::max(g1.max_edge_length(), g2.max_edge_length());
    bool reached = false;
    for (int round = 0; round < rounds; ++round, step /= 2.0) {
        const Subdivision r1 = subdivide_with_origins(g1, step);
        const Subdivision r2 = subdivide_with_origins(g2, step);
        DistanceInterval d = discrete_pd_distance(r1.graph, r2.graph);
        const double longest = d.step;
        out.forward = d.forward;
        out.backward = d.backward;
        out.upper = d.upper;
        // subdivided lengths are rounded; a path of fewer than n pieces sums to
        // within n ulps of its value
        const double nodes = static_cast<double>(r1.graph.node_count() + r2.graph.node_count());
        const double rounding = nodes * std::numeric_limits<double>::epsilon() * d.upper;
        out.lower = std::max(0.0, d.upper - longest / 2.0 - rounding);
        out.step = step;
        out.witness_first = r1.origin[d.witness_first.node()];
        out.witness_second = r2.origin[d.witness_second.node()];
        out.rounds.push_back({step, longest, d.upper, out.lower, out.upper});
        if (target_eps > 0.0 && out.width() <= target_eps) {
            reached = true;
            break;
        }
    }
    out.budget_exhausted = target_eps > 0.0 && !reached;
    return out;
}

DistanceInterval subsampled_pd_distance(const MetricGraph& g1, const MetricGraph& g2, double delta,
                                        std::uint64_t seed) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidArgument("delta must be non-negative");
    const auto q1 = sparse_subsample(all_nodes(g1), g1, delta, seed);
    const auto q2 = sparse_subsample(all_nodes(g2), g2, delta, seed);
    DistanceInterval out = hausdorff_between(g1, q1, g2, q2);
    const double longest = std::max(g1.max_edge_length(), g2.max_edge_length());
    const double v = out.upper;
    out.mode = IntervalMode::subsampled;
    out.step = longest;
    out.lower = std::max(0.0, v - 12.0 * delta - longest / 2.0);
    out.upper = v + 12.0 * delta;
    return out;
}

} // namespace pdd
