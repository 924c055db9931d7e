#pragma once

#include "pdd/bottleneck.hpp"
#include "pdd/metric_graph.hpp"
#include "pdd/persistence.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pdd {

/// Diagrams of one graph at a list of basepoints, in input order.
struct DiagramSet {
    std::string source;
    std::vector<GraphPoint> basepoints;
    std::vector<PersistenceDiagram> diagrams;
    std::vector<PreparedDiagram> prepared;  // aligned with diagrams

    std::size_t size() const noexcept { return diagrams.size(); }
};

/// Throws EmptyBasepointSet. Diagrams are computed in parallel.
DiagramSet diagram_set(const MetricGraph& g, std::span<const GraphPoint> basepoints, std::string source = {});

DiagramSet diagram_set(const MetricGraph& g, std::span<const NodeId> basepoints, std::string source = {});

struct HausdorffResult {
    double value = 0.0;
    std::size_t from = 0;  // index in the first set attaining the max
    std::size_t to = 0;    // its nearest diagram in the second set
};

/// max over P in `from` of min over Q in `to` of d_B(P, Q).
///
/// Ties resolve to the smallest indices, so the witness does not depend on the
/// number of threads. Rows are pruned once they provably cannot reach the max.
HausdorffResult directed_hausdorff(const DiagramSet& from, const DiagramSet& to);

enum class IntervalMode { discrete, refined, subsampled };

const char* to_string(IntervalMode mode);

struct RefinementRound {
    double step;      // requested subdivision step h
    double max_edge;  // longest edge after subdivision
    double value;     // discrete distance of the subdivided graphs
    double lower;
    double upper;
};

/// Certified enclosure [lower, upper] of the continuous persistence-distortion distance.
struct DistanceInterval {
    double lower = 0.0;
    double upper = 0.0;
    IntervalMode mode = IntervalMode::discrete;
    double step = 0.0;      // subdivision step of the last round (refined) or longest input edge
    double forward = 0.0;   // directed value, first graph to second
    double backward = 0.0;  // directed value, second graph to first
    GraphPoint witness_first;   // on the first input graph
    GraphPoint witness_second;  // on the second input graph
    bool budget_exhausted = false;
    std::vector<RefinementRound> rounds;

    double value() const noexcept { return upper; }
    double width() const noexcept { return upper - lower; }
};

/// Hausdorff distance under d_B between the diagram sets of all graph nodes.
/// lower == upper; `step` holds the longest edge of either graph.
DistanceInterval discrete_pd_distance(const MetricGraph& g1, const MetricGraph& g2);

/// Refines both graphs with a halving step h, starting at the longest edge, and
/// reports [value - l/2, value] where l <= h is the longest refined edge, with the
/// lower end pulled down by the rounding of the subdivided lengths. Stops
/// once the width is at most target_eps (ignored when <= 0) or after max_rounds
/// rounds (unbounded when 0). Missing the target sets budget_exhausted.
DistanceInterval approx_pd_distance(const MetricGraph& g1, const MetricGraph& g2, double target_eps,
                                    int max_rounds);

/// Discrete distance restricted to delta-sparse basepoint subsets chosen with
/// the same seed on both graphs; the interval is
/// [max(0, v - 12 delta - l/2), v + 12 delta] with l the longest edge.
DistanceInterval subsampled_pd_distance(const MetricGraph& g1, const MetricGraph& g2, double delta,
                                        std::uint64_t seed);

/// Hausdorff value and witnesses over node basepoint sets of two graphs.
DistanceInterval hausdorff_between(const MetricGraph& g1, std::span<const NodeId> basepoints1,
                                   const MetricGraph& g2, std::span<const NodeId> basepoints2);

} // namespace pdd
