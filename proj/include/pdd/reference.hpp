#pragma once

// Serial reference implementations of the parallel kernels. They follow the
// definitions directly and exist for cross-checking and benchmarking.

#include "pdd/bottleneck.hpp"
#include "pdd/distortion.hpp"

#include <span>

namespace pdd::reference {

/// Binary search over every pair_metric value of the augmented sets, testing
/// each threshold with a perfect matching on the full augmented graph.
BottleneckResult bottleneck_distance(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2);

DiagramSet diagram_set(const MetricGraph& g, std::span<const GraphPoint> basepoints);

/// Full table of bottleneck distances, then max-min with smallest-index ties.
HausdorffResult directed_hausdorff(const DiagramSet& from, const DiagramSet& to);

} // namespace pdd::reference
