#include "pdd/reference.hpp"

#include "pdd/error.hpp"

#include <algorithm>
#include <limits>

namespace pdd::reference {

BottleneckResult bottleneck_distance(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2) {
    auto [left, right] = augment(d1, d2);
    if (left.size() == 0) return {};

    std::vector<double> candidates;
    candidates.reserve(left.size() * right.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) candidates.push_back(pair_metric(left[i], right[j]));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // the largest candidate admits the complete bipartite graph
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(left, right, candidates[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    BottleneckResult out;
    out.distance = candidates[lo];
    out.matching = *feasible_matching(left, right, out.distance);
    return out;
}

DiagramSet diagram_set(const MetricGraph& g, std::span<const GraphPoint> basepoints) {
    if (basepoints.empty()) throw EmptyBasepointSet("basepoint set is empty");
    DiagramSet set;
    for (const GraphPoint& p : basepoints) {
        set.basepoints.push_back(p);
        set.diagrams.push_back(pdd::diagram(g, p));
        const auto coords = set.diagrams.back().coordinates();
        set.prepared.emplace_back(coords);
    }
    return set;
}

HausdorffResult directed_hausdorff(const DiagramSet& from, const DiagramSet& to) {
    if (from.size() == 0 || to.size() == 0) throw EmptyBasepointSet("diagram set is empty");
    HausdorffResult out;
    out.value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < from.size(); ++i) {
        double row = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t j = 0; j < to.size(); ++j) {
            const double d = bottleneck_value(from.prepared[i], to.prepared[j]);
            if (d < row) {
                row = d;
                arg = j;
            }
        }
        if (row > out.value) {
            out.value = row;
            out.from = i;
            out.to = arg;
        }
    }
    return out;
}

} // namespace pdd::reference
