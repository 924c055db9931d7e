#pragma once

#include "pdd/persistence.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pdd {

enum class Origin : std::uint8_t { real, diagonal };

// A point of an augmented set. `source` indexes the diagram the point comes
// from: its own diagram for real points, the opposite one for projections.
struct TaggedPoint {
    DiagramPoint point;
    Origin origin;
    std::size_t source;
};

struct AugmentedPointSet {
    std::vector<TaggedPoint> points;

    std::size_t size() const noexcept { return points.size(); }
    const TaggedPoint& operator[](std::size_t i) const { return points[i]; }
};

struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (left index, right index)
    double cost = 0.0;
};

struct BottleneckResult {
    double distance = 0.0;
    Matching matching;
};

/// L-infinity closest diagonal point ((b+d)/2, (b+d)/2).
inline DiagramPoint diagonal_projection(DiagramPoint p) {
    const double c = (p.birth + p.death) / 2.0;
    return {c, c};
}

/// L-infinity distance from p to its diagonal projection.
inline double distance_to_diagonal(DiagramPoint p) {
    const double c = (p.birth + p.death) / 2.0;
    return std::max(p.birth - c, c - p.death);
}

/// left = D1 plus projections of D2, right = D2 plus projections of D1.
std::pair<AugmentedPointSet, AugmentedPointSet> augment(std::span<const DiagramPoint> d1,
                                                        std::span<const DiagramPoint> d2);

/// L-infinity distance, except that two diagonal points are at distance 0.
double pair_metric(const TaggedPoint& a, const TaggedPoint& b);

/// True iff a perfect matching exists using only pairs with pair_metric <= threshold.
/// Throws InvalidArgument when the sets differ in size.
bool feasible(const AugmentedPointSet& left, const AugmentedPointSet& right, double threshold);

/// As feasible(), returning one such perfect matching.
std::optional<Matching> feasible_matching(const AugmentedPointSet& left, const AugmentedPointSet& right,
                                          double threshold);

/// Exact bottleneck distance and one optimal matching between the augmented sets.
BottleneckResult bottleneck_distance(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2);
BottleneckResult bottleneck_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

/// A diagram indexed for repeated bottleneck queries.
class PreparedDiagram {
public:
    PreparedDiagram() = default;
    explicit PreparedDiagram(std::span<const DiagramPoint> points);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    // sorted by (birth, death)
    std::span<const DiagramPoint> points() const noexcept { return points_; }
    // distance_to_diagonal, aligned with points()
    std::span<const double> diagonal_distance() const noexcept { return diag_; }
    // indices into points(), by decreasing diagonal distance
    std::span<const std::uint32_t> by_diagonal_distance() const noexcept { return by_diag_; }
    // diagonal distances in that same decreasing order
    std::span<const double> diagonal_distance_desc() const noexcept { return diag_desc_; }
    double max_diagonal_distance() const noexcept { return diag_desc_.empty() ? 0.0 : diag_desc_.front(); }

private:
    std::vector<DiagramPoint> points_;
    std::vector<double> diag_;
    std::vector<std::uint32_t> by_diag_;
    std::vector<double> diag_desc_;
};

/// Bottleneck distance between prepared diagrams. The result is exact when it
/// is below `bound`; otherwise some value >= bound is returned.
///
/// Only critical values are searched: diagonal distances, and distances between
/// pairs where one point is farther from the diagonal than from the other.
/// A threshold is feasible iff the points farther than it from the diagonal on
/// each side can be matched into the other diagram, which is checked one side
/// at a time.
double bottleneck_value(const PreparedDiagram& a, const PreparedDiagram& b,
                        double bound = std::numeric_limits<double>::infinity());

double bottleneck_value(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2);

} // namespace pdd
