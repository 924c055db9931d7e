#pragma once

#include "pdd/metric_graph.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pdd {

struct DiagramPoint {
    double birth;
    double death;

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// A persistence point together with the critical pair that produced it.
struct PersistencePoint {
    double birth;
    double death;
    GraphPoint birth_at;  // local maximum
    GraphPoint death_at;  // up-fork saddle, or the basepoint for the essential point
    bool essential = false;
};

/// 0-dimensional super-level-set persistence diagram of d_G(basepoint, .).
///
/// Points satisfy birth >= death >= 0 and are kept sorted by (birth desc,
/// death desc). Exactly one point is essential: (max f, 0). Pairs with
/// birth == death are not stored.
struct PersistenceDiagram {
    GraphPoint basepoint;
    std::vector<PersistencePoint> points;

    std::vector<DiagramPoint> coordinates() const;
    std::size_t size() const noexcept { return points.size(); }
};

struct MaximumPoint {
    GraphPoint where;
    double value;
};

struct SaddleCandidate {
    NodeId node;
    double value;
};

struct CriticalSet {
    std::vector<MaximumPoint> maxima;
    std::vector<SaddleCandidate> saddles;
};

/// Local maxima and up-fork saddle candidates of d_G(base, .).
///
/// Edge (w1, w2) of length l with endpoint distances d1, d2 carries an interior
/// maximum iff |d1 - d2| < l, at offset (d2 - d1 + l) / 2 from w1 with value
/// (d1 + d2 + l) / 2. A node other than the basepoint is a maximum when every
/// incident edge descends from it (degree-1 nodes always do). Saddle
/// candidates are the nodes of degree >= 3.
CriticalSet critical_points(const MetricGraph& g, const GraphPoint& base);

/// Elder-rule sweep of the super-level sets of d_G(base, .). Edges are split at
/// their interior maxima so the function is monotone on every piece; vertices
/// are processed by (value desc, id asc) and, on equal births, the component
/// whose birth vertex comes first survives.
PersistenceDiagram diagram(const MetricGraph& g, const GraphPoint& base);

/// One "birth,death" line per point, in the diagram's (birth desc, death desc) order.
std::string to_csv(const PersistenceDiagram& dg);

} // namespace pdd
