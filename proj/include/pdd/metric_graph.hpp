#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pdd {

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
    NodeId u;
    NodeId v;
    double length;
};

// One incidence record; a self-loop contributes two records to its node.
struct Incidence {
    EdgeId edge;
    NodeId other;
};

// Edge given by node names, as read from a file.
struct NamedEdge {
    std::string u;
    std::string v;
    double length;
};

// Edge given by node indices.
struct IndexedEdge {
    NodeId u;
    NodeId v;
    double length;
};

/// A finite connected graph with positive edge lengths, viewed as the metric
/// space of all points on all edges under shortest-path distance.
///
/// Immutable after construction. Nodes are indexed 0..node_count()-1 and keep
/// their external names; edge ids follow input order. Parallel edges and
/// self-loops are kept as distinct edges.
class MetricGraph {
public:
    /// Throws NonPositiveLength, UnknownNode or DisconnectedGraph.
    static MetricGraph build(std::vector<std::string> node_names, std::span<const NamedEdge> edges);

    /// Index-based construction; nodes are named "0", "1", ... unless names are given.
    static MetricGraph from_edges(std::size_t node_count, std::span<const IndexedEdge> edges,
                                  std::vector<std::string> node_names = {});

    std::size_t node_count() const noexcept { return names_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Incidence> incident(NodeId v) const {
        return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    const std::string& name(NodeId v) const { return names_[v]; }
    std::span<const std::string> names() const noexcept { return names_; }
    std::optional<NodeId> find(const std::string& name) const;

    double max_edge_length() const noexcept { return max_length_; }
    double min_edge_length() const noexcept { return min_length_; }

private:
    MetricGraph() = default;

    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Incidence> incidence_;
    double max_length_ = 0.0;
    double min_length_ = 0.0;
};

/// A location on a metric graph: a node, or a point strictly inside an edge
/// at arclength `offset` from the edge's first endpoint.
class GraphPoint {
public:
    GraphPoint() = default;

    static GraphPoint at_node(NodeId v) { return GraphPoint(v, 0, 0.0, true); }
    static GraphPoint on_edge(EdgeId e, double offset) { return GraphPoint(0, e, offset, false); }

    bool is_node() const noexcept { return is_node_; }
    NodeId node() const noexcept { return node_; }
    EdgeId edge() const noexcept { return edge_; }
    double offset() const noexcept { return offset_; }

    friend bool operator==(const GraphPoint&, const GraphPoint&) = default;

private:
    GraphPoint(NodeId v, EdgeId e, double offset, bool is_node)
        : node_(v), edge_(e), offset_(offset), is_node_(is_node) {}

    NodeId node_ = 0;
    EdgeId edge_ = 0;
    double offset_ = 0.0;
    bool is_node_ = true;
};

/// Point at `offset` along edge `e`, snapping the endpoints 0 and length to nodes.
/// Throws InvalidArgument when the offset is outside [0, length].
GraphPoint point_on_edge(const MetricGraph& g, EdgeId e, double offset);

/// Throws InvalidArgument unless `p` lies on `g`.
void validate_point(const MetricGraph& g, const GraphPoint& p);

/// Human-readable label: the node name, or "e<edge>@<offset>".
std::string label(const MetricGraph& g, const GraphPoint& p);

/// Coordinates of points in R^d, stored row-major.
class PointCloud {
public:
    /// Throws InvalidArgument on empty input, ragged rows or non-finite values.
    static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

// The graph with one edge split in two at an interior point, which becomes
// the last node. The first piece keeps the edge id; the second piece is
// appended as the last edge.
struct SplitGraph {
    MetricGraph graph;
    NodeId split_node;
    EdgeId head_edge;
    EdgeId tail_edge;
    double offset;
};

SplitGraph split_edge_at(const MetricGraph& g, EdgeId e, double offset);

/// Shortest-path distance from `base` to every node.
std::vector<double> geodesic_from(const MetricGraph& g, const GraphPoint& base);

/// Dijkstra from a node.
std::vector<double> node_distances(const MetricGraph& g, NodeId source);

/// d_G(base, x), symmetric in its arguments.
double eval_geodesic(const MetricGraph& g, const GraphPoint& base, const GraphPoint& x);

/// Distance at point `x` given the node distances from some basepoint. Ignores
/// the basepoint's own edge, so callers handle an interior basepoint on x's edge.
double distance_at(const MetricGraph& g, std::span<const double> node_dist, const GraphPoint& x);

struct Subdivision {
    MetricGraph graph;
    // For every node of `graph`, its location on the original graph.
    std::vector<GraphPoint> origin;
};

/// Splits every edge into ceil(length / step) equal pieces. Original nodes keep
/// their indices; new nodes are appended edge by edge. Throws NonPositiveStep.
Subdivision subdivide_with_origins(const MetricGraph& g, double step);
MetricGraph subdivide(const MetricGraph& g, double step);

/// Greedy delta-sparse subset of `candidates`, scanned in a seeded random
/// order; a node is kept iff its distance to every kept node exceeds delta.
/// Returned in ascending id order.
std::vector<NodeId> sparse_subsample(std::span<const NodeId> candidates, const MetricGraph& g,
                                     double delta, std::uint64_t seed);

/// 1-skeleton of the Rips complex: an edge between every pair of points at
/// Euclidean distance <= radius, weighted by that distance.
/// Throws DisconnectedGraph when the skeleton is not connected.
MetricGraph rips_skeleton(const PointCloud& points, double radius);

std::vector<NodeId> all_nodes(const MetricGraph& g);

} // namespace pdd
