#include "pdd/metric_graph.hpp"

#include "pdd/error.hpp"
#include "pdd/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace pdd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

bool connected(std::size_t n, std::span<const std::size_t> offsets, std::span<const Incidence> inc) {
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) {
            NodeId w = inc[k].other;
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

// Dijkstra seeded with several (node, distance) sources; stops expanding past `radius`.
std::vector<double> dijkstra(const MetricGraph& g, std::span<const std::pair<NodeId, double>> sources,
                             double radius = kInf) {
    std::vector<double> dist(g.node_count(), kInf);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (auto [v, d] : sources) {
        if (d < dist[v]) {
            dist[v] = d;
            heap.emplace(d, v);
        }
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        if (d > radius) break;
        for (const Incidence& inc : g.incident(v)) {
            double nd = d + g.edge(inc.edge).length;
            if (nd < dist[inc.other]) {
                dist[inc.other] = nd;
                heap.emplace(nd, inc.other);
            }
        }
    }
    return dist;
}

} // namespace

MetricGraph MetricGraph::from_edges(std::size_t node_count, std::span<const IndexedEdge> edges,
                                    std::vector<std::string> node_names) {
    if (node_count == 0) throw InvalidArgument("graph has no nodes");
    if (node_names.empty()) {
        node_names.reserve(node_count);
        for (std::size_t i = 0; i < node_count; ++i) node_names.push_back(std::to_string(i));
    } else if (node_names.size() != node_count) {
        throw InvalidArgument("node name count does not match node count");
    }

    MetricGraph g;
    g.names_ = std::move(node_names);
    g.edges_.reserve(edges.size());
    g.max_length_ = 0.0;
    g.min_length_ = edges.empty() ? 0.0 : kInf;
    std::vector<std::size_t> degree(node_count, 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const IndexedEdge& ie = edges[e];
        if (ie.u >= node_count || ie.v >= node_count) {
            throw UnknownNode("edge " + std::to_string(e) + " references an unknown node");
        }
        if (!(ie.length > 0.0) || !std::isfinite(ie.length)) {
            throw NonPositiveLength("edge " + std::to_string(e) + " has non-positive length " +
                                    format_double(ie.length));
        }
        g.edges_.push_back({ie.u, ie.v, ie.length});
        g.max_length_ = std::max(g.max_length_, ie.length);
        g.min_length_ = std::min(g.min_length_, ie.length);
        ++degree[ie.u];
        ++degree[ie.v];
    }

    g.offsets_.assign(node_count + 1, 0);
    for (std::size_t v = 0; v < node_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    g.incidence_.resize(g.offsets_.back());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId e = 0; e < g.edges_.size(); ++e) {
        const Edge& ed = g.edges_[e];
        g.incidence_[fill[ed.u]++] = {e, ed.v};
        g.incidence_[fill[ed.v]++] = {e, ed.u};
    }

    if (!connected(node_count, g.offsets_, g.incidence_)) {
        throw DisconnectedGraph("graph is not connected");
    }
    return g;
}

MetricGraph MetricGraph::build(std::vector<std::string> node_names, std::span<const NamedEdge> edges) {
    std::unordered_map<std::string, NodeId> index;
    index.reserve(node_names.size());
    for (NodeId v = 0; v < node_names.size(); ++v) {
        if (!index.emplace(node_names[v], v).second) {
            throw InvalidArgument("duplicate node name '" + node_names[v] + "'");
        }
    }
    std::vector<IndexedEdge> indexed;
    indexed.reserve(edges.size());
    for (const NamedEdge& ne : edges) {
        auto iu = index.find(ne.u);
        auto iv = index.find(ne.v);
        if (iu == index.end()) throw UnknownNode("unknown node '" + ne.u + "'");
        if (iv == index.end()) throw UnknownNode("unknown node '" + ne.v + "'");
        indexed.push_back({iu->second, iv->second, ne.length});
    }
    const std::size_t n = node_names.size();
    return from_edges(n, indexed, std::move(node_names));
}

std::optional<NodeId> MetricGraph::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<NodeId>(it - names_.begin());
}

GraphPoint point_on_edge(const MetricGraph& g, EdgeId e, double offset) {
    if (e >= g.edge_count()) throw InvalidArgument("edge id out of range");
    const Edge& ed = g.edge(e);
    if (!(offset >= 0.0 && offset <= ed.length)) {
        throw InvalidArgument("offset " + format_double(offset) + " outside edge " + std::to_string(e));
    }
    if (offset == 0.0) return GraphPoint::at_node(ed.u);
    if (offset == ed.length) return GraphPoint::at_node(ed.v);
    return GraphPoint::on_edge(e, offset);
}

void validate_point(const MetricGraph& g, const GraphPoint& p) {
    if (p.is_node()) {
        if (p.node() >= g.node_count()) throw InvalidArgument("node id out of range");
        return;
    }
    if (p.edge() >= g.edge_count()) throw InvalidArgument("edge id out of range");
    double len = g.edge(p.edge()).length;
    if (!(p.offset() > 0.0 && p.offset() < len)) {
        throw InvalidArgument("interior offset must lie strictly inside its edge");
    }
}

std::string label(const MetricGraph& g, const GraphPoint& p) {
    if (p.is_node()) return g.name(p.node());
    return "e" + std::to_string(p.edge()) + "@" + format_double(p.offset());
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidArgument("point cloud is empty");
    PointCloud pc;
    pc.dim_ = rows.front().size();
    if (pc.dim_ == 0) throw InvalidArgument("points must have at least one coordinate");
    pc.coords_.reserve(rows.size() * pc.dim_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != pc.dim_) {
            throw InvalidArgument("point " + std::to_string(i) + " has dimension " +
                                  std::to_string(rows[i].size()) + ", expected " + std::to_string(pc.dim_));
        }
        for (double c : rows[i]) {
            if (!std::isfinite(c)) throw InvalidArgument("point " + std::to_string(i) + " is not finite");
            pc.coords_.push_back(c);
        }
    }
    return pc;
}

SplitGraph split_edge_at(const MetricGraph& g, EdgeId e, double offset) {
    if (e >= g.edge_count()) throw InvalidArgument("edge id out of range");
    const Edge split = g.edge(e);
    if (!(offset > 0.0 && offset < split.length)) {
        throw InvalidArgument("split offset must lie strictly inside the edge");
    }
    const NodeId mid = g.node_count();
    std::vector<IndexedEdge> edges;
    edges.reserve(g.edge_count() + 1);
    for (const Edge& ed : g.edges()) edges.push_back({ed.u, ed.v, ed.length});
    edges[e] = {split.u, mid, offset};
    edges.push_back({mid, split.v, split.length - offset});

    std::vector<std::string> names(g.names().begin(), g.names().end());
    names.push_back("~split");
    return {MetricGraph::from_edges(g.node_count() + 1, edges, std::move(names)), mid, e,
            g.edge_count(), offset};
}

std::vector<double> node_distances(const MetricGraph& g, NodeId source) {
    const std::pair<NodeId, double> src{source, 0.0};
    return dijkstra(g, std::span(&src, 1));
}

std::vector<double> geodesic_from(const MetricGraph& g, const GraphPoint& base) {
    validate_point(g, base);
    if (base.is_node()) return node_distances(g, base.node());
    SplitGraph sg = split_edge_at(g, base.edge(), base.offset());
    std::vector<double> dist = node_distances(sg.graph, sg.split_node);
    dist.resize(g.node_count());
    return dist;
}

double distance_at(const MetricGraph& g, std::span<const double> node_dist, const GraphPoint& x) {
    if (x.is_node()) return node_dist[x.node()];
    const Edge& ed = g.edge(x.edge());
    return std::min(node_dist[ed.u] + x.offset(), node_dist[ed.v] + (ed.length - x.offset()));
}

double eval_geodesic(const MetricGraph& g, const GraphPoint& base, const GraphPoint& x) {
    validate_point(g, x);
    std::vector<double> dist = geodesic_from(g, base);
    double d = distance_at(g, dist, x);
    if (!base.is_node() && !x.is_node() && base.edge() == x.edge()) {
        d = std::min(d, std::abs(base.offset() - x.offset()));
    }
    return d;
}

Subdivision subdivide_with_origins(const MetricGraph& g, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw NonPositiveStep("subdivision step must be positive and finite");
    }
    constexpr double kMaxPieces = 5e7;
    double total = 0.0;
    for (const Edge& ed : g.edges()) total += std::ceil(ed.length / step);
    if (total > kMaxPieces) throw InvalidArgument("subdivision step too small for this graph");

    std::vector<std::string> names(g.names().begin(), g.names().end());
    std::vector<GraphPoint> origin;
    origin.reserve(static_cast<std::size_t>(total) + g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) origin.push_back(GraphPoint::at_node(v));

    std::vector<IndexedEdge> edges;
    edges.reserve(static_cast<std::size_t>(total));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(ed.length / step)));
        const double piece = ed.length / static_cast<double>(pieces);
        NodeId prev = ed.u;
        for (std::size_t i = 1; i < pieces; ++i) {
            NodeId fresh = names.size();
            names.push_back("~" + std::to_string(e) + "_" + std::to_string(i));
            origin.push_back(GraphPoint::on_edge(e, piece * static_cast<double>(i)));
            edges.push_back({prev, fresh, piece});
            prev = fresh;
        }
        edges.push_back({prev, ed.v, piece});
    }
    const std::size_t n = names.size();
    return {MetricGraph::from_edges(n, edges, std::move(names)), std::move(origin)};
}

MetricGraph subdivide(const MetricGraph& g, double step) {
    return subdivide_with_origins(g, step).graph;
}

std::vector<NodeId> sparse_subsample(std::span<const NodeId> candidates, const MetricGraph& g,
                                     double delta, std::uint64_t seed) {
    if (!(delta >= 0.0)) throw InvalidArgument("delta must be non-negative");
    std::vector<NodeId> order(candidates.begin(), candidates.end());
    for (NodeId v : order) {
        if (v >= g.node_count()) throw UnknownNode("subsample candidate out of range");
    }
    std::mt19937_64 rng(seed);
    shuffle(order, rng);

    std::vector<double> nearest(g.node_count(), kInf);
    std::vector<NodeId> kept;
    for (NodeId v : order) {
        if (!(nearest[v] > delta)) continue;
        kept.push_back(v);
        // only distances <= delta can veto later candidates
        const std::pair<NodeId, double> src{v, 0.0};
        std::vector<double> dist = dijkstra(g, std::span(&src, 1), delta);
        for (NodeId w = 0; w < dist.size(); ++w) nearest[w] = std::min(nearest[w], dist[w]);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

MetricGraph rips_skeleton(const PointCloud& points, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("Rips radius must be positive");
    const std::size_t n = points.size();
    const double r2 = radius * radius;
    std::vector<IndexedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        auto pi = points.point(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            auto pj = points.point(j);
            double s = 0.0;
            for (std::size_t k = 0; k < pi.size() && s <= r2; ++k) {
                double d = pi[k] - pj[k];
                s += d * d;
            }
            if (s <= r2) edges.push_back({i, j, std::sqrt(s)});
        }
    }
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    try {
        return MetricGraph::from_edges(n, edges, std::move(names));
    } catch (const NonPositiveLength&) {
        throw InvalidArgument("point cloud contains duplicate points");
    }
}

std::vector<NodeId> all_nodes(const MetricGraph& g) {
    std::vector<NodeId> v(g.node_count());
    std::iota(v.begin(), v.end(), NodeId{0});
    return v;
}

} // namespace pdd
