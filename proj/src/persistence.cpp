#include "pdd/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <optional>

namespace pdd {

namespace {

// The basepoint as a node: either the graph itself, or a copy with the
// basepoint's edge split in two.
class RootedGraph {
public:
    RootedGraph(const MetricGraph& g, const GraphPoint& base) : base_(base) {
        validate_point(g, base);
        if (base.is_node()) {
            graph_ = &g;
            root_ = base.node();
        } else {
            split_.emplace(split_edge_at(g, base.edge(), base.offset()));
            graph_ = &split_->graph;
            root_ = split_->split_node;
        }
    }

    const MetricGraph& graph() const { return *graph_; }
    NodeId root() const { return root_; }

    GraphPoint to_original(const GraphPoint& p) const {
        if (!split_) return p;
        if (p.is_node()) return p.node() == split_->split_node ? base_ : p;
        if (p.edge() == split_->tail_edge) {
            return GraphPoint::on_edge(split_->head_edge, split_->offset + p.offset());
        }
        return p;
    }

private:
    GraphPoint base_;
    const MetricGraph* graph_ = nullptr;
    std::optional<SplitGraph> split_;
    NodeId root_ = 0;
};

struct InteriorMax {
    double offset;
    double value;
};

// Relative slack so that |d1 - d2| == l computed along different paths does
// not produce a spurious maximum glued to an endpoint.
constexpr double kTieSlack = 1e-12;

std::optional<InteriorMax> interior_max(double d1, double d2, double len) {
    const double tol = kTieSlack * (d1 + d2 + len);
    if (d1 + len - d2 > tol && d2 + len - d1 > tol) {
        return InteriorMax{(d2 - d1 + len) / 2.0, (d1 + d2 + len) / 2.0};
    }
    return std::nullopt;
}

bool is_node_maximum(const MetricGraph& g, std::span<const double> dist, NodeId v, NodeId root) {
    if (v == root || g.degree(v) == 0) return false;
    for (const Incidence& inc : g.incident(v)) {
        const Edge& ed = g.edge(inc.edge);
        if (interior_max(dist[ed.u], dist[ed.v], ed.length)) return false;
        if (!(dist[inc.other] < dist[v])) return false;
    }
    return true;
}

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

} // namespace

std::vector<DiagramPoint> PersistenceDiagram::coordinates() const {
    std::vector<DiagramPoint> out;
    out.reserve(points.size());
    for (const PersistencePoint& p : points) out.push_back({p.birth, p.death});
    return out;
}

CriticalSet critical_points(const MetricGraph& g, const GraphPoint& base) {
    RootedGraph rooted(g, base);
    const MetricGraph& rg = rooted.graph();
    const std::vector<double> dist = node_distances(rg, rooted.root());

    CriticalSet out;
    for (NodeId v = 0; v < rg.node_count(); ++v) {
        if (is_node_maximum(rg, dist, v, rooted.root())) {
            out.maxima.push_back({rooted.to_original(GraphPoint::at_node(v)), dist[v]});
        }
    }
    for (EdgeId e = 0; e < rg.edge_count(); ++e) {
        const Edge& ed = rg.edge(e);
        if (auto m = interior_max(dist[ed.u], dist[ed.v], ed.length)) {
            out.maxima.push_back({rooted.to_original(GraphPoint::on_edge(e, m->offset)), m->value});
        }
    }
    for (NodeId v = 0; v < rg.node_count(); ++v) {
        if (rg.degree(v) >= 3) out.saddles.push_back({v, dist[v]});
    }
    return out;
}

PersistenceDiagram diagram(const MetricGraph& g, const GraphPoint& base) {
    RootedGraph rooted(g, base);
    const MetricGraph& rg = rooted.graph();
    const std::size_t n = rg.node_count();
    std::vector<double> f = node_distances(rg, rooted.root());

    // Augmented graph: nodes first, then one vertex per interior maximum.
    std::vector<GraphPoint> where;
    where.reserve(n);
    for (NodeId v = 0; v < n; ++v) where.push_back(GraphPoint::at_node(v));
    std::vector<std::pair<std::size_t, std::size_t>> links;
    links.reserve(rg.edge_count() * 2);
    for (EdgeId e = 0; e < rg.edge_count(); ++e) {
        const Edge& ed = rg.edge(e);
        if (auto m = interior_max(f[ed.u], f[ed.v], ed.length)) {
            const std::size_t mid = f.size();
            f.push_back(m->value);
            where.push_back(GraphPoint::on_edge(e, m->offset));
            links.emplace_back(ed.u, mid);
            links.emplace_back(mid, ed.v);
        } else {
            links.emplace_back(ed.u, ed.v);
        }
    }
    const std::size_t count = f.size();

    std::vector<std::size_t> offsets(count + 1, 0);
    for (auto [a, b] : links) {
        ++offsets[a + 1];
        ++offsets[b + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::size_t> adj(offsets.back());
    {
        std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
        for (auto [a, b] : links) {
            adj[fill[a]++] = b;
            adj[fill[b]++] = a;
        }
    }

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return f[a] != f[b] ? f[a] > f[b] : a < b;
    });
    std::vector<std::size_t> rank(count);
    for (std::size_t i = 0; i < count; ++i) rank[order[i]] = i;

    // Union-find; a root remembers the vertex where its component was born.
    std::vector<std::size_t> parent(count), born(count);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    PersistenceDiagram dg;
    dg.basepoint = base;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t v = order[i];
        roots.clear();
        for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) {
            const std::size_t w = adj[k];
            if (rank[w] < i) roots.push_back(find(w));
        }
        parent[v] = v;
        if (roots.empty()) {
            born[v] = v;
            continue;
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        const std::size_t elder = *std::min_element(roots.begin(), roots.end(), [&](std::size_t a, std::size_t b) {
            return rank[born[a]] < rank[born[b]];
        });
        for (std::size_t r : roots) {
            if (r == elder) continue;
            const double birth = f[born[r]];
            if (birth > f[v]) {
                dg.points.push_back({birth, f[v], rooted.to_original(where[born[r]]),
                                     rooted.to_original(where[v]), false});
            }
            parent[r] = elder;
        }
        parent[v] = elder;
    }

    const std::size_t top = order.front();
    dg.points.push_back({f[top], 0.0, rooted.to_original(where[top]), base, true});

    std::stable_sort(dg.points.begin(), dg.points.end(), [](const PersistencePoint& a, const PersistencePoint& b) {
        return a.birth != b.birth ? a.birth > b.birth : a.death > b.death;
    });
    return dg;
}

std::string to_csv(const PersistenceDiagram& dg) {
    std::string out;
    for (const PersistencePoint& p : dg.points) {
        out += format_double(p.birth);
        out += ',';
        out += format_double(p.death);
        out += '\n';
    }
    return out;
}

} // namespace pdd
