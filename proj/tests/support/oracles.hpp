#pragma once

// Independent brute-force oracles and random inputs for the tests. Nothing
// here calls into the library's algorithms beyond reading graph structure.

#include "pdd/metric_graph.hpp"
#include "pdd/persistence.hpp"
#include "pdd/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

namespace oracle {

using pdd::DiagramPoint;
using pdd::GraphPoint;
using pdd::MetricGraph;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Connected multigraph: a random spanning tree plus extra edges (parallel
// edges and self-loops allowed). Lengths are multiples of 0.5 in [0.5, 4].
inline MetricGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_edges,
                                bool unit_lengths = false) {
    const std::size_t n = 2 + pdd::uniform_index(rng, max_nodes - 1);
    const std::size_t m = n - 1 + pdd::uniform_index(rng, max_edges - (n - 1) + 1);
    auto length = [&] { return unit_lengths ? 1.0 : 0.5 * static_cast<double>(1 + pdd::uniform_index(rng, 8)); };
    std::vector<pdd::IndexedEdge> edges;
    for (std::size_t v = 1; v < n; ++v) edges.push_back({pdd::uniform_index(rng, v), v, length()});
    while (edges.size() < m) {
        const std::size_t a = pdd::uniform_index(rng, n), b = pdd::uniform_index(rng, n);
        edges.push_back({a, b, length()});
    }
    pdd::shuffle(edges, rng);
    return MetricGraph::from_edges(n, edges);
}

// A node, or a point at a multiple of 0.25 strictly inside an edge.
inline GraphPoint random_point(const MetricGraph& g, std::mt19937_64& rng) {
    if (pdd::uniform_index(rng, 3) == 0) return GraphPoint::at_node(pdd::uniform_index(rng, g.node_count()));
    const std::size_t e = pdd::uniform_index(rng, g.edge_count());
    const auto slots = static_cast<std::size_t>(g.edge(e).length / 0.25);
    if (slots < 2) return GraphPoint::at_node(g.edge(e).u);
    return GraphPoint::on_edge(e, 0.25 * static_cast<double>(1 + pdd::uniform_index(rng, slots - 1)));
}

inline std::vector<DiagramPoint> random_diagram(std::mt19937_64& rng, std::size_t max_points, double scale = 5.0) {
    std::vector<DiagramPoint> out(pdd::uniform_index(rng, max_points + 1));
    for (auto& p : out) {
        const double a = scale * pdd::uniform01(rng), b = scale * pdd::uniform01(rng);
        p = {std::max(a, b), std::min(a, b)};
    }
    return out;
}

// All-pairs node distances.
inline std::vector<std::vector<double>> floyd_warshall(const MetricGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (std::size_t v = 0; v < n; ++v) d[v][v] = 0.0;
    for (const auto& e : g.edges()) {
        d[e.u][e.v] = std::min(d[e.u][e.v], e.length);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.length);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// d_G(p, q) from all-pairs node distances, by cases on where p and q lie.
inline double point_distance(const MetricGraph& g, const std::vector<std::vector<double>>& d, GraphPoint p,
                             GraphPoint q) {
    struct Anchor {
        std::size_t node;
        double cost;
    };
    auto anchors = [&](GraphPoint x) -> std::vector<Anchor> {
        if (x.is_node()) return {{x.node(), 0.0}};
        const auto& e = g.edge(x.edge());
        return {{e.u, x.offset()}, {e.v, e.length - x.offset()}};
    };
    double best = kInf;
    for (auto a : anchors(p))
        for (auto b : anchors(q)) best = std::min(best, a.cost + d[a.node][b.node] + b.cost);
    if (!p.is_node() && !q.is_node() && p.edge() == q.edge()) best = std::min(best, std::abs(p.offset() - q.offset()));
    return best;
}

// d_B by enumerating every partial matching: each point of `a` goes to the
// diagonal or to an unused point of `b`; leftover points of `b` go to the diagonal.
inline double brute_bottleneck(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b) {
    auto to_diag = [](DiagramPoint p) { return (p.birth - p.death) / 2.0; };
    auto linf = [](DiagramPoint p, DiagramPoint q) {
        return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
    };
    std::vector<bool> used(b.size(), false);
    double best = kInf;
    std::function<void(std::size_t, double)> go = [&](std::size_t i, double cost) {
        if (cost >= best) return;
        if (i == a.size()) {
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!used[j]) cost = std::max(cost, to_diag(b[j]));
            best = std::min(best, cost);
            return;
        }
        go(i + 1, std::max(cost, to_diag(a[i])));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            go(i + 1, std::max(cost, linf(a[i], b[j])));
            used[j] = false;
        }
    };
    go(0, 0.0);
    return best;
}

// Persistence of d_G(base, .) computed on a dense subdivision: every edge is
// cut into pieces of length about `resolution`, distances come from Dijkstra
// on the dense graph, and components are tracked level by level.
struct DenseDiagram {
    std::vector<DiagramPoint> points;  // sorted by (birth desc, death desc)
    std::vector<std::size_t> merge_nodes;  // original node ids where a death was recorded
    bool merge_off_node = false;           // a death was recorded away from every original node
};

inline DenseDiagram dense_diagram(const MetricGraph& g, GraphPoint base, double resolution = 1e-3) {
    const std::size_t n0 = g.node_count();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n0);
    auto add_vertex = [&] {
        adj.emplace_back();
        return adj.size() - 1;
    };
    auto link = [&](std::size_t a, std::size_t b, double w) {
        adj[a].push_back({b, w});
        adj[b].push_back({a, w});
    };
    std::size_t source = base.is_node() ? base.node() : 0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(ed.length / resolution)));
        const double piece = ed.length / static_cast<double>(k);
        std::size_t prev = ed.u;
        for (std::size_t i = 1; i <= k; ++i) {
            const std::size_t next = i == k ? ed.v : add_vertex();
            link(prev, next, piece);
            if (!base.is_node() && base.edge() == e && std::abs(static_cast<double>(i) * piece - base.offset()) < piece / 2)
                source = next;
            prev = next;
        }
    }
    const std::size_t n = adj.size();
    std::vector<double> f(n, kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    f[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > f[v]) continue;
        for (auto [w, len] : adj[v]) {
            if (d + len < f[w]) {
                f[w] = d + len;
                pq.push({f[w], w});
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
    std::vector<std::size_t> parent(n), birth_vertex(n);
    std::vector<bool> seen(n, false);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    DenseDiagram out;
    for (std::size_t v : order) {
        seen[v] = true;
        birth_vertex[v] = v;
        for (auto [w, len] : adj[v]) {
            if (!seen[w]) continue;
            std::size_t a = find(v), b = find(w);
            if (a == b) continue;
            if (a == v && birth_vertex[a] == v) {  // v has no component yet: join
                parent[a] = b;
                continue;
            }
            // elder rule: the component with the higher birth survives
            if (f[birth_vertex[a]] < f[birth_vertex[b]]) std::swap(a, b);
            const double born = f[birth_vertex[b]];
            if (born > f[v]) {
                out.points.push_back({born, f[v]});
                if (v < n0) out.merge_nodes.push_back(v);
                else if (v != source) out.merge_off_node = true;
            }
            parent[b] = a;
        }
    }
    out.points.push_back({f[order.front()], 0.0});
    std::sort(out.points.begin(), out.points.end(), [](DiagramPoint a, DiagramPoint b) {
        return a.birth != b.birth ? a.birth > b.birth : a.death > b.death;
    });
    return out;
}

} // namespace oracle
