#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdd/bottleneck.hpp"
#include "pdd/persistence.hpp"
#include "support/oracles.hpp"

using namespace pdd;

namespace {

MetricGraph star() {
    std::vector<NamedEdge> e{{"c", "A", 3}, {"c", "B", 2}, {"c", "C", 1}};
    return MetricGraph::build({"c", "A", "B", "C"}, e);
}

MetricGraph cycle(std::size_t n, double total) {
    std::vector<IndexedEdge> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, total / static_cast<double>(n)});
    return MetricGraph::from_edges(n, e);
}

std::vector<DiagramPoint> coords(const MetricGraph& g, GraphPoint p) { return diagram(g, p).coordinates(); }

} // namespace

TEST_CASE("critical points") {
    std::vector<IndexedEdge> one{{0, 1, 4}};
    auto edge = MetricGraph::from_edges(2, one);
    auto c = critical_points(edge, GraphPoint::at_node(0));
    REQUIRE(c.maxima.size() == 1);
    CHECK(c.maxima[0].where == GraphPoint::at_node(1));
    CHECK(c.maxima[0].value == 4);
    CHECK(c.saddles.empty());

    auto ring = cycle(5, 10);
    auto r = critical_points(ring, GraphPoint::at_node(0));
    REQUIRE(r.maxima.size() == 1);
    CHECK(r.maxima[0].value == 5);
    CHECK(eval_geodesic(ring, GraphPoint::at_node(0), r.maxima[0].where) == doctest::Approx(5));

    auto s = star();
    auto st = critical_points(s, GraphPoint::at_node(*s.find("A")));
    REQUIRE(st.maxima.size() == 2);
    CHECK(st.maxima[0].where == GraphPoint::at_node(*s.find("B")));
    CHECK(st.maxima[0].value == 5);
    CHECK(st.maxima[1].where == GraphPoint::at_node(*s.find("C")));
    CHECK(st.maxima[1].value == 4);
    REQUIRE(st.saddles.size() == 1);
    CHECK(st.saddles[0].node == *s.find("c"));
    CHECK(st.saddles[0].value == 3);
}

TEST_CASE("interior maximum sits where both sides meet") {
    // edge (w1, w2, 4) with d1 = 1 and d2 = 2: offset (2 - 1 + 4) / 2, value (1 + 2 + 4) / 2
    std::vector<IndexedEdge> e{{0, 1, 1}, {0, 2, 2}, {1, 2, 4}};
    auto g = MetricGraph::from_edges(3, e);
    auto c = critical_points(g, GraphPoint::at_node(0));
    REQUIRE(c.maxima.size() == 1);
    CHECK(c.maxima[0].where == GraphPoint::on_edge(2, 2.5));
    CHECK(c.maxima[0].value == 3.5);

    // |d1 - d2| == l: no interior maximum, and the far endpoint is the maximum
    std::vector<IndexedEdge> tight{{0, 1, 1}, {1, 2, 1}, {0, 2, 2}};
    auto t = MetricGraph::from_edges(3, tight);
    auto ct = critical_points(t, GraphPoint::at_node(0));
    REQUIRE(ct.maxima.size() == 1);
    CHECK(ct.maxima[0].where == GraphPoint::at_node(2));
}

TEST_CASE("diagram") {
    std::vector<IndexedEdge> one{{0, 1, 4}};
    auto edge = MetricGraph::from_edges(2, one);
    CHECK(coords(edge, GraphPoint::at_node(0)) == std::vector<DiagramPoint>{{4, 0}});

    auto ring = cycle(5, 10);
    CHECK(coords(ring, GraphPoint::at_node(2)) == std::vector<DiagramPoint>{{5, 0}});
    CHECK(coords(ring, GraphPoint::on_edge(1, 0.5)) == std::vector<DiagramPoint>{{5, 0}});

    auto s = star();
    auto dg = diagram(s, GraphPoint::at_node(*s.find("A")));
    CHECK(dg.coordinates() == std::vector<DiagramPoint>{{5, 0}, {4, 3}});
    CHECK(dg.points[0].essential);
    CHECK(dg.points[0].death_at == GraphPoint::at_node(*s.find("A")));
    CHECK(dg.points[1].birth_at == GraphPoint::at_node(*s.find("C")));
    CHECK(dg.points[1].death_at == GraphPoint::at_node(*s.find("c")));
    CHECK(to_csv(dg) == "5,0\n4,3\n");

    // basepoint on the leg to A: the B and C branches merge at c, the A branch at the basepoint
    auto mid = diagram(s, GraphPoint::on_edge(0, 1));
    CHECK(mid.coordinates() == std::vector<DiagramPoint>{{3, 0}, {2, 1}, {2, 0}});
    CHECK(mid.points[2].death_at == GraphPoint::on_edge(0, 1));
}

TEST_CASE("elder rule on equal births keeps the first birth vertex") {
    // two leaves at the same height: the survivor is the smaller augmented id
    std::vector<NamedEdge> e{{"r", "x", 1}, {"x", "p", 2}, {"x", "q", 2}};
    auto g = MetricGraph::build({"r", "x", "p", "q"}, e);
    auto dg = diagram(g, GraphPoint::at_node(0));
    REQUIRE(dg.size() == 2);
    CHECK(dg.coordinates() == std::vector<DiagramPoint>{{3, 1}, {3, 0}});
    CHECK(dg.points[0].birth_at == GraphPoint::at_node(3));
    CHECK(dg.points[1].birth_at == GraphPoint::at_node(2));
    CHECK(dg.points[1].essential);
}

TEST_CASE("property: matches the dense-subdivision oracle") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = oracle::random_graph(rng, 8, 12);
        auto p = oracle::random_point(g, rng);
        auto mine = coords(g, p);
        auto dense = oracle::dense_diagram(g, p);
        CHECK(bottleneck_value(mine, dense.points) <= 2e-3);
    }
}

TEST_CASE("property: structure of critical points and diagrams") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = oracle::random_graph(rng, 8, 12);
        auto p = oracle::random_point(g, rng);
        auto crit = critical_points(g, p);
        std::vector<int> per_edge(g.edge_count(), 0);
        for (const auto& m : crit.maxima) {
            if (!m.where.is_node()) ++per_edge[m.where.edge()];
        }
        for (int c : per_edge) CHECK(c <= 1);
        for (const auto& s : crit.saddles) CHECK(g.degree(s.node) >= 3);

        auto dg = diagram(g, p);
        CHECK(dg.size() <= g.edge_count());
        int essential = 0;
        for (const auto& pt : dg.points) {
            CHECK(pt.birth >= pt.death);
            CHECK(pt.death >= 0);
            CHECK(pt.birth > pt.death);
            CHECK((pt.death_at.is_node() || pt.death_at == p));
            if (pt.essential) {
                ++essential;
                CHECK(pt.birth == dg.points[0].birth);
                CHECK(pt.death == 0);
            }
        }
        CHECK(essential == 1);

        // f is monotone between consecutive breakpoints on every edge
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const double len = g.edge(e).length;
            std::vector<double> cuts{0.0, len};
            for (const auto& m : crit.maxima) {
                if (!m.where.is_node() && m.where.edge() == e) cuts.insert(cuts.begin() + 1, m.where.offset());
            }
            if (!p.is_node() && p.edge() == e) {
                cuts.push_back(p.offset());
                std::sort(cuts.begin(), cuts.end());
            }
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                double prev = NAN;
                int sign = 0;
                for (int s = 0; s <= 32; ++s) {
                    const double off = cuts[k] + (cuts[k + 1] - cuts[k]) * s / 32.0;
                    const double f = eval_geodesic(g, p, point_on_edge(g, e, off));
                    if (s > 0) {
                        const int step = f > prev + 1e-9 ? 1 : (f < prev - 1e-9 ? -1 : 0);
                        if (sign == 0) sign = step;
                        CHECK((step == 0 || step == sign));
                    }
                    prev = f;
                }
            }
        }
    }
}

TEST_CASE("property: diagrams move at most as far as the basepoint") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = oracle::random_graph(rng, 8, 12);
        auto p = oracle::random_point(g, rng);
        auto q = oracle::random_point(g, rng);
        const double moved = eval_geodesic(g, p, q);
        CHECK(bottleneck_value(coords(g, p), coords(g, q)) <= moved + 1e-9);
    }
}

TEST_CASE("sorted by birth then death, descending") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::random_graph(rng, 8, 12);
        auto c = coords(g, oracle::random_point(g, rng));
        CHECK(std::is_sorted(c.begin(), c.end(), [](DiagramPoint a, DiagramPoint b) {
            return a.birth != b.birth ? a.birth > b.birth : a.death > b.death;
        }));
    }
}
