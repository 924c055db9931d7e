#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdd/distortion.hpp"
#include "pdd/error.hpp"
#include "support/oracles.hpp"

using namespace pdd;

using Dg = std::vector<DiagramPoint>;

namespace {

MetricGraph cycle(std::size_t n, double total) {
    std::vector<IndexedEdge> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, total / static_cast<double>(n)});
    return MetricGraph::from_edges(n, e);
}

MetricGraph single_edge(double len) {
    std::vector<IndexedEdge> e{{0, 1, len}};
    return MetricGraph::from_edges(2, e);
}

MetricGraph star() {
    std::vector<NamedEdge> e{{"c", "A", 3}, {"c", "B", 2}, {"c", "C", 1}};
    return MetricGraph::build({"c", "A", "B", "C"}, e);
}

// A set holding the given diagrams directly, for Hausdorff examples.
DiagramSet set_of(const std::vector<Dg>& diagrams) {
    DiagramSet s;
    for (const auto& d : diagrams) {
        PersistenceDiagram pd;
        for (auto p : d) pd.points.push_back({p.birth, p.death, {}, {}, false});
        s.basepoints.push_back(GraphPoint::at_node(s.diagrams.size()));
        s.diagrams.push_back(pd);
        s.prepared.emplace_back(d);
    }
    return s;
}

MetricGraph relabel(const MetricGraph& g, std::mt19937_64& rng) {
    std::vector<NodeId> perm = all_nodes(g);
    shuffle(perm, rng);
    std::vector<IndexedEdge> e;
    for (const auto& ed : g.edges()) e.push_back({perm[ed.v], perm[ed.u], ed.length});
    shuffle(e, rng);
    return MetricGraph::from_edges(g.node_count(), e);
}

} // namespace

TEST_CASE("diagram_set") {
    auto path = single_edge(1);
    auto s = diagram_set(path, all_nodes(path));
    REQUIRE(s.size() == 2);
    CHECK(s.diagrams[0].coordinates() == Dg{{1, 0}});
    CHECK(s.diagrams[1].coordinates() == Dg{{1, 0}});

    auto ring = cycle(10, 10);
    std::vector<NodeId> three{1, 4, 7};
    auto r = diagram_set(ring, three);
    for (const auto& d : r.diagrams) CHECK(d.coordinates() == Dg{{5, 0}});
    CHECK(r.basepoints[1] == GraphPoint::at_node(4));

    auto st = star();
    auto ss = diagram_set(st, all_nodes(st));
    CHECK(ss.diagrams[*st.find("A")].coordinates() == Dg{{5, 0}, {4, 3}});

    std::vector<NodeId> none;
    CHECK_THROWS_AS(diagram_set(st, none), EmptyBasepointSet);
    std::vector<NodeId> twice{1, 1};
    CHECK_THROWS_AS(diagram_set(st, twice), InvalidArgument);
}

TEST_CASE("directed_hausdorff") {
    auto a = set_of({{{5, 0}}, {{3, 0}}});
    auto b = set_of({{{5, 0}}, {{3, 0}}, {{1, 0}}});
    CHECK(directed_hausdorff(a, b).value == 0);

    auto five = set_of({{{5, 0}}});
    auto three = set_of({{{3, 0}}});
    CHECK(directed_hausdorff(five, three).value == 2);

    auto fwd = directed_hausdorff(a, five);
    CHECK(fwd.value == 2);
    CHECK(fwd.from == 1);
    CHECK(fwd.to == 0);
    CHECK(directed_hausdorff(five, a).value == 0);

    CHECK_THROWS_AS(directed_hausdorff(a, DiagramSet{}), EmptyBasepointSet);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = oracle::random_graph(rng, 10, 15);
        auto s = diagram_set(g, all_nodes(g));
        CHECK(directed_hausdorff(s, s).value == 0);
    }
}

TEST_CASE("discrete_pd_distance") {
    auto st = star();
    CHECK(discrete_pd_distance(st, st).value() == 0);
    auto d = discrete_pd_distance(single_edge(2), single_edge(3));
    CHECK(d.lower == 1);
    CHECK(d.upper == 1);
    CHECK(d.mode == IntervalMode::discrete);
    CHECK(discrete_pd_distance(cycle(10, 10), cycle(12, 12)).value() == 1);
    CHECK(discrete_pd_distance(cycle(10, 10), cycle(20, 20)).value() == 5);
}

TEST_CASE("approx_pd_distance") {
    // one edge of length 2 against the same edge split in two
    std::vector<IndexedEdge> halves{{0, 2, 1}, {2, 1, 1}};
    auto split = MetricGraph::from_edges(3, halves);
    auto r = approx_pd_distance(single_edge(2), split, 0.0, 4);
    REQUIRE(r.rounds.size() == 4);
    for (const auto& k : r.rounds) {
        CHECK(k.lower == 0);
        CHECK(k.upper <= k.step / 2);
    }
    CHECK_FALSE(r.budget_exhausted);

    auto c = approx_pd_distance(cycle(10, 10), cycle(12, 12), 0.1, 0);
    CHECK(c.lower <= 1);
    CHECK(c.upper >= 1);
    CHECK(c.width() <= 0.1);
    CHECK_FALSE(c.budget_exhausted);
    CHECK(c.mode == IntervalMode::refined);

    auto tight = approx_pd_distance(cycle(10, 10), cycle(12, 12), 1e-9, 2);
    CHECK(tight.budget_exhausted);
    CHECK(tight.rounds.size() == 2);

    CHECK_THROWS_AS(approx_pd_distance(cycle(10, 10), cycle(12, 12), 0.0, 0), InvalidArgument);
}

TEST_CASE("witnesses lie on the input graphs") {
    auto st = star();
    auto ring = cycle(4, 8);
    auto r = approx_pd_distance(st, ring, 0.0, 3);
    validate_point(st, r.witness_first);
    validate_point(ring, r.witness_second);
    // the reported pair realizes the larger directed value of the last round
    const double d = bottleneck_value(diagram(st, r.witness_first).coordinates(),
                                      diagram(ring, r.witness_second).coordinates());
    CHECK(d == doctest::Approx(std::max(r.forward, r.backward)));
}

TEST_CASE("subsampled_pd_distance") {
    auto a = subdivide(star(), 0.25);
    auto b = subdivide(cycle(6, 9), 0.25);
    auto full = discrete_pd_distance(a, b);
    auto zero = subsampled_pd_distance(a, b, 0.0, 1);
    CHECK(zero.forward == full.forward);
    CHECK(zero.backward == full.backward);
    CHECK(zero.upper == full.upper);
    CHECK(zero.mode == IntervalMode::subsampled);

    const double delta = 0.5;
    auto s1 = subsampled_pd_distance(a, b, delta, 1);
    auto s2 = subsampled_pd_distance(a, b, delta, 2);
    const double v1 = std::max(s1.forward, s1.backward), v2 = std::max(s2.forward, s2.backward);
    CHECK(std::abs(v1 - v2) <= 24 * delta);
    CHECK(s1.lower <= s2.upper);
    CHECK(s2.lower <= s1.upper);
    CHECK(s1.upper == v1 + 12 * delta);
    CHECK(s1.lower == std::max(0.0, v1 - 12 * delta - 0.125));

    auto same = subsampled_pd_distance(a, a, delta, 5);
    CHECK(same.forward == 0);
    CHECK(same.backward == 0);
    CHECK_THROWS_AS(subsampled_pd_distance(a, b, -1, 0), InvalidArgument);
}

TEST_CASE("property: pseudo-metric on random graphs") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        auto g1 = oracle::random_graph(rng, 8, 12);
        auto g2 = oracle::random_graph(rng, 8, 12);
        auto g3 = oracle::random_graph(rng, 8, 12);
        const double d12 = discrete_pd_distance(g1, g2).value();
        CHECK(d12 == discrete_pd_distance(g2, g1).value());
        CHECK(discrete_pd_distance(g1, g3).value() <=
              d12 + discrete_pd_distance(g2, g3).value() + 1e-9);
        CHECK(discrete_pd_distance(g1, relabel(g1, rng)).value() == 0);
    }
}

TEST_CASE("property: refinement rounds stay within half an edge of each other") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        auto g1 = oracle::random_graph(rng, 8, 12);
        auto g2 = oracle::random_graph(rng, 8, 12);
        auto r = approx_pd_distance(g1, g2, 0.0, 4);
        REQUIRE(r.rounds.size() == 4);
        const double top = std::max(g1.max_edge_length(), g2.max_edge_length());
        for (std::size_t i = 0; i < r.rounds.size(); ++i) {
            const auto& k = r.rounds[i];
            CHECK(k.lower <= k.upper);
            CHECK(k.upper - k.lower <= k.step / 2 + 1e-12 * k.upper);  // plus rounding slack
            CHECK(k.step == top / std::pow(2.0, static_cast<double>(i)));
            CHECK(k.max_edge <= k.step);
            // every round's value is within max_edge / 2 of the continuous distance
            for (std::size_t j = 0; j < i; ++j) {
                CHECK(std::abs(k.value - r.rounds[j].value) <= (k.max_edge + r.rounds[j].max_edge) / 2 + 1e-9);
            }
        }

        auto fine = subdivide(g1, 0.5 * (1 + static_cast<double>(trial % 3)));
        auto z = approx_pd_distance(g1, fine, 0.0, 3);
        for (const auto& k : z.rounds) CHECK(k.lower == 0);
    }
}

TEST_CASE("node-only value can fall below the continuous distance") {
    // a 2-node cycle of length 5.5 against a segment of length 2: at nodes the
    // diagrams are {(2.75, 0)} and {(2, 0)}, but the segment's midpoint gives
    // {(1, 0), (1, 0)}, which is 1.375 from every diagram of the cycle
    std::vector<IndexedEdge> loop{{0, 1, 4}, {1, 0, 1.5}};
    auto cyc = MetricGraph::from_edges(2, loop);
    auto seg = single_edge(2);
    CHECK(discrete_pd_distance(cyc, seg).value() == 0.75);
    auto r = approx_pd_distance(cyc, seg, 0.0, 5);
    CHECK(r.rounds.back().lower > r.rounds.front().upper);
    const double mid = bottleneck_value(std::vector<DiagramPoint>{{1, 0}, {1, 0}}, std::vector<DiagramPoint>{{2.75, 0}});
    CHECK(mid == 1.375);
    CHECK(r.upper >= 1.375 - r.rounds.back().max_edge / 2);
}
