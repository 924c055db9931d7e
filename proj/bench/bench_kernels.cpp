// Serial reference against the OpenMP kernels on two refined random graphs.
#include "pdd/distortion.hpp"
#include "pdd/random.hpp"
#include "pdd/reference.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>

using namespace pdd;

namespace {

MetricGraph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::vector<IndexedEdge> e;
    for (std::size_t v = 1; v < n; ++v) e.push_back({uniform_index(rng, v), v, uniform(rng, 0.5, 4.0)});
    while (e.size() < m) e.push_back({uniform_index(rng, n), uniform_index(rng, n), uniform(rng, 0.5, 4.0)});
    return MetricGraph::from_edges(n, e);
}

template <class F>
double best_of(int repeat, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeat; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diagram_set and directed_hausdorff: serial reference vs OpenMP"};
    std::size_t nodes = 20, edges = 40;
    double step = 0.5;
    int repeat = 3;
    std::uint64_t seed = 1;
    std::vector<int> threads{1, 2, 4, 8};
    app.add_option("--nodes", nodes, "nodes per input graph")->check(CLI::Range(2, 100000));
    app.add_option("--edges", edges, "edges per input graph");
    app.add_option("--step", step, "subdivision step")->check(CLI::PositiveNumber);
    app.add_option("--repeat", repeat, "timed runs, best is reported")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed);
    app.add_option("--threads", threads, "thread counts for the parallel kernels")->delimiter(',');
    CLI11_PARSE(app, argc, argv);
    edges = std::max(edges, nodes - 1);

    std::mt19937_64 rng(seed);
    const auto g1 = subdivide(random_graph(nodes, edges, rng), step);
    const auto g2 = subdivide(random_graph(nodes, edges, rng), step);
    const auto p1 = [&] {
        std::vector<GraphPoint> v;
        for (NodeId i = 0; i < g1.node_count(); ++i) v.push_back(GraphPoint::at_node(i));
        return v;
    }();
    const auto p2 = [&] {
        std::vector<GraphPoint> v;
        for (NodeId i = 0; i < g2.node_count(); ++i) v.push_back(GraphPoint::at_node(i));
        return v;
    }();
    std::printf("# nodes %zu and %zu after subdivision, %d hardware threads\n", g1.node_count(), g2.node_count(),
                omp_get_num_procs());
    std::printf("kernel,impl,threads,seconds,speedup\n");

    DiagramSet s1, s2;
    const double ref_sets = best_of(repeat, [&] {
        s1 = reference::diagram_set(g1, p1);
        s2 = reference::diagram_set(g2, p2);
    });
    std::printf("diagram_set,reference,1,%.6f,1.00\n", ref_sets);
    HausdorffResult expect;
    const double ref_h = best_of(repeat, [&] { expect = reference::directed_hausdorff(s1, s2); });
    std::printf("directed_hausdorff,reference,1,%.6f,1.00\n", ref_h);

    int mismatches = 0;
    for (int t : threads) {
        omp_set_num_threads(t);
        DiagramSet q1, q2;
        const double sets = best_of(repeat, [&] {
            q1 = diagram_set(g1, p1);
            q2 = diagram_set(g2, p2);
        });
        std::printf("diagram_set,openmp,%d,%.6f,%.2f\n", t, sets, ref_sets / sets);
        HausdorffResult got;
        const double h = best_of(repeat, [&] { got = directed_hausdorff(q1, q2); });
        std::printf("directed_hausdorff,openmp,%d,%.6f,%.2f\n", t, h, ref_h / h);
        mismatches += got.value != expect.value || got.from != expect.from || got.to != expect.to;
    }
    if (mismatches) std::fprintf(stderr, "parallel result differs from the reference\n");
    return mismatches ? 1 : 0;
}
