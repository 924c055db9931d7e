#pragma once

#include "pdd/metric_graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pdd {

/// A metric graph, plus node coordinates when the file supplied them.
struct EmbeddedGraph {
    MetricGraph graph;
    std::vector<std::vector<double>> coordinates;  // per node; empty when absent

    bool has_coordinates() const noexcept { return !coordinates.empty(); }
};

/// Edge-list text: `#` starts a comment, data lines are `u v length`, and
/// optional `node: id x1 x2 ...` lines give coordinates. Nodes are numbered in
/// order of first appearance. Coordinates must be given for every node or for
/// none, all of the same dimension.
///
/// Throws ParseError, NonPositiveLength, UnknownNode or DisconnectedGraph; the
/// first two carry the line number.
EmbeddedGraph read_graph(std::istream& in);
EmbeddedGraph load_graph(const std::filesystem::path& path);

/// Writes the edge-list format; `coordinates` may be empty.
void write_graph(std::ostream& out, const MetricGraph& g,
                 const std::vector<std::vector<double>>& coordinates = {});
void save_graph(const std::filesystem::path& path, const MetricGraph& g,
                const std::vector<std::vector<double>>& coordinates = {});

/// 1-skeleton of an OFF or OBJ surface mesh, chosen by file extension. Each
/// distinct face-boundary edge becomes one edge weighted by the Euclidean
/// distance between its endpoints.
EmbeddedGraph load_mesh_skeleton(const std::filesystem::path& path);
EmbeddedGraph read_off(std::istream& in);
EmbeddedGraph read_obj(std::istream& in);

/// One point per line, whitespace-separated decimals; `#` comments allowed.
PointCloud read_point_cloud(std::istream& in);
PointCloud load_point_cloud(const std::filesystem::path& path);

/// load_mesh_skeleton for .off/.obj, load_graph otherwise.
EmbeddedGraph load_any_graph(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

} // namespace pdd
