#include "pdd/io.hpp"

#include "pdd/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace pdd {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(std::move(tok));
    return out;
}

double parse_number(const std::string& tok, std::size_t line) {
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) throw ParseError("not a number: '" + tok + "'", line);
    return value;
}

double parse_finite(const std::string& tok, std::size_t line) {
    const double x = parse_number(tok, line);
    if (!std::isfinite(x)) throw ParseError("non-finite value: '" + tok + "'", line);
    return x;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

// Adds the boundary edges of one face to `edges`, rejecting degenerate faces.
void add_face(const std::vector<std::size_t>& face, std::size_t vertex_count, std::size_t line,
              std::set<std::pair<std::size_t, std::size_t>>& edges) {
    if (face.size() < 3) throw ParseError("face with fewer than 3 vertices", line);
    for (std::size_t v : face) {
        if (v >= vertex_count) throw ParseError("face index out of range", line);
    }
    std::vector<std::size_t> sorted = face;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParseError("face repeats a vertex", line);
    }
    for (std::size_t k = 0; k < face.size(); ++k) {
        const std::size_t a = face[k], b = face[(k + 1) % face.size()];
        edges.emplace(std::min(a, b), std::max(a, b));
    }
}

EmbeddedGraph skeleton(std::vector<std::vector<double>> coords,
                       const std::set<std::pair<std::size_t, std::size_t>>& edge_set) {
    std::vector<IndexedEdge> edges;
    edges.reserve(edge_set.size());
    for (auto [a, b] : edge_set) edges.push_back({a, b, euclidean(coords[a], coords[b])});
    EmbeddedGraph out{MetricGraph::from_edges(coords.size(), edges), {}};
    out.coordinates = std::move(coords);
    return out;
}

std::string lowercase_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

} // namespace

std::string format_double(double x) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

EmbeddedGraph read_graph(std::istream& in) {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<IndexedEdge> edges;
    std::map<std::size_t, std::vector<double>> coords;
    std::size_t dim = 0;

    auto node_of = [&](const std::string& name) {
        auto [it, inserted] = index.emplace(name, names.size());
        if (inserted) names.push_back(name);
        return it->second;
    };

    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        auto tok = tokens_of(raw);
        if (tok.empty()) continue;
        if (tok[0] == "node:") {
            if (tok.size() < 3) throw ParseError("node line needs an id and coordinates", line);
            std::vector<double> x;
            for (std::size_t k = 2; k < tok.size(); ++k) x.push_back(parse_finite(tok[k], line));
            if (dim == 0) dim = x.size();
            if (x.size() != dim) throw ParseError("coordinate dimension changes", line);
            const std::size_t v = node_of(tok[1]);
            if (!coords.emplace(v, std::move(x)).second) {
                throw ParseError("coordinates given twice for node '" + tok[1] + "'", line);
            }
            continue;
        }
        if (tok.size() != 3) throw ParseError("expected 'u v length'", line);
        const double length = parse_number(tok[2], line);
        if (!(length > 0.0) || !std::isfinite(length)) {
            throw NonPositiveLength("edge length must be positive and finite", line);
        }
        const std::size_t u = node_of(tok[0]);
        const std::size_t v = node_of(tok[1]);
        edges.push_back({u, v, length});
    }
    if (names.empty()) throw ParseError("no edges");
    if (!coords.empty() && coords.size() != names.size()) {
        throw ParseError("coordinates must be given for every node or for none");
    }

    EmbeddedGraph out{MetricGraph::from_edges(names.size(), edges, names), {}};
    for (auto& [v, x] : coords) out.coordinates.push_back(std::move(x));
    return out;
}

EmbeddedGraph load_graph(const std::filesystem::path& path) {
    auto in = open(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const MetricGraph& g, const std::vector<std::vector<double>>& coordinates) {
    for (std::size_t v = 0; v < coordinates.size(); ++v) {
        out << "node: " << g.name(v);
        for (double x : coordinates[v]) out << ' ' << format_double(x);
        out << '\n';
    }
    for (const Edge& e : g.edges()) {
        out << g.name(e.u) << ' ' << g.name(e.v) << ' ' << format_double(e.length) << '\n';
    }
}

void save_graph(const std::filesystem::path& path, const MetricGraph& g,
                const std::vector<std::vector<double>>& coordinates) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    write_graph(out, g, coordinates);
}

EmbeddedGraph read_off(std::istream& in) {
    std::string raw;
    std::size_t line = 0;
    // next non-empty record, with the header keyword allowed to share a line with the counts
    auto next = [&]() -> std::vector<std::string> {
        while (std::getline(in, raw)) {
            ++line;
            auto tok = tokens_of(raw);
            if (!tok.empty()) return tok;
        }
        throw ParseError("unexpected end of OFF file", line);
    };

    auto head = next();
    if (head[0] != "OFF") throw ParseError("missing OFF header", line);
    head.erase(head.begin());
    if (head.empty()) head = next();
    if (head.size() < 2) throw ParseError("expected vertex and face counts", line);
    const auto nv = static_cast<std::size_t>(parse_finite(head[0], line));
    const auto nf = static_cast<std::size_t>(parse_finite(head[1], line));

    std::vector<std::vector<double>> coords;
    coords.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        auto tok = next();
        if (tok.size() < 3) throw ParseError("vertex needs 3 coordinates", line);
        coords.push_back({parse_finite(tok[0], line), parse_finite(tok[1], line), parse_finite(tok[2], line)});
    }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t f = 0; f < nf; ++f) {
        auto tok = next();
        const auto k = static_cast<std::size_t>(parse_finite(tok[0], line));
        if (tok.size() < k + 1) throw ParseError("face lists fewer indices than declared", line);
        std::vector<std::size_t> face;
        for (std::size_t i = 1; i <= k; ++i) {
            const double idx = parse_finite(tok[i], line);
            if (idx < 0 || idx != std::floor(idx)) throw ParseError("bad vertex index", line);
            face.push_back(static_cast<std::size_t>(idx));
        }
        add_face(face, nv, line, edges);
    }
    return skeleton(std::move(coords), edges);
}

EmbeddedGraph read_obj(std::istream& in) {
    std::vector<std::vector<double>> coords;
    std::vector<std::pair<std::vector<long long>, std::size_t>> faces;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        auto tok = tokens_of(raw);
        if (tok.empty()) continue;
        if (tok[0] == "v") {
            if (tok.size() < 4) throw ParseError("vertex needs 3 coordinates", line);
            coords.push_back({parse_finite(tok[1], line), parse_finite(tok[2], line), parse_finite(tok[3], line)});
        } else if (tok[0] == "f") {
            std::vector<long long> face;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                const std::string head = tok[i].substr(0, tok[i].find('/'));
                long long idx = 0;
                auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
                if (ec != std::errc{} || ptr != head.data() + head.size() || idx == 0) {
                    throw ParseError("bad face index '" + tok[i] + "'", line);
                }
                face.push_back(idx);
            }
            faces.emplace_back(std::move(face), line);
        }
    }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [face, line] : faces) {
        std::vector<std::size_t> resolved;
        for (long long idx : face) {
            // OBJ indices are 1-based; negative ones count back from the last vertex
            const long long v = idx > 0 ? idx - 1 : static_cast<long long>(coords.size()) + idx;
            if (v < 0) throw ParseError("face index out of range", line);
            resolved.push_back(static_cast<std::size_t>(v));
        }
        add_face(resolved, coords.size(), line, edges);
    }
    if (coords.empty()) throw ParseError("no vertices");
    return skeleton(std::move(coords), edges);
}

EmbeddedGraph load_mesh_skeleton(const std::filesystem::path& path) {
    const std::string ext = lowercase_extension(path);
    auto in = open(path);
    if (ext == ".off") return read_off(in);
    if (ext == ".obj") return read_obj(in);
    throw ParseError("unknown mesh extension '" + ext + "'");
}

PointCloud read_point_cloud(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        auto tok = tokens_of(raw);
        if (tok.empty()) continue;
        std::vector<double> row;
        for (const auto& t : tok) row.push_back(parse_finite(t, line));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("point dimension changes", line);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no points");
    return PointCloud::from_rows(rows);
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
    auto in = open(path);
    return read_point_cloud(in);
}

EmbeddedGraph load_any_graph(const std::filesystem::path& path) {
    const std::string ext = lowercase_extension(path);
    if (ext == ".off" || ext == ".obj") return load_mesh_skeleton(path);
    return load_graph(path);
}

} // namespace pdd
