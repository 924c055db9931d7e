#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace pdd {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

// Bipartite graph in compressed row form: the neighbours of left vertex u are
// targets[offsets[u] .. offsets[u+1]).
struct BipartiteAdjacency {
    std::size_t left_count = 0;
    std::size_t right_count = 0;
    std::vector<std::size_t> offsets{0};
    std::vector<std::size_t> targets;

    void add(std::size_t right) { targets.push_back(right); }
    void close_row() { offsets.push_back(targets.size()); }
};

/// Maximum-cardinality matching (Hopcroft-Karp). On return `match_left[u]` is
/// the right partner of u or kUnmatched. Returns the matching size.
std::size_t hopcroft_karp(const BipartiteAdjacency& g, std::vector<std::size_t>& match_left);

} // namespace pdd
