#include "pdd/matching.hpp"

#include <queue>

namespace pdd {

namespace {

class HopcroftKarp {
public:
    explicit HopcroftKarp(const BipartiteAdjacency& g)
        : g_(g), match_left_(g.left_count, kUnmatched), match_right_(g.right_count, kUnmatched),
          layer_(g.left_count), cursor_(g.left_count) {}

    std::size_t run() {
        std::size_t size = 0;
        while (bfs()) {
            for (std::size_t u = 0; u < g_.left_count; ++u) cursor_[u] = g_.offsets[u];
            for (std::size_t u = 0; u < g_.left_count; ++u) {
                if (match_left_[u] == kUnmatched && dfs(u)) ++size;
            }
        }
        return size;
    }

    std::vector<std::size_t>& match_left() { return match_left_; }

private:
    static constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

    bool bfs() {
        std::queue<std::size_t> queue;
        for (std::size_t u = 0; u < g_.left_count; ++u) {
            if (match_left_[u] == kUnmatched) {
                layer_[u] = 0;
                queue.push(u);
            } else {
                layer_[u] = kFar;
            }
        }
        bool found = false;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop();
            for (std::size_t k = g_.offsets[u]; k < g_.offsets[u + 1]; ++k) {
                std::size_t w = match_right_[g_.targets[k]];
                if (w == kUnmatched) {
                    found = true;
                } else if (layer_[w] == kFar) {
                    layer_[w] = layer_[u] + 1;
                    queue.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t u) {
        for (std::size_t& k = cursor_[u]; k < g_.offsets[u + 1]; ++k) {
            std::size_t v = g_.targets[k];
            std::size_t w = match_right_[v];
            if (w == kUnmatched || (layer_[w] == layer_[u] + 1 && dfs(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                ++k;
                return true;
            }
        }
        layer_[u] = kFar;
        return false;
    }

    const BipartiteAdjacency& g_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<std::size_t> layer_;
    std::vector<std::size_t> cursor_;
};

} // namespace

std::size_t hopcroft_karp(const BipartiteAdjacency& g, std::vector<std::size_t>& match_left) {
    HopcroftKarp hk(g);
    std::size_t size = hk.run();
    match_left = std::move(hk.match_left());
    return size;
}

} // namespace pdd
