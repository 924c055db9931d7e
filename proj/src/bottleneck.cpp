#include "pdd/bottleneck.hpp"

#include "pdd/error.hpp"
#include "pdd/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double linf(DiagramPoint a, DiagramPoint b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Widens a search radius so rounding in (x - r, x + r) never drops a point
// that passes the exact test afterwards.
double padded(double r, double x) {
    return r + 1e-12 * (std::abs(r) + std::abs(x)) + 1e-300;
}

// Calls fn(i) for a superset of the points q of `to` with linf(p, q) <= radius.
// Uses whichever is shorter: the birth window, or the prefix of points whose
// diagonal distance is at least diag(p) - radius (diagonal distance is
// 1-Lipschitz in L-infinity).
template <class Fn>
void for_each_within(const PreparedDiagram& to, DiagramPoint p, double p_diag, double radius, Fn&& fn) {
    auto pts = to.points();
    const double r = padded(radius, std::abs(p.birth) + p_diag);
    auto first = std::lower_bound(pts.begin(), pts.end(), p.birth - r,
                                  [](const DiagramPoint& q, double x) { return q.birth < x; });
    auto last = std::upper_bound(first, pts.end(), p.birth + r,
                                 [](double x, const DiagramPoint& q) { return x < q.birth; });
    auto desc = to.diagonal_distance_desc();
    const double floor = p_diag - r;
    auto prefix_end = std::upper_bound(desc.begin(), desc.end(), floor, std::greater<>{});
    const auto window = static_cast<std::size_t>(last - first);
    const auto prefix = static_cast<std::size_t>(prefix_end - desc.begin());
    if (prefix < window) {
        auto order = to.by_diagonal_distance();
        for (std::size_t k = 0; k < prefix; ++k) fn(static_cast<std::size_t>(order[k]));
    } else {
        for (auto it = first; it != last; ++it) fn(static_cast<std::size_t>(it - pts.begin()));
    }
}

// Raises `lb` to max over points p of `from` of min(diag(p), min_q linf(p, q)):
// each such point has to be matched to something at least that far away.
double cover_lower_bound(const PreparedDiagram& from, const PreparedDiagram& to, double lb) {
    auto pts = from.points();
    auto diag = from.diagonal_distance();
    auto other = to.points();
    for (std::uint32_t idx : from.by_diagonal_distance()) {
        double best = diag[idx];
        if (best <= lb) break;
        const DiagramPoint p = pts[idx];
        // expand outwards from p's birth so the nearest candidates come first
        std::size_t right = static_cast<std::size_t>(
            std::lower_bound(other.begin(), other.end(), p.birth,
                             [](const DiagramPoint& q, double x) { return q.birth < x; }) -
            other.begin());
        std::size_t left = right;
        while (best > lb) {
            const double gap_left = left > 0 ? p.birth - other[left - 1].birth : kInf;
            const double gap_right = right < other.size() ? other[right].birth - p.birth : kInf;
            if (std::min(gap_left, gap_right) >= best) break;
            const DiagramPoint q = gap_left <= gap_right ? other[--left] : other[right++];
            best = std::min(best, linf(p, q));
        }
        lb = std::max(lb, best);
    }
    return lb;
}

// Can every point of `from` farther than t from the diagonal be matched to a
// distinct point of `to` within distance t?
bool heavy_side_matchable(const PreparedDiagram& from, const PreparedDiagram& to, double t) {
    auto desc = from.diagonal_distance_desc();
    const auto heavy = static_cast<std::size_t>(
        std::lower_bound(desc.begin(), desc.end(), t, std::greater<>{}) - desc.begin());
    if (heavy == 0) return true;
    if (heavy > to.size()) return false;

    auto order = from.by_diagonal_distance();
    auto pts = from.points();
    auto other = to.points();
    BipartiteAdjacency adj;
    adj.left_count = heavy;
    adj.right_count = to.size();
    adj.offsets.reserve(heavy + 1);
    for (std::size_t k = 0; k < heavy; ++k) {
        const DiagramPoint p = pts[order[k]];
        const std::size_t before = adj.targets.size();
        for_each_within(to, p, desc[k], t, [&](std::size_t j) {
            if (linf(p, other[j]) <= t) adj.add(j);
        });
        if (adj.targets.size() == before) return false;
        adj.close_row();
    }
    std::vector<std::size_t> match;
    return hopcroft_karp(adj, match) == heavy;
}

bool feasible_at(const PreparedDiagram& a, const PreparedDiagram& b, double t) {
    // Mendelsohn-Dulmage: matchings covering each side's heavy points combine
    // into one matching covering both.
    return heavy_side_matchable(a, b, t) && heavy_side_matchable(b, a, t);
}

// Critical values in (lo, hi]: diagonal distances, and pair distances d(p, q)
// with d < diag(p) (the reverse case is collected by the swapped call).
void collect_candidates(const PreparedDiagram& from, const PreparedDiagram& to, double lo, double hi,
                        std::vector<double>& out) {
    auto desc = from.diagonal_distance_desc();
    auto order = from.by_diagonal_distance();
    auto pts = from.points();
    auto other = to.points();
    for (std::size_t k = 0; k < desc.size() && desc[k] > lo; ++k) {
        if (desc[k] <= hi) out.push_back(desc[k]);
        const DiagramPoint p = pts[order[k]];
        const double radius = std::min(desc[k], hi);
        for_each_within(to, p, desc[k], radius, [&](std::size_t j) {
            const double d = linf(p, other[j]);
            if (d > lo && d <= hi && d < desc[k]) out.push_back(d);
        });
    }
}

} // namespace

std::pair<AugmentedPointSet, AugmentedPointSet> augment(std::span<const DiagramPoint> d1,
                                                        std::span<const DiagramPoint> d2) {
    AugmentedPointSet left, right;
    left.points.reserve(d1.size() + d2.size());
    right.points.reserve(d1.size() + d2.size());
    for (std::size_t i = 0; i < d1.size(); ++i) left.points.push_back({d1[i], Origin::real, i});
    for (std::size_t j = 0; j < d2.size(); ++j) {
        left.points.push_back({diagonal_projection(d2[j]), Origin::diagonal, j});
    }
    for (std::size_t j = 0; j < d2.size(); ++j) right.points.push_back({d2[j], Origin::real, j});
    for (std::size_t i = 0; i < d1.size(); ++i) {
        right.points.push_back({diagonal_projection(d1[i]), Origin::diagonal, i});
    }
    return {std::move(left), std::move(right)};
}

double pair_metric(const TaggedPoint& a, const TaggedPoint& b) {
    if (a.origin == Origin::diagonal && b.origin == Origin::diagonal) return 0.0;
    return linf(a.point, b.point);
}

std::optional<Matching> feasible_matching(const AugmentedPointSet& left, const AugmentedPointSet& right,
                                          double threshold) {
    if (left.size() != right.size()) throw InvalidArgument("augmented sets differ in size");
    BipartiteAdjacency adj;
    adj.left_count = left.size();
    adj.right_count = right.size();
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
            if (pair_metric(left[i], right[j]) <= threshold) adj.add(j);
        }
        adj.close_row();
    }
    std::vector<std::size_t> match;
    if (hopcroft_karp(adj, match) != left.size()) return std::nullopt;
    Matching m;
    m.pairs.reserve(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        m.pairs.emplace_back(i, match[i]);
        m.cost = std::max(m.cost, pair_metric(left[i], right[match[i]]));
    }
    return m;
}

bool feasible(const AugmentedPointSet& left, const AugmentedPointSet& right, double threshold) {
    return feasible_matching(left, right, threshold).has_value();
}

PreparedDiagram::PreparedDiagram(std::span<const DiagramPoint> points)
    : points_(points.begin(), points.end()) {
    std::sort(points_.begin(), points_.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
        return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
    });
    diag_.reserve(points_.size());
    for (const DiagramPoint& p : points_) diag_.push_back(distance_to_diagonal(p));
    by_diag_.resize(points_.size());
    std::iota(by_diag_.begin(), by_diag_.end(), std::uint32_t{0});
    std::stable_sort(by_diag_.begin(), by_diag_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return diag_[a] > diag_[b]; });
    diag_desc_.reserve(points_.size());
    for (std::uint32_t i : by_diag_) diag_desc_.push_back(diag_[i]);
}

double bottleneck_value(const PreparedDiagram& a, const PreparedDiagram& b, double bound) {
    if (a.empty() && b.empty()) return 0.0;
    const double upper = std::max(a.max_diagonal_distance(), b.max_diagonal_distance());
    if (a.empty() || b.empty()) return upper;

    double lo = cover_lower_bound(a, b, 0.0);
    lo = cover_lower_bound(b, a, lo);
    if (lo >= bound || lo == upper) return lo;
    if (feasible_at(a, b, lo)) return lo;

    // invariant: infeasible at lo, feasible at hi
    double hi = upper;
    if (bound <= upper) {
        const double below = std::nextafter(bound, -kInf);
        if (!feasible_at(a, b, below)) return bound;
        hi = below;
    }
    for (int step = 0; step < 6 && hi - lo > 1e-9 * hi; ++step) {
        const double mid = lo + (hi - lo) / 2.0;
        (feasible_at(a, b, mid) ? hi : lo) = mid;
    }

    std::vector<double> candidates;
    collect_candidates(a, b, lo, hi, candidates);
    collect_candidates(b, a, lo, hi, candidates);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // the answer is the smallest feasible candidate in (lo, hi]
    std::size_t first = 0, last = candidates.size();
    while (first < last) {
        const std::size_t mid = first + (last - first) / 2;
        if (feasible_at(a, b, candidates[mid])) {
            last = mid;
        } else {
            first = mid + 1;
        }
    }
    // an empty or exhausted candidate range means hi itself is the answer
    return first < candidates.size() ? candidates[first] : hi;
}

double bottleneck_value(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2) {
    return bottleneck_value(PreparedDiagram(d1), PreparedDiagram(d2));
}

BottleneckResult bottleneck_distance(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2) {
    BottleneckResult result;
    result.distance = bottleneck_value(d1, d2);
    auto [left, right] = augment(d1, d2);
    auto matching = feasible_matching(left, right, result.distance);
    if (!matching) throw Error("internal: bottleneck threshold admits no perfect matching");
    result.matching = std::move(*matching);
    return result;
}

BottleneckResult bottleneck_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
    const auto c1 = d1.coordinates();
    const auto c2 = d2.coordinates();
    return bottleneck_distance(c1, c2);
}

} // namespace pdd
