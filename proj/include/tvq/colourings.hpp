#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "colouring.hpp"
#include "cyclotomic.hpp"
#include "homology.hpp"
#include "skeleton.hpp"
#include "weights.hpp"

namespace tvq {

// Admissibility of a triangle with half-integer colours given doubled.
constexpr bool admissible_triple(int r, int i, int j, int k) { return admissible_doubled(r, i, j, k); }

struct EnumerationStats {
    long long nodesVisited = 0;    // colour assignments tried, at every depth
    long long leavesVisited = 0;   // complete assignments reached
    long long admissibleCount = 0; // colourings emitted

    EnumerationStats &operator+=(const EnumerationStats &o) {
        nodesVisited += o.nodesVisited;
        leavesVisited += o.leavesVisited;
        admissibleCount += o.admissibleCount;
        return *this;
    }
};

struct EnumerationFilter {
    bool integerOnly = false;
    std::optional<std::vector<int>> classCoords;
};

// Static greedy edge order: repeatedly take the edge that completes the most triangles,
// then the one touching the most partially decided triangles, then the lowest id.
inline std::vector<int> greedy_edge_order(const Skeleton &s) {
    std::vector<int> order;
    std::vector<char> chosen(static_cast<std::size_t>(s.e), 0);
    auto undecided = [&](int f, int extra) {
        int left = 0;
        const auto &edges = s.triangleEdges[static_cast<std::size_t>(f)];
        for (std::size_t k = 0; k < 3; ++k) {
            int e = edges[k];
            bool dup = false;
            for (std::size_t m = 0; m < k; ++m)
                dup = dup || edges[m] == e;
            if (!dup && !chosen[static_cast<std::size_t>(e)] && e != extra)
                ++left;
        }
        return left;
    };
    for (int step = 0; step < s.e; ++step) {
        int best = -1, bestDone = -1, bestTouch = -1;
        for (int e = 0; e < s.e; ++e) {
            if (chosen[static_cast<std::size_t>(e)])
                continue;
            int done = 0, touch = 0;
            for (int f = 0; f < s.f; ++f) {
                const auto &edges = s.triangleEdges[static_cast<std::size_t>(f)];
                if (std::find(edges.begin(), edges.end(), e) == edges.end())
                    continue;
                if (undecided(f, e) == 0)
                    ++done;
                touch += 3 - undecided(f, -1);
            }
            if (done > bestDone || (done == bestDone && touch > bestTouch)) {
                best = e;
                bestDone = done;
                bestTouch = touch;
            }
        }
        chosen[static_cast<std::size_t>(best)] = 1;
        order.push_back(best);
    }
    return order;
}

// Backtracking enumerator of Adm(T, r) over a fixed edge order. Each triangle class is
// tested as soon as its last edge is coloured.
class ColouringSearch {
  public:
    ColouringSearch(const Skeleton &s, int r, EnumerationFilter filter = {})
        : s_(s), r_(r), filter_(std::move(filter)), order_(greedy_edge_order(s)) {
        if (r < 3)
            throw std::invalid_argument("ColouringSearch: r must be at least 3");
        std::vector<int> position(static_cast<std::size_t>(s.e));
        for (int k = 0; k < s.e; ++k)
            position[static_cast<std::size_t>(order_[static_cast<std::size_t>(k)])] = k;
        checks_.assign(static_cast<std::size_t>(s.e), {});
        for (int f = 0; f < s.f; ++f) {
            int last = 0;
            for (int e : s.triangleEdges[static_cast<std::size_t>(f)])
                last = std::max(last, position[static_cast<std::size_t>(e)]);
            checks_[static_cast<std::size_t>(last)].push_back(f);
        }
        if (filter_.classCoords) {
            space_ = cocycle_space_1(s);
            if (static_cast<int>(filter_.classCoords->size()) != space_->betti1())
                throw std::invalid_argument("ColouringSearch: class coordinates must have length beta_1");
        }
    }

    const Skeleton &skeleton() const { return s_; }
    int r() const { return r_; }
    const std::vector<int> &edge_order() const { return order_; }

    // Calls visit(const Colouring &) for every admissible colouring passing the filter, in
    // lexicographic order of the colours along edge_order().
    template <class Visit> EnumerationStats for_each(Visit &&visit) const {
        EnumerationStats stats;
        Colouring theta{std::vector<int>(static_cast<std::size_t>(s_.e), 0)};
        descend(0, theta, stats, visit);
        return stats;
    }

    // Admissible partial colourings of the first `depth` edges in order; nodes spent finding
    // them are added to `stats`.
    std::vector<Colouring> prefixes(int depth, EnumerationStats &stats) const {
        std::vector<Colouring> out;
        Colouring theta{std::vector<int>(static_cast<std::size_t>(s_.e), 0)};
        collect(0, depth, theta, stats, out);
        return out;
    }

    // Continues the search below a prefix of length `depth`.
    template <class Visit>
    EnumerationStats for_each_below(const Colouring &prefix, int depth, Visit &&visit) const {
        EnumerationStats stats;
        Colouring theta = prefix;
        descend(depth, theta, stats, visit);
        return stats;
    }

    // Prefix depth giving roughly `target` independent work units.
    int split_depth(std::size_t target) const {
        int depth = 0;
        std::size_t width = 1;
        const std::size_t colours = static_cast<std::size_t>(filter_.integerOnly ? (r_ - 2) / 2 + 1 : r_ - 1);
        while (depth < s_.e - 1 && width < target) {
            width *= colours;
            ++depth;
        }
        return depth;
    }

  private:
    bool triangles_ok(int depth, const Colouring &theta) const {
        for (int f : checks_[static_cast<std::size_t>(depth)]) {
            const auto &edges = s_.triangleEdges[static_cast<std::size_t>(f)];
            if (!admissible_doubled(r_, theta.doubled[static_cast<std::size_t>(edges[0])],
                                    theta.doubled[static_cast<std::size_t>(edges[1])],
                                    theta.doubled[static_cast<std::size_t>(edges[2])]))
                return false;
        }
        return true;
    }

    bool class_ok(const Colouring &theta) const {
        if (!filter_.classCoords)
            return true;
        return cohomology_class(*space_, reduce_colouring(s_, theta)) == *filter_.classCoords;
    }

    template <class Visit> void descend(int depth, Colouring &theta, EnumerationStats &stats, Visit &visit) const {
        if (depth == s_.e) {
            if (class_ok(theta)) {
                ++stats.admissibleCount;
                visit(static_cast<const Colouring &>(theta));
            }
            return;
        }
        const auto e = static_cast<std::size_t>(order_[static_cast<std::size_t>(depth)]);
        const int step = filter_.integerOnly ? 2 : 1;
        for (int c = 0; c <= r_ - 2; c += step) {
            theta.doubled[e] = c;
            ++stats.nodesVisited;
            if (depth == s_.e - 1)
                ++stats.leavesVisited;
            if (triangles_ok(depth, theta))
                descend(depth + 1, theta, stats, visit);
        }
        theta.doubled[e] = 0;
    }

    void collect(int depth, int target, Colouring &theta, EnumerationStats &stats, std::vector<Colouring> &out) const {
        if (depth == target) {
            out.push_back(theta);
            return;
        }
        const auto e = static_cast<std::size_t>(order_[static_cast<std::size_t>(depth)]);
        const int step = filter_.integerOnly ? 2 : 1;
        for (int c = 0; c <= r_ - 2; c += step) {
            theta.doubled[e] = c;
            ++stats.nodesVisited;
            if (depth == s_.e - 1)
                ++stats.leavesVisited;
            if (triangles_ok(depth, theta))
                collect(depth + 1, target, theta, stats, out);
        }
        theta.doubled[e] = 0;
    }

    const Skeleton &s_;
    int r_;
    EnumerationFilter filter_;
    std::vector<int> order_;
    std::vector<std::vector<int>> checks_;
    std::optional<CocycleSpace> space_;
};

inline std::vector<Colouring> enumerate_admissible(const Skeleton &s, int r, const EnumerationFilter &filter = {},
                                                   EnumerationStats *stats = nullptr) {
    std::vector<Colouring> out;
    auto st = ColouringSearch(s, r, filter).for_each([&](const Colouring &c) { out.push_back(c); });
    if (stats)
        *stats = st;
    return out;
}

inline bool is_admissible(const Skeleton &s, int r, const Colouring &theta) {
    if (static_cast<int>(theta.doubled.size()) != s.e)
        return false;
    for (int c : theta.doubled)
        if (c < 0 || c > r - 2)
            return false;
    for (const auto &edges : s.triangleEdges)
        if (!admissible_doubled(r, theta.doubled[static_cast<std::size_t>(edges[0])],
                                theta.doubled[static_cast<std::size_t>(edges[1])],
                                theta.doubled[static_cast<std::size_t>(edges[2])]))
            return false;
    return true;
}

inline std::array<int, 6> tetrahedron_colours(const Skeleton &s, const Colouring &theta, int tet) {
    std::array<int, 6> out{};
    for (std::size_t k = 0; k < 6; ++k)
        out[k] = theta.doubled[static_cast<std::size_t>(s.edgeOf[static_cast<std::size_t>(tet)][k])];
    return out;
}

// |T|_theta: product of vertex, edge, triangle and tetrahedron weights, each class once.
inline CycElement colouring_weight(const Skeleton &s, const Colouring &theta, WeightCache &cache) {
    const FieldContext &ctx = cache.context();
    if (!is_admissible(s, ctx.r(), theta))
        throw std::invalid_argument("colouring_weight: colouring is not admissible");
    CycElement w = ctx.one();
    for (int v = 0; v < s.v; ++v)
        w *= ctx.vertex_weight();
    for (int e = 0; e < s.e; ++e)
        w *= cache.edge(theta.doubled[static_cast<std::size_t>(e)]);
    for (const auto &edges : s.triangleEdges)
        w *= cache.triangle(theta.doubled[static_cast<std::size_t>(edges[0])],
                            theta.doubled[static_cast<std::size_t>(edges[1])],
                            theta.doubled[static_cast<std::size_t>(edges[2])]);
    for (int t = 0; t < s.n; ++t)
        w *= cache.tetrahedron(tetrahedron_colours(s, theta, t));
    return w;
}

inline CycElement colouring_weight(const Skeleton &s, const FieldContext &ctx, const Colouring &theta) {
    WeightCache cache(ctx);
    return colouring_weight(s, theta, cache);
}

struct StateSum {
    CycElement value;
    EnumerationStats stats;
};

inline void require_closed_manifold(const Triangulation &tri, const Skeleton &s) {
    auto report = validate_closed_3manifold(tri, s);
    if (!report.valid_closed_manifold()) {
        std::string msg = "triangulation is not a valid closed 3-manifold";
        for (const auto &m : report.messages)
            msg += "; " + m;
        throw InvalidTriangulation(msg);
    }
}

// Sum of colouring weights over the search, split over `threads` workers by colour prefix.
inline StateSum state_sum(const ColouringSearch &search, const FieldContext &ctx, int threads = 1) {
    if (search.r() != ctx.r())
        throw std::invalid_argument("state_sum: search and field disagree on r");
    const Skeleton &s = search.skeleton();
    if (threads <= 1 || s.e < 2) {
        WeightCache cache(ctx);
        CycElement sum = ctx.zero();
        auto stats = search.for_each([&](const Colouring &c) { sum += colouring_weight(s, c, cache); });
        return {sum, stats};
    }
    EnumerationStats stats;
    const int depth = search.split_depth(static_cast<std::size_t>(threads) * 8);
    const auto prefixes = search.prefixes(depth, stats);
    std::vector<std::optional<CycElement>> partial(prefixes.size());
    std::vector<EnumerationStats> partialStats(prefixes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        WeightCache cache(ctx);
        for (std::size_t k = next++; k < prefixes.size(); k = next++) {
            CycElement sum = ctx.zero();
            partialStats[k] = search.for_each_below(prefixes[k], depth, [&](const Colouring &c) {
                sum += colouring_weight(s, c, cache);
            });
            partial[k] = std::move(sum);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &th : pool)
        th.join();
    CycElement sum = ctx.zero();
    for (std::size_t k = 0; k < prefixes.size(); ++k) {
        sum += *partial[k];
        stats += partialStats[k];
    }
    return {sum, stats};
}

inline StateSum tv(const Skeleton &s, const FieldContext &ctx, int threads = 1) {
    return state_sum(ColouringSearch(s, ctx.r()), ctx, threads);
}

inline StateSum tv(const Triangulation &tri, const FieldContext &ctx, int threads = 1) {
    Skeleton s = build_skeleton(tri);
    require_closed_manifold(tri, s);
    return tv(s, ctx, threads);
}

inline StateSum tv_at_class(const Skeleton &s, const FieldContext &ctx, const std::vector<int> &classCoords,
                            int threads = 1) {
    return state_sum(ColouringSearch(s, ctx.r(), {false, classCoords}), ctx, threads);
}

inline StateSum tv_at_class(const Triangulation &tri, const FieldContext &ctx, const std::vector<int> &classCoords,
                            int threads = 1) {
    Skeleton s = build_skeleton(tri);
    require_closed_manifold(tri, s);
    return tv_at_class(s, ctx, classCoords, threads);
}

} // namespace tvq
