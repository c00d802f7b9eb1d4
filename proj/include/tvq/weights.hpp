#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "colouring.hpp"
#include "cyclotomic.hpp"
#include "perm.hpp"

namespace tvq {

// Weights of the sl2 state sum. All colours are passed doubled (2 * theta).

// (-1)^{2i} [2i + 1]
inline CycElement edge_weight(const FieldContext &ctx, int doubled) {
    if (doubled < 0 || doubled > ctx.r() - 2)
        throw std::invalid_argument("edge_weight: colour out of range");
    CycElement w = ctx.quantum_integer(doubled + 1);
    return (doubled & 1) ? -w : w;
}

// (-1)^{i+j+k} [i+j-k]! [i+k-j]! [j+k-i]! / [i+j+k+1]!
inline CycElement triangle_weight(const FieldContext &ctx, int a, int b, int c) {
    if (!admissible_doubled(ctx.r(), a, b, c))
        throw std::invalid_argument("triangle_weight: triple is not admissible");
    int half = (a + b + c) / 2;
    CycElement w = ctx.bracket_factorial(half - c) * ctx.bracket_factorial(half - b) * ctx.bracket_factorial(half - a) *
                   ctx.inverse_bracket_factorial(half + 1);
    return (half & 1) ? -w : w;
}

// Tetrahedron with doubled colours i0..i5 on local edges 01, 02, 03, 12, 13, 23: triangles
// (i0,i1,i3), (i0,i2,i4), (i1,i2,i5), (i3,i4,i5); opposite pairs (i0,i5), (i1,i4), (i2,i3).
//   |t| = sum_{z- <= z <= z+} (-1)^z [z+1]! / (tau(z) kappa(z))
inline CycElement tetrahedron_weight(const FieldContext &ctx, const std::array<int, 6> &i) {
    const int r = ctx.r();
    if (!admissible_doubled(r, i[0], i[1], i[3]) || !admissible_doubled(r, i[0], i[2], i[4]) ||
        !admissible_doubled(r, i[1], i[2], i[5]) || !admissible_doubled(r, i[3], i[4], i[5]))
        throw std::invalid_argument("tetrahedron_weight: a face triple is not admissible");
    const std::array<int, 4> tri{(i[0] + i[1] + i[3]) / 2, (i[0] + i[2] + i[4]) / 2, (i[1] + i[2] + i[5]) / 2,
                                 (i[3] + i[4] + i[5]) / 2};
    const std::array<int, 3> quad{(i[0] + i[1] + i[4] + i[5]) / 2, (i[0] + i[2] + i[3] + i[5]) / 2,
                                  (i[1] + i[2] + i[3] + i[4]) / 2};
    const int zMin = *std::max_element(tri.begin(), tri.end());
    const int zMax = *std::min_element(quad.begin(), quad.end());
    CycElement sum = ctx.zero();
    for (int z = zMin; z <= zMax; ++z) {
        const CycElement &top = ctx.bracket_factorial(z + 1);
        if (top.is_zero())
            continue;
        CycElement term = top;
        for (int t : tri)
            term *= ctx.inverse_bracket_factorial(z - t);
        for (int q : quad)
            term *= ctx.inverse_bracket_factorial(q - z);
        if (z & 1)
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

namespace detail {

// Action of the 24 vertex relabellings on the six local edges.
inline const std::array<std::array<int, 6>, 24> &edge_symmetries() {
    static const auto table = [] {
        std::array<std::array<int, 6>, 24> out{};
        for (int p = 0; p < 24; ++p) {
            Perm4 perm = Perm4::from_index(p);
            for (int k = 0; k < 6; ++k)
                out[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] =
                    edge_index(perm[kEdgeVertices[static_cast<std::size_t>(k)][0]],
                               perm[kEdgeVertices[static_cast<std::size_t>(k)][1]]);
        }
        return out;
    }();
    return table;
}

} // namespace detail

// Lexicographically least image of a tetrahedron colouring under the symmetries of the
// tetrahedron; the weight is constant on these orbits.
inline std::array<int, 6> canonical_tetrahedron_colours(const std::array<int, 6> &c) {
    std::array<int, 6> best = c;
    for (const auto &sym : detail::edge_symmetries()) {
        std::array<int, 6> img{};
        for (std::size_t k = 0; k < 6; ++k)
            img[static_cast<std::size_t>(sym[k])] = c[k];
        best = std::min(best, img);
    }
    return best;
}

// Per-(r, q) memo of edge, triangle and tetrahedron weights. Not thread-safe; give each
// worker its own cache.
class WeightCache {
  public:
    explicit WeightCache(const FieldContext &ctx) : ctx_(ctx) {
        for (int c = 0; c <= ctx.r() - 2; ++c)
            edges_.push_back(edge_weight(ctx, c));
    }

    const FieldContext &context() const { return ctx_; }

    const CycElement &edge(int doubled) const { return edges_.at(static_cast<std::size_t>(doubled)); }

    const CycElement &triangle(int a, int b, int c) {
        std::array<int, 3> s{a, b, c};
        std::sort(s.begin(), s.end());
        std::uint64_t key = (static_cast<std::uint64_t>(s[0]) << 40) | (static_cast<std::uint64_t>(s[1]) << 20) |
                            static_cast<std::uint64_t>(s[2]);
        auto it = triangles_.find(key);
        if (it == triangles_.end())
            it = triangles_.emplace(key, triangle_weight(ctx_, s[0], s[1], s[2])).first;
        return it->second;
    }

    const CycElement &tetrahedron(const std::array<int, 6> &colours) {
        std::array<int, 6> canon = canonical_tetrahedron_colours(colours);
        std::uint64_t key = 0;
        for (int c : canon)
            key = (key << 10) | static_cast<std::uint64_t>(c);
        auto it = tets_.find(key);
        if (it == tets_.end())
            it = tets_.emplace(key, tetrahedron_weight(ctx_, canon)).first;
        return it->second;
    }

  private:
    const FieldContext &ctx_;
    std::vector<CycElement> edges_;
    std::unordered_map<std::uint64_t, CycElement> triangles_;
    std::unordered_map<std::uint64_t, CycElement> tets_;
};

} // namespace tvq
