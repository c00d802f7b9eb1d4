#pragma once

#include <array>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "colouring.hpp"
#include "colourings.hpp"
#include "cyclotomic.hpp"

namespace tvq {

// Corner counts of the unique normal arc system on a triangle with doubled edge colours
// (p0, p1, p2); entry k counts the arcs cutting off the corner opposite edge k.
using ArcCounts = std::array<int, 3>;

inline ArcCounts normal_arc_counts(int p0, int p1, int p2) {
    const int sum = p0 + p1 + p2;
    if (p0 < 0 || p1 < 0 || p2 < 0 || sum % 2 || p0 > p1 + p2 || p1 > p0 + p2 || p2 > p0 + p1)
        throw std::invalid_argument("normal_arc_counts: triple violates parity or triangle inequalities");
    return {(sum - 2 * p0) / 2, (sum - 2 * p1) / 2, (sum - 2 * p2) / 2};
}

// 2x3 matrix of doubled colours. With local vertices a, b, c, d = 0, 1, 2, 3 the top row holds
// edges (ab, bc, ca) and the bottom row the opposite edges (cd, ad, bd).
struct IntersectionSymbol {
    std::array<std::array<int, 3>, 2> m{};

    static constexpr std::array<int, 3> kTopEdges{0, 3, 1};
    static constexpr std::array<int, 3> kBottomEdges{5, 2, 4};

    static IntersectionSymbol from_colours(const std::array<int, 6> &c) {
        IntersectionSymbol s;
        for (std::size_t k = 0; k < 3; ++k) {
            s.m[0][k] = c[static_cast<std::size_t>(kTopEdges[k])];
            s.m[1][k] = c[static_cast<std::size_t>(kBottomEdges[k])];
        }
        return s;
    }

    std::array<int, 6> colours() const {
        std::array<int, 6> c{};
        for (std::size_t k = 0; k < 3; ++k) {
            c[static_cast<std::size_t>(kTopEdges[k])] = m[0][k];
            c[static_cast<std::size_t>(kBottomEdges[k])] = m[1][k];
        }
        return c;
    }

    // Parity and triangle inequalities on all four faces (no upper bound).
    bool balanced_faces() const {
        auto ok = [](int x, int y, int z) {
            return x >= 0 && y >= 0 && z >= 0 && (x + y + z) % 2 == 0 && x <= y + z && y <= x + z && z <= x + y;
        };
        const auto &x = m[0];
        const auto &y = m[1];
        return ok(x[0], x[1], x[2]) && ok(x[0], y[2], y[1]) && ok(x[1], y[0], y[2]) && ok(x[2], y[0], y[1]);
    }

    std::string str() const {
        return "[[" + std::to_string(m[0][0]) + "," + std::to_string(m[0][1]) + "," + std::to_string(m[0][2]) + "],[" +
               std::to_string(m[1][0]) + "," + std::to_string(m[1][1]) + "," + std::to_string(m[1][2]) + "]]";
    }

    friend bool operator==(const IntersectionSymbol &, const IntersectionSymbol &) = default;
};

inline IntersectionSymbol intersection_symbol(const Skeleton &s, const Colouring &theta, int tet) {
    return IntersectionSymbol::from_colours(tetrahedron_colours(s, theta, tet));
}

inline IntersectionSymbol intersection_symbol(const Triangulation &tri, const Colouring &theta, int tet) {
    return intersection_symbol(build_skeleton(tri), theta, tet);
}

// a, b, c, d vertex-link loops plus p parallel copies of the balanced loop with coprime
// coordinates (i, j); `rotation` is the column carrying i + j. p = 0 uses (i, j) = (0, 0).
struct LoopDecomposition {
    int a = 0, b = 0, c = 0, d = 0;
    int p = 0, i = 0, j = 0;
    int rotation = 0;

    friend bool operator==(const LoopDecomposition &, const LoopDecomposition &) = default;
};

inline std::ostream &operator<<(std::ostream &os, const LoopDecomposition &l) {
    return os << "(a=" << l.a << ",b=" << l.b << ",c=" << l.c << ",d=" << l.d << ",p=" << l.p << ",i=" << l.i
              << ",j=" << l.j << ",rot=" << l.rotation << ")";
}

// Row of the balanced loop: column `rotation` holds i + j, the next two hold i and j.
constexpr std::array<int, 3> balanced_row(int rotation, int i, int j) {
    std::array<int, 3> row{};
    row[static_cast<std::size_t>(rotation)] = i + j;
    row[static_cast<std::size_t>((rotation + 1) % 3)] = i;
    row[static_cast<std::size_t>((rotation + 2) % 3)] = j;
    return row;
}

inline IntersectionSymbol reconstruct(const LoopDecomposition &l) {
    IntersectionSymbol s;
    s.m[0] = {l.a + l.b, l.b + l.c, l.a + l.c};
    s.m[1] = {l.c + l.d, l.a + l.d, l.b + l.d};
    auto row = balanced_row(l.rotation, l.i, l.j);
    for (std::size_t k = 0; k < 3; ++k) {
        s.m[0][k] += l.p * row[k];
        s.m[1][k] += l.p * row[k];
    }
    return s;
}

class DecompositionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Unique loop decomposition of a symbol satisfying parity and the triangle inequalities.
// The row differences fix a-d, b-d, c-d; each choice of sum column then fixes d.
inline LoopDecomposition decompose_symbol(const IntersectionSymbol &s) {
    if (!s.balanced_faces())
        throw DecompositionError("decompose_symbol: symbol is not admissible " + s.str());
    const auto &x = s.m[0];
    const auto &y = s.m[1];
    const int d0 = x[0] - y[0], d1 = x[1] - y[1], d2 = x[2] - y[2];
    if ((d0 + d2) % 2 || (d0 + d1) % 2 || (d1 + d2) % 2)
        throw DecompositionError("decompose_symbol: odd row differences in " + s.str());
    const int ad = (d0 + d2) / 2, bd = (d0 + d1) / 2, cd = (d1 + d2) / 2;
    // top-row vertex contribution minus 2d
    const std::array<int, 3> base{ad + bd, bd + cd, ad + cd};

    std::optional<LoopDecomposition> found;
    for (int k = 0; k < 3; ++k) {
        const auto k1 = static_cast<std::size_t>((k + 1) % 3), k2 = static_cast<std::size_t>((k + 2) % 3);
        const auto k0 = static_cast<std::size_t>(k);
        const int twice = (x[k1] - base[k1]) + (x[k2] - base[k2]) - (x[k0] - base[k0]);
        if (twice % 2)
            continue;
        LoopDecomposition l;
        l.d = twice / 2;
        l.a = l.d + ad;
        l.b = l.d + bd;
        l.c = l.d + cd;
        if (l.a < 0 || l.b < 0 || l.c < 0 || l.d < 0)
            continue;
        std::array<int, 3> residual{};
        bool neg = false;
        for (std::size_t m = 0; m < 3; ++m) {
            residual[m] = x[m] - base[m] - 2 * l.d;
            neg = neg || residual[m] < 0;
        }
        if (neg)
            continue;
        l.p = std::gcd(residual[k1], residual[k2]);
        if (l.p > 0) {
            l.i = residual[k1] / l.p;
            l.j = residual[k2] / l.p;
            l.rotation = k;
        }
        if (reconstruct(l) != s)
            continue;
        if (!found) {
            found = l;
        } else if (found->a != l.a || found->b != l.b || found->c != l.c || found->d != l.d || found->p != l.p ||
                   balanced_row(found->rotation, found->i, found->j) != balanced_row(l.rotation, l.i, l.j)) {
            throw DecompositionError("decompose_symbol: two distinct loop systems for " + s.str());
        }
    }
    if (!found)
        throw DecompositionError("decompose_symbol: no loop decomposition for " + s.str());
    return *found;
}

// Tetrahedron weight in loop coordinates:
//   |t| = (-1)^X sum_{z=0}^{y} (-1)^z [X-z+1]! / ([a-z]![b-z]![c-z]![d-z]![pi+z]![pj+z]![z]!)
// with X = p(i+j) + a + b + c + d and y = min(a, b, c, d).
inline CycElement tet_weight_loop(const FieldContext &ctx, const LoopDecomposition &l) {
    const int pi = l.p * l.i, pj = l.p * l.j;
    const int X = pi + pj + l.a + l.b + l.c + l.d;
    const int y = std::min({l.a, l.b, l.c, l.d});
    CycElement sum = ctx.zero();
    for (int z = 0; z <= y; ++z) {
        const CycElement &top = ctx.bracket_factorial(X - z + 1);
        if (top.is_zero())
            continue;
        CycElement term = top;
        for (int arg : {l.a - z, l.b - z, l.c - z, l.d - z, pi + z, pj + z, z})
            term *= ctx.inverse_bracket_factorial(arg);
        if (z & 1)
            sum -= term;
        else
            sum += term;
    }
    return (X & 1) ? -sum : sum;
}

} // namespace tvq
