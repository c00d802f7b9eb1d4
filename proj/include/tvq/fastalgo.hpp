#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "colourings.hpp"
#include "homology.hpp"

namespace tvq {

// Adm(T, 3) listed through the Z2 cocycles, each with the edges it colours 0.
struct Adm3Certificate {
    std::vector<Colouring> colourings; // doubled colours in {0, 1}; zero colouring first
    std::vector<std::vector<int>> kernels;

    std::size_t size() const { return colourings.size(); }
};

inline Adm3Certificate adm3_certificate(const Skeleton &s) {
    const CocycleSpace space = cocycle_space_1(s);
    const int dim = space.dimension();
    if (dim > 30)
        throw std::length_error("adm3_certificate: cocycle space too large to list");
    Adm3Certificate out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << dim); ++mask) {
        BitVector c(s.e);
        for (int k = 0; k < dim; ++k)
            if (mask >> k & 1u)
                c ^= space.basis[static_cast<std::size_t>(k)];
        Colouring theta{std::vector<int>(static_cast<std::size_t>(s.e), 0)};
        std::vector<int> ker;
        for (int e = 0; e < s.e; ++e) {
            if (c.get(e))
                theta.doubled[static_cast<std::size_t>(e)] = 1;
            else
                ker.push_back(e);
        }
        out.colourings.push_back(std::move(theta));
        out.kernels.push_back(std::move(ker));
    }
    return out;
}

struct Adm4Result {
    std::vector<Colouring> colourings;
    EnumerationStats stats;
    Adm3Certificate adm3;
};

// Adm(T, 4) from Adm(T, 3): every nonzero theta contributes the colourings with 1/2 off
// ker(theta) and 0 or 1 on ker(theta), found by backtracking over ker(theta); the integer
// colourings are the doubled members of Adm(T, 3).
inline Adm4Result adm4_structured(const Skeleton &s) {
    constexpr int r = 4;
    Adm4Result out;
    out.adm3 = adm3_certificate(s);
    auto triangle_ok = [&](const Colouring &c, int f) {
        const auto &edges = s.triangleEdges[static_cast<std::size_t>(f)];
        return admissible_doubled(r, c.doubled[static_cast<std::size_t>(edges[0])],
                                  c.doubled[static_cast<std::size_t>(edges[1])],
                                  c.doubled[static_cast<std::size_t>(edges[2])]);
    };

    for (std::size_t t = 0; t < out.adm3.size(); ++t) {
        const Colouring &theta = out.adm3.colourings[t];
        const auto &ker = out.adm3.kernels[t];
        if (ker.size() == static_cast<std::size_t>(s.e))
            continue; // zero colouring, handled by doubling below
        const int depth = static_cast<int>(ker.size());
        std::vector<int> position(static_cast<std::size_t>(s.e), -1);
        for (int k = 0; k < depth; ++k)
            position[static_cast<std::size_t>(ker[static_cast<std::size_t>(k)])] = k;
        // triangle f is checked once its last kernel edge is decided (-1: no kernel edge)
        std::vector<std::vector<int>> checks(static_cast<std::size_t>(depth) + 1);
        for (int f = 0; f < s.f; ++f) {
            int last = -1;
            for (int e : s.triangleEdges[static_cast<std::size_t>(f)])
                last = std::max(last, position[static_cast<std::size_t>(e)]);
            checks[static_cast<std::size_t>(last + 1)].push_back(f);
        }
        Colouring cur = theta; // 1/2 off the kernel, 0 on it

        auto passes = [&](int level) {
            for (int f : checks[static_cast<std::size_t>(level)])
                if (!triangle_ok(cur, f))
                    return false;
            return true;
        };
        auto descend = [&](auto &&self, int k) -> void {
            if (k == depth) {
                ++out.stats.admissibleCount;
                out.colourings.push_back(cur);
                return;
            }
            const auto e = static_cast<std::size_t>(ker[static_cast<std::size_t>(k)]);
            for (int c : {0, 2}) {
                cur.doubled[e] = c;
                ++out.stats.nodesVisited;
                if (k == depth - 1)
                    ++out.stats.leavesVisited;
                if (passes(k + 1))
                    self(self, k + 1);
            }
            cur.doubled[e] = 0;
        };
        if (depth == 0) {
            ++out.stats.nodesVisited;
            ++out.stats.leavesVisited;
        }
        if (passes(0))
            descend(descend, 0);
    }

    for (const auto &theta : out.adm3.colourings) {
        Colouring doubled = theta;
        for (int &c : doubled.doubled)
            c *= 2;
        ++out.stats.nodesVisited;
        ++out.stats.leavesVisited;
        ++out.stats.admissibleCount;
        out.colourings.push_back(std::move(doubled));
    }
    return out;
}

inline StateSum tv4_structured(const Skeleton &s, const FieldContext &ctx) {
    if (ctx.r() != 4)
        throw std::invalid_argument("tv4_structured: field must have r = 4");
    auto adm = adm4_structured(s);
    WeightCache cache(ctx);
    CycElement sum = ctx.zero();
    for (const auto &c : adm.colourings)
        sum += colouring_weight(s, c, cache);
    return {sum, adm.stats};
}

inline StateSum tv4_structured(const Triangulation &tri, const FieldContext &ctx) {
    Skeleton s = build_skeleton(tri);
    require_closed_manifold(tri, s);
    return tv4_structured(s, ctx);
}

// TV_{3,1}(T) by summing over the cocycle colourings. The value is rational.
inline mpq_class tv3_rational(const Skeleton &s) {
    FieldContext ctx(3, 1);
    WeightCache cache(ctx);
    CycElement sum = ctx.zero();
    for (const auto &c : adm3_certificate(s).colourings)
        sum += colouring_weight(s, c, cache);
    if (!sum.is_rational())
        throw std::logic_error("tv3_rational: TV_{3,1} is not rational");
    return sum.coefficient(0);
}

struct OddFastResult {
    CycElement value;
    mpq_class tv3;            // TV_{3,1}(T)
    CycElement trivialClass;  // TV_{r,1}(T, [0])
    EnumerationStats stats;   // integer-only search
};

// Odd r, q = 1, one-vertex input:
//   TV_{r,1}(T) = TV_{3,1}(T) * TV_{r,1}(T, [0]) / TV_{3,1}(S^3),   TV_{3,1}(S^3) = 1/2.
// On a one-vertex triangulation the trivial class holds exactly the integer colourings.
inline OddFastResult tv_odd_fast(const Skeleton &s, const FieldContext &ctx, int threads = 1) {
    if (ctx.r() % 2 == 0)
        throw std::invalid_argument("tv_odd_fast: r must be odd");
    if (ctx.q() != 1)
        throw std::invalid_argument("tv_odd_fast: only q = 1 is supported");
    if (s.v != 1)
        throw std::invalid_argument("tv_odd_fast: input must be a one-vertex triangulation");
    OddFastResult out{ctx.zero(), tv3_rational(s), ctx.zero(), {}};
    auto part = state_sum(ColouringSearch(s, ctx.r(), {true, std::nullopt}), ctx, threads);
    out.trivialClass = part.value;
    out.stats = part.stats;
    out.value = ctx.from_rational(2 * out.tv3) * out.trivialClass;
    return out;
}

inline OddFastResult tv_odd_fast(const Triangulation &tri, const FieldContext &ctx, int threads = 1) {
    Skeleton s = build_skeleton(tri);
    require_closed_manifold(tri, s);
    return tv_odd_fast(s, ctx, threads);
}

struct BoundReport {
    int r = 0, n = 0, v = 0, betti1 = 0;
    std::uint64_t naive = 0;                       // (r-1)^{n+v}
    std::optional<std::uint64_t> eqLong, eqShort;  // bounds on |Adm(T,4)|
    std::optional<std::uint64_t> homSphereBound;   // floor(r/2)^{n+1}, one-vertex Z2 homology spheres
    std::optional<std::uint64_t> smallR;           // 2^n+1 (r=5) or 3^n+1 (r=6,7), same inputs
    std::uint64_t actual = 0;
    EnumerationStats nodes;

    bool sharp_long() const { return eqLong && *eqLong == actual; }
    bool sharp_short() const { return eqShort && *eqShort == actual; }
    bool sharp_small_r() const { return smallR && *smallR == actual; }

    // actual <= every applicable bound
    bool consistent() const {
        for (auto b : {std::optional<std::uint64_t>(naive), eqLong, eqShort, homSphereBound, smallR})
            if (b && actual > *b)
                return false;
        return true;
    }
};

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int k = 0; k < exp; ++k) {
        if (base && out > UINT64_MAX / base)
            throw std::overflow_error("bound does not fit in 64 bits");
        out *= base;
    }
    return out;
}

} // namespace detail

inline BoundReport bounds(const Skeleton &s, int r) {
    BoundReport b;
    b.r = r;
    b.n = s.n;
    b.v = s.v;
    b.betti1 = betti_z2(s, 1);
    b.naive = detail::checked_pow(static_cast<std::uint64_t>(r - 1), s.n + s.v);
    if (r == 4) {
        auto adm3 = adm3_certificate(s);
        std::uint64_t sum = detail::checked_pow(2, s.v + b.betti1 - 1);
        for (std::size_t t = 0; t < adm3.size(); ++t)
            if (adm3.kernels[t].size() != static_cast<std::size_t>(s.e))
                sum += detail::checked_pow(2, static_cast<int>(adm3.kernels[t].size()));
        b.eqLong = sum;
        b.eqShort = (adm3.size() - 1) * (detail::checked_pow(2, s.n + s.v - 1) + 1) + 1;
    }
    const bool homSphere = s.v == 1 && b.betti1 == 0;
    if (homSphere) {
        b.homSphereBound = detail::checked_pow(static_cast<std::uint64_t>(r / 2), s.n + 1);
        if (r == 5)
            b.smallR = detail::checked_pow(2, s.n) + 1;
        else if (r == 6 || r == 7)
            b.smallR = detail::checked_pow(3, s.n) + 1;
    }
    ColouringSearch search(s, r);
    b.nodes = search.for_each([](const Colouring &) {});
    b.actual = static_cast<std::uint64_t>(b.nodes.admissibleCount);
    return b;
}

inline BoundReport bounds(const Triangulation &tri, int r) {
    Skeleton s = build_skeleton(tri);
    require_closed_manifold(tri, s);
    return bounds(s, r);
}

} // namespace tvq
