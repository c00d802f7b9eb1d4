#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "homology.hpp"
#include "skeleton.hpp"

namespace tvq {

struct CensusFilter {
    bool oneVertex = false;
    bool z2HomologySphere = false;
    std::optional<int> betti1; // keep only triangulations with this Z2 first Betti number
};

inline constexpr int kMaxCensusTets = 3;

namespace detail {

// Symmetric adjacency matrices of connected 4-regular multigraphs on n nodes; a loop at
// node i (diagonal entry) uses two faces of tetrahedron i.
inline void face_pairing_graphs(int n, std::vector<std::vector<std::vector<int>>> &out) {
    std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            cells.emplace_back(i, j);
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == cells.size()) {
            for (int d : deg)
                if (d != 4)
                    return;
            // connectivity
            std::vector<char> seen(static_cast<std::size_t>(n), 0);
            std::vector<int> st{0};
            seen[0] = 1;
            while (!st.empty()) {
                int x = st.back();
                st.pop_back();
                for (int y = 0; y < n; ++y)
                    if (!seen[static_cast<std::size_t>(y)] && m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] > 0) {
                        seen[static_cast<std::size_t>(y)] = 1;
                        st.push_back(y);
                    }
            }
            for (char sflag : seen)
                if (!sflag)
                    return;
            out.push_back(m);
            return;
        }
        auto [i, j] = cells[c];
        auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
        int cost = (i == j) ? 2 : 1;
        for (int k = 0;; ++k) {
            if (deg[ui] + (i == j ? 2 * k : k) > 4 || (i != j && deg[uj] + k > 4))
                break;
            m[ui][uj] = m[uj][ui] = k;
            deg[ui] += k * cost;
            if (i != j)
                deg[uj] += k;
            rec(c + 1);
            deg[ui] -= k * cost;
            if (i != j)
                deg[uj] -= k;
            m[ui][uj] = m[uj][ui] = 0;
        }
    };
    rec(0);
}

} // namespace detail

// All closed, valid, connected triangulations with exactly `tets` tetrahedra, up to
// combinatorial isomorphism, in increasing order of canonical gluing code.
inline std::vector<Triangulation> enumerate_census(int tets, const CensusFilter &filter = {}) {
    if (tets < 1)
        throw std::invalid_argument("census: need at least one tetrahedron");
    if (tets > kMaxCensusTets)
        throw std::invalid_argument("census: at most " + std::to_string(kMaxCensusTets) +
                                    " tetrahedra supported (exhaustive enumeration)");
    std::vector<std::vector<std::vector<int>>> graphs;
    detail::face_pairing_graphs(tets, graphs);

    std::map<std::vector<int>, Triangulation> found;
    for (const auto &m : graphs) {
        // Assign faces to multigraph edges in order.
        std::vector<std::array<int, 4>> pairs; // (tetA, faceA, tetB, faceB)
        std::vector<int> nextFace(static_cast<std::size_t>(tets), 0);
        for (int i = 0; i < tets; ++i)
            for (int j = i; j < tets; ++j)
                for (int k = 0; k < m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; ++k) {
                    int fa = nextFace[static_cast<std::size_t>(i)]++;
                    int fb = nextFace[static_cast<std::size_t>(j)]++;
                    pairs.push_back({i, fa, j, fb});
                }
        // For each pair, the six permutations sending face fa to face fb.
        std::vector<std::vector<Perm4>> choices;
        for (const auto &p : pairs) {
            std::vector<Perm4> opts;
            for (int idx = 0; idx < 24; ++idx) {
                Perm4 perm = Perm4::from_index(idx);
                if (perm[p[1]] == p[3])
                    opts.push_back(perm);
            }
            choices.push_back(std::move(opts));
        }
        std::vector<std::size_t> sel(pairs.size(), 0);
        while (true) {
            Triangulation tri(tets);
            for (std::size_t i = 0; i < pairs.size(); ++i)
                tri.glue(pairs[i][0], pairs[i][1], pairs[i][2], choices[i][sel[i]]);
            Skeleton s = build_skeleton(tri);
            if (validate_closed_3manifold(tri, s).valid_closed_manifold()) {
                Triangulation canon = canonical_form(tri);
                auto code = gluing_code(canon);
                found.try_emplace(std::move(code), std::move(canon));
            }
            std::size_t i = 0;
            for (; i < sel.size(); ++i) {
                if (++sel[i] < choices[i].size())
                    break;
                sel[i] = 0;
            }
            if (i == sel.size())
                break;
        }
    }

    std::vector<Triangulation> out;
    for (auto &[code, tri] : found) {
        Skeleton s = build_skeleton(tri);
        if (filter.oneVertex && s.v != 1)
            continue;
        if (filter.z2HomologySphere || filter.betti1) {
            int b1 = betti_z2(s, 1);
            if (filter.z2HomologySphere && b1 != 0)
                continue;
            if (filter.betti1 && b1 != *filter.betti1)
                continue;
        }
        out.push_back(tri);
    }
    return out;
}

} // namespace tvq
