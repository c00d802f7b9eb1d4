#pragma once

#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "triangulation.hpp"

namespace tvq {

namespace detail {

// Union-find with a parity bit per element relative to its root.
class ParityUnionFind {
  public:
    explicit ParityUnionFind(int n) : parent_(static_cast<std::size_t>(n)), parity_(static_cast<std::size_t>(n), 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    // Returns the root and sets `parity` to the parity of x relative to it.
    int find(int x, int &parity) {
        parity = 0;
        int root = x;
        while (parent_[static_cast<std::size_t>(root)] != root) {
            parity ^= parity_[static_cast<std::size_t>(root)];
            root = parent_[static_cast<std::size_t>(root)];
        }
        // path compression
        int p = parity;
        while (parent_[static_cast<std::size_t>(x)] != x) {
            int next = parent_[static_cast<std::size_t>(x)];
            int px = parity_[static_cast<std::size_t>(x)];
            parent_[static_cast<std::size_t>(x)] = root;
            parity_[static_cast<std::size_t>(x)] = static_cast<char>(p);
            p ^= px;
            x = next;
        }
        return root;
    }
    int find(int x) {
        int p = 0;
        return find(x, p);
    }

    // Unites x and y with relative parity rel. Returns false if this contradicts earlier unions.
    bool unite(int x, int y, int rel) {
        int px = 0, py = 0;
        int rx = find(x, px);
        int ry = find(y, py);
        if (rx == ry)
            return ((px ^ py) == rel);
        if (rx < ry) {
            parent_[static_cast<std::size_t>(ry)] = rx;
            parity_[static_cast<std::size_t>(ry)] = static_cast<char>(px ^ py ^ rel);
        } else {
            parent_[static_cast<std::size_t>(rx)] = ry;
            parity_[static_cast<std::size_t>(rx)] = static_cast<char>(px ^ py ^ rel);
        }
        return true;
    }

  private:
    std::vector<int> parent_;
    std::vector<char> parity_;
};

} // namespace detail

// Vertex, edge and triangle classes of a triangulation.
//
// Edge classes carry an orientation: the representative is some local edge (t, u<v), and
// edgeSign[t][k] is +1 or -1 according to whether local edge k of t, directed from its lower
// to its higher local vertex, agrees with the class orientation.
struct Skeleton {
    int n = 0;
    int v = 0;
    int e = 0;
    int f = 0;

    std::vector<std::array<int, 4>> vertexOf;  // [tet][local vertex] -> vertex class
    std::vector<std::array<int, 6>> edgeOf;    // [tet][local edge] -> edge class
    std::vector<std::array<int, 6>> edgeSign;  // [tet][local edge] -> +1/-1
    std::vector<std::array<int, 4>> triangleOf; // [tet][face] -> triangle class

    std::vector<std::array<int, 2>> edgeEnds;          // edge class -> (tail, head) vertex classes
    std::vector<std::array<int, 2>> triangleRep;       // triangle class -> (tet, face) representative
    std::vector<std::array<int, 3>> triangleEdges;     // triangle class -> its three edge classes
    std::vector<std::array<int, 3>> triangleEdgeSigns; // signs of [w1w2], [w0w2], [w0w1] in its boundary
    std::vector<char> edgeReversed;                    // edge class identified with its own reverse

    int euler_characteristic() const { return v - e + f - n; }
};

inline Skeleton build_skeleton(const Triangulation &tri) {
    const int n = tri.size();
    Skeleton s;
    s.n = n;

    detail::ParityUnionFind verts(4 * n);
    detail::ParityUnionFind edges(6 * n);
    detail::ParityUnionFind tris(4 * n);
    std::vector<char> badEdgeRoot(static_cast<std::size_t>(6 * n), 0);
    std::vector<int> reversedSeeds;

    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto &g = tri.gluing(t, f);
            if (!g)
                continue;
            tris.unite(4 * t + f, 4 * g->tet + g->perm[f], 0);
            for (int k = 0; k < 4; ++k)
                if (k != f)
                    verts.unite(4 * t + k, 4 * g->tet + g->perm[k], 0);
            for (int k : face_edges(f)) {
                int a = kEdgeVertices[static_cast<std::size_t>(k)][0];
                int b = kEdgeVertices[static_cast<std::size_t>(k)][1];
                int ia = g->perm[a];
                int ib = g->perm[b];
                if (!edges.unite(6 * t + k, 6 * g->tet + edge_index(ia, ib), ia > ib ? 1 : 0))
                    reversedSeeds.push_back(6 * t + k);
            }
        }

    auto number = [](detail::ParityUnionFind &uf, int count) {
        std::vector<int> id(static_cast<std::size_t>(count), -1);
        std::vector<int> out(static_cast<std::size_t>(count));
        int next = 0;
        for (int x = 0; x < count; ++x) {
            int r = uf.find(x);
            if (id[static_cast<std::size_t>(r)] < 0)
                id[static_cast<std::size_t>(r)] = next++;
            out[static_cast<std::size_t>(x)] = id[static_cast<std::size_t>(r)];
        }
        return std::pair{out, next};
    };

    auto [vertexIds, vCount] = number(verts, 4 * n);
    auto [edgeIds, eCount] = number(edges, 6 * n);
    auto [triIds, fCount] = number(tris, 4 * n);
    s.v = vCount;
    s.e = eCount;
    s.f = fCount;

    s.vertexOf.resize(static_cast<std::size_t>(n));
    s.edgeOf.resize(static_cast<std::size_t>(n));
    s.edgeSign.resize(static_cast<std::size_t>(n));
    s.triangleOf.resize(static_cast<std::size_t>(n));
    s.edgeEnds.assign(static_cast<std::size_t>(eCount), {-1, -1});
    s.edgeReversed.assign(static_cast<std::size_t>(eCount), 0);
    s.triangleRep.assign(static_cast<std::size_t>(fCount), {-1, -1});
    s.triangleEdges.resize(static_cast<std::size_t>(fCount));
    s.triangleEdgeSigns.resize(static_cast<std::size_t>(fCount));

    for (int seed : reversedSeeds)
        s.edgeReversed[static_cast<std::size_t>(edgeIds[static_cast<std::size_t>(seed)])] = 1;

    for (int t = 0; t < n; ++t) {
        for (int k = 0; k < 4; ++k)
            s.vertexOf[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] =
                vertexIds[static_cast<std::size_t>(4 * t + k)];
        for (int k = 0; k < 6; ++k) {
            int parity = 0;
            edges.find(6 * t + k, parity);
            int id = edgeIds[static_cast<std::size_t>(6 * t + k)];
            s.edgeOf[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = id;
            s.edgeSign[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = parity ? -1 : 1;
            auto &ends = s.edgeEnds[static_cast<std::size_t>(id)];
            if (ends[0] < 0) {
                int a = vertexIds[static_cast<std::size_t>(4 * t + kEdgeVertices[static_cast<std::size_t>(k)][0])];
                int b = vertexIds[static_cast<std::size_t>(4 * t + kEdgeVertices[static_cast<std::size_t>(k)][1])];
                ends = parity ? std::array<int, 2>{b, a} : std::array<int, 2>{a, b};
            }
        }
        for (int f = 0; f < 4; ++f) {
            int id = triIds[static_cast<std::size_t>(4 * t + f)];
            s.triangleOf[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] = id;
            if (s.triangleRep[static_cast<std::size_t>(id)][0] >= 0)
                continue;
            s.triangleRep[static_cast<std::size_t>(id)] = {t, f};
            std::array<int, 3> w{};
            for (int k = 0, m = 0; k < 4; ++k)
                if (k != f)
                    w[static_cast<std::size_t>(m++)] = k;
            // boundary of [w0 w1 w2] = [w1 w2] - [w0 w2] + [w0 w1]
            const std::array<std::array<int, 2>, 3> sides{{{w[1], w[2]}, {w[0], w[2]}, {w[0], w[1]}}};
            const std::array<int, 3> coeff{1, -1, 1};
            for (std::size_t i = 0; i < 3; ++i) {
                int k = edge_index(sides[i][0], sides[i][1]);
                s.triangleEdges[static_cast<std::size_t>(id)][i] = s.edgeOf[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
                s.triangleEdgeSigns[static_cast<std::size_t>(id)][i] =
                    coeff[i] * s.edgeSign[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
            }
        }
    }
    return s;
}

struct ValidityReport {
    bool closed = false;
    bool validEdges = false;
    bool vertexLinksAreSpheres = false;
    std::vector<std::string> messages;

    bool valid_closed_manifold() const { return closed && validEdges && vertexLinksAreSpheres; }
};

// Checks that a triangulation underlies a closed 3-manifold: every face glued, no edge
// identified with itself in reverse, and every vertex link a 2-sphere.
inline ValidityReport validate_closed_3manifold(const Triangulation &tri, const Skeleton &s) {
    ValidityReport report;
    int unglued = tri.unglued_faces();
    report.closed = unglued == 0;
    if (!report.closed)
        report.messages.push_back(std::to_string(unglued) + " unglued face(s)");

    report.validEdges = true;
    for (int e = 0; e < s.e; ++e)
        if (s.edgeReversed[static_cast<std::size_t>(e)]) {
            report.validEdges = false;
            report.messages.push_back("edge " + std::to_string(e) + " is identified with itself in reverse");
        }

    // Vertex link of class V: one triangle per corner, one edge per glued pair of corner sides,
    // one vertex per edge end at V.
    std::vector<int> linkV(static_cast<std::size_t>(s.v), 0), linkE2(static_cast<std::size_t>(s.v), 0),
        linkF(static_cast<std::size_t>(s.v), 0), linkBoundary(static_cast<std::size_t>(s.v), 0);
    for (int e = 0; e < s.e; ++e) {
        const auto &ends = s.edgeEnds[static_cast<std::size_t>(e)];
        if (s.edgeReversed[static_cast<std::size_t>(e)]) {
            ++linkV[static_cast<std::size_t>(ends[0])];
        } else {
            ++linkV[static_cast<std::size_t>(ends[0])];
            ++linkV[static_cast<std::size_t>(ends[1])];
        }
    }
    for (int t = 0; t < s.n; ++t)
        for (int k = 0; k < 4; ++k) {
            int vc = s.vertexOf[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
            ++linkF[static_cast<std::size_t>(vc)];
            for (int f = 0; f < 4; ++f)
                if (f != k) {
                    if (tri.gluing(t, f))
                        ++linkE2[static_cast<std::size_t>(vc)];
                    else
                        ++linkBoundary[static_cast<std::size_t>(vc)];
                }
        }
    report.vertexLinksAreSpheres = true;
    for (int vc = 0; vc < s.v; ++vc) {
        auto i = static_cast<std::size_t>(vc);
        int edgesInLink = linkE2[i] / 2 + linkBoundary[i];
        int chi = linkV[i] - edgesInLink + linkF[i];
        if (linkBoundary[i] != 0 || chi != 2) {
            report.vertexLinksAreSpheres = false;
            report.messages.push_back("vertex " + std::to_string(vc) + " link is not a sphere (Euler characteristic " +
                                      std::to_string(chi) + (linkBoundary[i] ? ", has boundary)" : ")"));
        }
    }
    return report;
}

inline ValidityReport validate_closed_3manifold(const Triangulation &tri) {
    return validate_closed_3manifold(tri, build_skeleton(tri));
}

// 2-3 move on an internal triangle class, addressed through the skeleton.
inline Triangulation pachner_23(const Triangulation &tri, const Skeleton &s, int triangleClass) {
    if (triangleClass < 0 || triangleClass >= s.f)
        throw InvalidTriangulation("2-3 move: triangle class out of range");
    auto [t, f] = s.triangleRep[static_cast<std::size_t>(triangleClass)];
    return pachner_23(tri, t, f);
}

} // namespace tvq
