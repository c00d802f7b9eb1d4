#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "perm.hpp"

namespace tvq {

struct Gluing {
    int tet = -1;
    Perm4 perm;

    friend bool operator==(const Gluing &, const Gluing &) = default;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

class InvalidTriangulation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A generalised triangulation: n abstract tetrahedra with (some of) their faces glued in pairs.
// Face f of a tetrahedron is opposite local vertex f; gluing face f of t to t' via perm sends
// local vertex k of t to vertex perm[k] of t', and hence face f to face perm[f].
class Triangulation {
  public:
    Triangulation() = default;
    explicit Triangulation(int n) : faces_(static_cast<std::size_t>(n)) {}

    int size() const { return static_cast<int>(faces_.size()); }

    const std::optional<Gluing> &gluing(int tet, int face) const {
        return faces_.at(static_cast<std::size_t>(tet))[static_cast<std::size_t>(face)];
    }

    // Glues face `face` of `tet` to `other` via `perm` and records the inverse gluing.
    void glue(int tet, int face, int other, Perm4 perm) {
        check_index(tet);
        check_index(other);
        int otherFace = perm[face];
        if (tet == other && otherFace == face)
            throw InvalidTriangulation("face glued to itself");
        slot(tet, face) = Gluing{other, perm};
        slot(other, otherFace) = Gluing{tet, perm.inverse()};
    }

    void unglue(int tet, int face) {
        auto &g = slot(tet, face);
        if (!g)
            return;
        slot(g->tet, g->perm[face]).reset();
        g.reset();
    }

    // Returns an empty string if the gluing table is involutive, else a diagnostic.
    std::string involution_error() const {
        for (int t = 0; t < size(); ++t)
            for (int f = 0; f < 4; ++f) {
                const auto &g = gluing(t, f);
                if (!g)
                    continue;
                if (g->tet < 0 || g->tet >= size())
                    return "tet " + std::to_string(t) + " face " + std::to_string(f) + ": target out of range";
                int back = g->perm[f];
                if (g->tet == t && back == f)
                    return "tet " + std::to_string(t) + " face " + std::to_string(f) + " glued to itself";
                const auto &h = gluing(g->tet, back);
                if (!h || h->tet != t || h->perm != g->perm.inverse())
                    return "tet " + std::to_string(t) + " face " + std::to_string(f) + " maps to tet " +
                           std::to_string(g->tet) + " face " + std::to_string(back) +
                           " but the inverse gluing is missing or different";
            }
        return {};
    }

    int unglued_faces() const {
        int count = 0;
        for (int t = 0; t < size(); ++t)
            for (int f = 0; f < 4; ++f)
                count += gluing(t, f) ? 0 : 1;
        return count;
    }

    bool connected() const {
        if (faces_.empty())
            return true;
        std::vector<char> seen(faces_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f)
                if (const auto &g = gluing(t, f); g && !seen[static_cast<std::size_t>(g->tet)]) {
                    seen[static_cast<std::size_t>(g->tet)] = 1;
                    ++reached;
                    stack.push_back(g->tet);
                }
        }
        return reached == size();
    }

    // Applies tet relabelling tetMap (old -> new) and per-tet vertex relabellings vertexMap[old].
    Triangulation relabelled(const std::vector<int> &tetMap, const std::vector<Perm4> &vertexMap) const {
        Triangulation out(size());
        for (int t = 0; t < size(); ++t)
            for (int f = 0; f < 4; ++f)
                if (const auto &g = gluing(t, f)) {
                    const Perm4 &rho = vertexMap[static_cast<std::size_t>(t)];
                    const Perm4 &rhoOther = vertexMap[static_cast<std::size_t>(g->tet)];
                    out.slot(tetMap[static_cast<std::size_t>(t)], rho[f]) =
                        Gluing{tetMap[static_cast<std::size_t>(g->tet)], rhoOther * g->perm * rho.inverse()};
                }
        return out;
    }

    using Row = std::array<std::optional<Gluing>, 4>;

    // Builds a triangulation from raw per-tetrahedron rows without checking involution.
    static Triangulation from_rows(std::vector<Row> rows) {
        Triangulation tri;
        tri.faces_ = std::move(rows);
        return tri;
    }

    friend bool operator==(const Triangulation &, const Triangulation &) = default;

  private:
    void check_index(int t) const {
        if (t < 0 || t >= size())
            throw InvalidTriangulation("tetrahedron index " + std::to_string(t) + " out of range");
    }
    std::optional<Gluing> &slot(int tet, int face) {
        return faces_.at(static_cast<std::size_t>(tet))[static_cast<std::size_t>(face)];
    }

    std::vector<Row> faces_;
};

// Canonical text form: "tri 1" header, then "tet <i>: <g0> <g1> <g2> <g3>" with each
// gluing written as "-" or "<j>:<p0p1p2p3>".
inline std::string serialise(const Triangulation &tri) {
    std::ostringstream out;
    out << "tri 1\n";
    for (int t = 0; t < tri.size(); ++t) {
        out << "tet " << t << ":";
        for (int f = 0; f < 4; ++f) {
            const auto &g = tri.gluing(t, f);
            if (g)
                out << ' ' << g->tet << ':' << g->perm.str();
            else
                out << " -";
        }
        out << '\n';
    }
    return out.str();
}

inline Triangulation parse_triangulation(std::string_view text) {
    std::vector<std::array<std::optional<Gluing>, 4>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream tokens(line);
        std::vector<std::string> tok;
        for (std::string s; tokens >> s;)
            tok.push_back(s);
        if (!header) {
            if (tok.size() != 2 || tok[0] != "tri" || tok[1] != "1")
                throw ParseError(lineNo, "expected header 'tri 1'");
            header = true;
            continue;
        }
        if (tok.size() != 6 || tok[0] != "tet" || tok[1].size() < 2 || tok[1].back() != ':')
            throw ParseError(lineNo, "expected 'tet <i>: <g0> <g1> <g2> <g3>'");
        int index = -1;
        try {
            std::size_t used = 0;
            index = std::stoi(tok[1].substr(0, tok[1].size() - 1), &used);
            if (used != tok[1].size() - 1)
                throw std::invalid_argument("trailing");
        } catch (const std::exception &) {
            throw ParseError(lineNo, "bad tetrahedron index '" + tok[1] + "'");
        }
        if (index != static_cast<int>(rows.size()))
            throw ParseError(lineNo, "tetrahedra must be listed in order; expected index " +
                                         std::to_string(rows.size()));
        std::array<std::optional<Gluing>, 4> row;
        for (int f = 0; f < 4; ++f) {
            const std::string &g = tok[static_cast<std::size_t>(f + 2)];
            if (g == "-")
                continue;
            auto colon = g.find(':');
            if (colon == std::string::npos || colon == 0 || g.size() - colon - 1 != 4)
                throw ParseError(lineNo, "bad gluing '" + g + "'");
            int target = -1;
            try {
                std::size_t used = 0;
                target = std::stoi(g.substr(0, colon), &used);
                if (used != colon || target < 0)
                    throw std::invalid_argument("bad");
            } catch (const std::exception &) {
                throw ParseError(lineNo, "bad target in gluing '" + g + "'");
            }
            int p[4];
            for (int k = 0; k < 4; ++k) {
                char c = g[colon + 1 + static_cast<std::size_t>(k)];
                if (c < '0' || c > '3')
                    throw ParseError(lineNo, "bad permutation in gluing '" + g + "'");
                p[k] = c - '0';
            }
            try {
                row[static_cast<std::size_t>(f)] = Gluing{target, Perm4(p[0], p[1], p[2], p[3])};
            } catch (const std::invalid_argument &) {
                throw ParseError(lineNo, "permutation in gluing '" + g + "' is not a bijection");
            }
        }
        rows.push_back(row);
    }
    if (!header)
        throw ParseError(lineNo, "missing header 'tri 1'");
    Triangulation tri = Triangulation::from_rows(std::move(rows));
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f)
            if (const auto &g = tri.gluing(t, f); g && (g->tet >= tri.size()))
                throw InvalidTriangulation("tet " + std::to_string(t) + " face " + std::to_string(f) +
                                           ": tetrahedron index " + std::to_string(g->tet) + " out of range");
    if (auto err = tri.involution_error(); !err.empty())
        throw InvalidTriangulation(err);
    return tri;
}

// Lexicographically comparable encoding of a gluing table: per tet and face, target index
// (n for unglued) followed by the permutation index.
inline std::vector<int> gluing_code(const Triangulation &tri) {
    std::vector<int> code;
    code.reserve(static_cast<std::size_t>(tri.size()) * 8);
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto &g = tri.gluing(t, f);
            code.push_back(g ? g->tet : tri.size());
            code.push_back(g ? g->perm.index() : 0);
        }
    return code;
}

// Canonical representative of the isomorphism class of a connected triangulation.
// Every relabelling is generated by breadth-first numbering from a choice of starting
// tetrahedron and starting vertex labelling, with newly reached tetrahedra labelled so that
// the gluing reaching them is the identity; the lexicographically least table wins.
inline Triangulation canonical_form(const Triangulation &tri) {
    const int n = tri.size();
    if (n == 0)
        return tri;
    if (!tri.connected())
        throw InvalidTriangulation("canonical_form requires a connected triangulation");
    std::optional<std::vector<int>> best;
    Triangulation bestTri;
    std::vector<int> tetMap(static_cast<std::size_t>(n));
    std::vector<Perm4> vertexMap(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int start = 0; start < n; ++start)
        for (int p = 0; p < 24; ++p) {
            std::fill(tetMap.begin(), tetMap.end(), -1);
            tetMap[static_cast<std::size_t>(start)] = 0;
            vertexMap[static_cast<std::size_t>(start)] = Perm4::from_index(p);
            order[0] = start;
            int assigned = 1;
            for (int k = 0; k < assigned; ++k) {
                int t = order[static_cast<std::size_t>(k)];
                const Perm4 rho = vertexMap[static_cast<std::size_t>(t)];
                const Perm4 rhoInv = rho.inverse();
                for (int newFace = 0; newFace < 4; ++newFace) {
                    const auto &g = tri.gluing(t, rhoInv[newFace]);
                    if (!g || tetMap[static_cast<std::size_t>(g->tet)] >= 0)
                        continue;
                    tetMap[static_cast<std::size_t>(g->tet)] = assigned;
                    order[static_cast<std::size_t>(assigned)] = g->tet;
                    vertexMap[static_cast<std::size_t>(g->tet)] = rho * g->perm.inverse();
                    ++assigned;
                }
            }
            Triangulation candidate = tri.relabelled(tetMap, vertexMap);
            auto code = gluing_code(candidate);
            if (!best || code < *best) {
                best = std::move(code);
                bestTri = std::move(candidate);
            }
        }
    return bestTri;
}

// Bistellar 2-3 move on the triangle shared by face `face` of `tet` and its neighbour.
// The two tetrahedra are removed and three new ones (appended at the end) are built around
// a new edge joining the two apices.
inline Triangulation pachner_23(const Triangulation &tri, int tet, int face) {
    const auto &shared = tri.gluing(tet, face);
    if (!shared)
        throw InvalidTriangulation("2-3 move: triangle lies in only one tetrahedron");
    const int t0 = tet;
    const int t1 = shared->tet;
    if (t0 == t1)
        throw InvalidTriangulation("2-3 move: both sides of the triangle belong to the same tetrahedron");
    const Perm4 sigma = shared->perm;
    const int apex0 = face;

    std::array<int, 3> u{};
    for (int k = 0, m = 0; k < 4; ++k)
        if (k != apex0)
            u[static_cast<std::size_t>(m++)] = k;

    const int n = tri.size();
    const int newN = n + 1;
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    for (int t = 0, next = 0; t < n; ++t)
        if (t != t0 && t != t1)
            remap[static_cast<std::size_t>(t)] = next++;
    const int base = n - 2;

    // New tet k has local vertices 0 = apex of t0, 1 = apex of t1, 2 = u[k+1], 3 = u[k+2].
    // Outer face 1 of new tet k is face u[k] of t0, outer face 0 is face sigma(u[k]) of t1.
    struct OuterFace {
        int oldTet, oldFace, newTet, newFace;
        Perm4 toOld; // new-local -> old-local
    };
    std::vector<OuterFace> outer;
    for (int k = 0; k < 3; ++k) {
        int a = u[static_cast<std::size_t>(k)];
        int b = u[static_cast<std::size_t>((k + 1) % 3)];
        int c = u[static_cast<std::size_t>((k + 2) % 3)];
        outer.push_back({t0, a, base + k, 1, Perm4(apex0, a, b, c)});
        outer.push_back({t1, sigma[a], base + k, 0, Perm4(sigma[a], sigma[apex0], sigma[b], sigma[c])});
    }
    auto findOuter = [&](int t, int f) -> const OuterFace * {
        for (const auto &o : outer)
            if (o.oldTet == t && o.oldFace == f)
                return &o;
        return nullptr;
    };

    std::vector<Triangulation::Row> rows(static_cast<std::size_t>(newN));
    auto slot = [&](int t, int f) -> std::optional<Gluing> & {
        return rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)];
    };
    for (int t = 0; t < n; ++t) {
        if (t == t0 || t == t1)
            continue;
        for (int f = 0; f < 4; ++f) {
            const auto &g = tri.gluing(t, f);
            if (!g)
                continue;
            if (const OuterFace *o = findOuter(g->tet, g->perm[f]))
                slot(remap[static_cast<std::size_t>(t)], f) = Gluing{o->newTet, o->toOld.inverse() * g->perm};
            else
                slot(remap[static_cast<std::size_t>(t)], f) =
                    Gluing{remap[static_cast<std::size_t>(g->tet)], g->perm};
        }
    }
    for (const auto &o : outer) {
        const auto &g = tri.gluing(o.oldTet, o.oldFace);
        if (!g)
            continue;
        if (const OuterFace *other = findOuter(g->tet, g->perm[o.oldFace]))
            slot(o.newTet, o.newFace) = Gluing{other->newTet, other->toOld.inverse() * g->perm * o.toOld};
        else
            slot(o.newTet, o.newFace) = Gluing{remap[static_cast<std::size_t>(g->tet)], g->perm * o.toOld};
    }
    Triangulation out = Triangulation::from_rows(std::move(rows));
    // Internal faces: face 2 of new tet k meets face 3 of new tet k+1 (they share apex0, apex1, u[k+2]).
    for (int k = 0; k < 3; ++k)
        out.glue(base + k, 2, base + (k + 1) % 3, Perm4(0, 1, 3, 2));
    return out;
}

} // namespace tvq
