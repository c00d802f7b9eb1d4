#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tvq {

// Permutation of the four local vertices {0,1,2,3} of a tetrahedron.
// images[k] is the image of local vertex k.
class Perm4 {
  public:
    constexpr Perm4() : images_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d) : images_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                                          static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {
        int seen = 0;
        for (auto v : images_) {
            if (v > 3 || (seen & (1 << v)))
                throw std::invalid_argument("Perm4: images are not a permutation of {0,1,2,3}");
            seen |= 1 << v;
        }
    }

    constexpr int operator[](int k) const { return images_[static_cast<std::size_t>(k)]; }

    // (this * other)(k) = this(other(k))
    constexpr Perm4 operator*(const Perm4 &other) const {
        return Perm4((*this)[other[0]], (*this)[other[1]], (*this)[other[2]], (*this)[other[3]]);
    }

    constexpr Perm4 inverse() const {
        std::array<int, 4> inv{};
        for (int k = 0; k < 4; ++k)
            inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(k)])] = k;
        return Perm4(inv[0], inv[1], inv[2], inv[3]);
    }

    constexpr bool is_identity() const { return images_[0] == 0 && images_[1] == 1 && images_[2] == 2; }

    // Index in the lexicographic ordering of all 24 permutations.
    constexpr int index() const {
        int idx = 0;
        for (int i = 0; i < 4; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < 4; ++j)
                if (images_[static_cast<std::size_t>(j)] < images_[static_cast<std::size_t>(i)])
                    ++smaller;
            idx = idx * (4 - i) + smaller;
        }
        return idx;
    }

    static constexpr Perm4 from_index(int idx) {
        std::array<int, 4> pool{0, 1, 2, 3};
        std::array<int, 4> out{};
        int radix[4] = {6, 2, 1, 1};
        int remaining = 4;
        for (int i = 0; i < 4; ++i) {
            int pick = idx / radix[i];
            idx %= radix[i];
            out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(pick)];
            for (int j = pick; j + 1 < remaining; ++j)
                pool[static_cast<std::size_t>(j)] = pool[static_cast<std::size_t>(j + 1)];
            --remaining;
        }
        return Perm4(out[0], out[1], out[2], out[3]);
    }

    // Four-digit string of images, e.g. "1032".
    std::string str() const {
        std::string s(4, '0');
        for (int k = 0; k < 4; ++k)
            s[static_cast<std::size_t>(k)] = static_cast<char>('0' + images_[static_cast<std::size_t>(k)]);
        return s;
    }

    friend constexpr bool operator==(const Perm4 &, const Perm4 &) = default;
    friend constexpr auto operator<=>(const Perm4 &, const Perm4 &) = default;

  private:
    std::array<std::uint8_t, 4> images_;
};

// Local edges of a tetrahedron are indexed by unordered vertex pairs in the order
// 01, 02, 03, 12, 13, 23. Edge k and edge 5-k are opposite.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int u, int v) {
    if (u > v) {
        int t = u;
        u = v;
        v = t;
    }
    // 01->0 02->1 03->2 12->3 13->4 23->5
    return u == 0 ? v - 1 : (u == 1 ? v + 1 : 5);
}

// The three local edges of face f (the face opposite vertex f).
constexpr std::array<int, 3> face_edges(int f) {
    std::array<int, 3> out{};
    int n = 0;
    for (int k = 0; k < 6; ++k)
        if (kEdgeVertices[static_cast<std::size_t>(k)][0] != f && kEdgeVertices[static_cast<std::size_t>(k)][1] != f)
            out[static_cast<std::size_t>(n++)] = k;
    return out;
}

} // namespace tvq
