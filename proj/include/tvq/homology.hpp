#pragma once

#include <algorithm>
#include <gmpxx.h>
#include <stdexcept>
#include <vector>

#include "colouring.hpp"
#include "gf2.hpp"
#include "skeleton.hpp"

namespace tvq {

// Boundary map C_p -> C_{p-1} over GF(2): one column per p-face class, one row per
// (p-1)-face class, entries counted with multiplicity mod 2.
inline GF2Matrix boundary_matrix_z2(const Skeleton &s, int p) {
    switch (p) {
    case 1: {
        GF2Matrix m(s.v, s.e);
        for (int e = 0; e < s.e; ++e) {
            const auto &ends = s.edgeEnds[static_cast<std::size_t>(e)];
            m.flip(ends[0], e);
            m.flip(ends[1], e);
        }
        return m;
    }
    case 2: {
        GF2Matrix m(s.e, s.f);
        for (int f = 0; f < s.f; ++f)
            for (int e : s.triangleEdges[static_cast<std::size_t>(f)])
                m.flip(e, f);
        return m;
    }
    case 3: {
        GF2Matrix m(s.f, s.n);
        for (int t = 0; t < s.n; ++t)
            for (int f : s.triangleOf[static_cast<std::size_t>(t)])
                m.flip(f, t);
        return m;
    }
    default:
        throw std::invalid_argument("boundary_matrix_z2: dimension must be 1, 2 or 3");
    }
}

inline int chain_dimension(const Skeleton &s, int p) {
    switch (p) {
    case 0:
        return s.v;
    case 1:
        return s.e;
    case 2:
        return s.f;
    case 3:
        return s.n;
    default:
        return 0;
    }
}

// dim ker d_p - rank d_{p+1} over GF(2).
inline int betti_z2(const Skeleton &s, int p) {
    if (p < 0 || p > 3)
        throw std::invalid_argument("betti_z2: dimension must be in 0..3");
    int rankOut = (p >= 1) ? boundary_matrix_z2(s, p).rank() : 0;
    int rankIn = (p <= 2) ? boundary_matrix_z2(s, p + 1).rank() : 0;
    return chain_dimension(s, p) - rankOut - rankIn;
}

// A basis of the Z2 1-cocycles, ordered so that the first `coboundaryDim` vectors span the
// coboundaries and the trailing ones represent a basis of H^1.
struct CocycleSpace {
    std::vector<BitVector> basis;
    int coboundaryDim = 0;
    GF2Span span;

    int dimension() const { return static_cast<int>(basis.size()); }
    int betti1() const { return dimension() - coboundaryDim; }
};

inline bool is_cocycle(const Skeleton &s, const BitVector &c) {
    for (const auto &edges : s.triangleEdges) {
        int ones = 0;
        for (int e : edges)
            ones += c.get(e) ? 1 : 0;
        if (ones % 2)
            return false;
    }
    return true;
}

inline CocycleSpace cocycle_space_1(const Skeleton &s) {
    if (betti_z2(s, 0) != 1)
        throw std::invalid_argument("cocycle_space_1: triangulation is not connected");
    CocycleSpace out;
    out.span = GF2Span();
    // Coboundaries of vertices 1..v-1 (the coboundary of vertex 0 is their sum).
    GF2Matrix d1t = boundary_matrix_z2(s, 1);
    for (int vtx = 1; vtx < s.v; ++vtx) {
        const BitVector &row = d1t.row(vtx);
        if (out.span.insert(row))
            out.basis.push_back(row);
    }
    out.coboundaryDim = static_cast<int>(out.basis.size());
    // Cocycles: kernel of the transpose of d2, i.e. of delta^2.
    for (auto &z : boundary_matrix_z2(s, 2).transposed().nullspace())
        if (out.span.insert(z))
            out.basis.push_back(std::move(z));
    return out;
}

// Bit e set iff theta(e) is a half-integer.
inline BitVector reduce_colouring(const Skeleton &s, const Colouring &theta) {
    if (static_cast<int>(theta.doubled.size()) != s.e)
        throw std::invalid_argument("reduce_colouring: colouring has the wrong number of edges");
    for (const auto &edges : s.triangleEdges) {
        int sum = 0;
        for (int e : edges)
            sum += theta.doubled[static_cast<std::size_t>(e)];
        if (sum % 2)
            throw std::invalid_argument("reduce_colouring: colouring fails the parity condition");
    }
    BitVector c(s.e);
    for (int e = 0; e < s.e; ++e)
        if (theta.doubled[static_cast<std::size_t>(e)] & 1)
            c.set(e);
    return c;
}

// Coordinates of the class of cocycle c in H^1 (trailing coefficients in the cocycle basis).
inline std::vector<int> cohomology_class(const CocycleSpace &space, const BitVector &c) {
    auto coords = space.span.coordinates(c);
    if (!coords)
        throw std::invalid_argument("cohomology_class: vector is not a cocycle");
    return std::vector<int>(coords->begin() + space.coboundaryDim, coords->end());
}

inline std::vector<int> cohomology_class(const Skeleton &s, const BitVector &c) {
    if (!is_cocycle(s, c))
        throw std::invalid_argument("cohomology_class: vector is not a cocycle");
    return cohomology_class(cocycle_space_1(s), c);
}

struct IntegralHomology {
    int rank = 0;
    std::vector<mpz_class> torsion; // invariant factors > 1, in divisibility order

    bool is_sphere() const { return rank == 0 && torsion.empty(); }
};

namespace detail {

// Nonzero diagonal of the Smith normal form of an integer matrix (naive pivoting).
inline std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        while (true) {
            // move the smallest nonzero entry of the remaining block to (t, t)
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows)
                return diag;
            std::swap(a[t], a[pr]);
            for (auto &row : a)
                std::swap(row[t], row[pc]);

            bool residue = false;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                    for (std::size_t j = t; j < cols; ++j)
                        a[i][j] -= q * a[t][j];
                    residue = residue || a[i][t] != 0;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                    for (std::size_t i = t; i < rows; ++i)
                        a[i][j] -= q * a[i][t];
                    residue = residue || a[t][j] != 0;
                }
            if (residue)
                continue;
            // the pivot must divide every entry of the remaining block
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k)
                            a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

} // namespace detail

// H_1(T; Z) = ker d1 / im d2. ker d1 is a direct summand of the edge lattice, so the torsion
// is read from the invariant factors of d2 alone.
inline IntegralHomology h1_integral(const Skeleton &s) {
    std::vector<std::vector<mpz_class>> d1(static_cast<std::size_t>(s.v), std::vector<mpz_class>(static_cast<std::size_t>(s.e), 0));
    for (int e = 0; e < s.e; ++e) {
        const auto &ends = s.edgeEnds[static_cast<std::size_t>(e)];
        d1[static_cast<std::size_t>(ends[1])][static_cast<std::size_t>(e)] += 1;
        d1[static_cast<std::size_t>(ends[0])][static_cast<std::size_t>(e)] -= 1;
    }
    std::vector<std::vector<mpz_class>> d2(static_cast<std::size_t>(s.e), std::vector<mpz_class>(static_cast<std::size_t>(s.f), 0));
    for (int f = 0; f < s.f; ++f)
        for (std::size_t i = 0; i < 3; ++i)
            d2[static_cast<std::size_t>(s.triangleEdges[static_cast<std::size_t>(f)][i])][static_cast<std::size_t>(f)] +=
                s.triangleEdgeSigns[static_cast<std::size_t>(f)][i];
    auto rank1 = static_cast<int>(detail::smith_diagonal(d1).size());
    auto diag2 = detail::smith_diagonal(d2);
    IntegralHomology h;
    h.rank = s.e - rank1 - static_cast<int>(diag2.size());
    for (auto &d : diag2)
        if (d != 1)
            h.torsion.push_back(d);
    std::sort(h.torsion.begin(), h.torsion.end());
    return h;
}

} // namespace tvq
