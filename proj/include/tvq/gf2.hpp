#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace tvq {

// Dense bit vector over GF(2).
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(int size) : size_(size), words_(static_cast<std::size_t>((size + 63) / 64), 0) {}

    int size() const { return size_; }
    bool get(int i) const { return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u; }
    void set(int i, bool value = true) {
        auto mask = std::uint64_t{1} << (i & 63);
        auto &w = words_[static_cast<std::size_t>(i >> 6)];
        w = value ? (w | mask) : (w & ~mask);
    }
    void flip(int i) { words_[static_cast<std::size_t>(i >> 6)] ^= std::uint64_t{1} << (i & 63); }

    BitVector &operator^=(const BitVector &other) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] ^= other.words_[i];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }

    bool any() const {
        for (auto w : words_)
            if (w)
                return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (auto w : words_)
            c += std::popcount(w);
        return c;
    }
    int first_set() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i])
                return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
        return -1;
    }
    // Parity of the dot product with another vector.
    bool dot(const BitVector &other) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            acc ^= words_[i] & other.words_[i];
        return std::popcount(acc) & 1;
    }

    friend bool operator==(const BitVector &, const BitVector &) = default;
    friend auto operator<=>(const BitVector &, const BitVector &) = default;

  private:
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Row-major GF(2) matrix.
class GF2Matrix {
  public:
    GF2Matrix() = default;
    GF2Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows), BitVector(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int r, int c) const { return data_[static_cast<std::size_t>(r)].get(c); }
    void flip(int r, int c) { data_[static_cast<std::size_t>(r)].flip(c); }
    const BitVector &row(int r) const { return data_[static_cast<std::size_t>(r)]; }

    GF2Matrix transposed() const {
        GF2Matrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (get(r, c))
                    t.flip(c, r);
        return t;
    }

    GF2Matrix operator*(const GF2Matrix &other) const {
        GF2Matrix out(rows_, other.cols_);
        GF2Matrix ot = other.transposed();
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < other.cols_; ++c)
                if (row(r).dot(ot.row(c)))
                    out.flip(r, c);
        return out;
    }

    bool is_zero() const {
        for (const auto &r : data_)
            if (r.any())
                return false;
        return true;
    }

    // Rank by Gaussian elimination; pivot is the first row with a nonzero entry in the column.
    int rank() const {
        std::vector<BitVector> m = data_;
        int rank = 0;
        for (int c = 0; c < cols_ && rank < rows_; ++c) {
            int pivot = -1;
            for (int r = rank; r < rows_; ++r)
                if (m[static_cast<std::size_t>(r)].get(c)) {
                    pivot = r;
                    break;
                }
            if (pivot < 0)
                continue;
            std::swap(m[static_cast<std::size_t>(pivot)], m[static_cast<std::size_t>(rank)]);
            for (int r = 0; r < rows_; ++r)
                if (r != rank && m[static_cast<std::size_t>(r)].get(c))
                    m[static_cast<std::size_t>(r)] ^= m[static_cast<std::size_t>(rank)];
            ++rank;
        }
        return rank;
    }

    // Basis of {x : M x = 0}.
    std::vector<BitVector> nullspace() const {
        std::vector<BitVector> m = data_;
        std::vector<int> pivotCol;
        int rank = 0;
        for (int c = 0; c < cols_ && rank < rows_; ++c) {
            int pivot = -1;
            for (int r = rank; r < rows_; ++r)
                if (m[static_cast<std::size_t>(r)].get(c)) {
                    pivot = r;
                    break;
                }
            if (pivot < 0)
                continue;
            std::swap(m[static_cast<std::size_t>(pivot)], m[static_cast<std::size_t>(rank)]);
            for (int r = 0; r < rows_; ++r)
                if (r != rank && m[static_cast<std::size_t>(r)].get(c))
                    m[static_cast<std::size_t>(r)] ^= m[static_cast<std::size_t>(rank)];
            pivotCol.push_back(c);
            ++rank;
        }
        std::vector<char> isPivot(static_cast<std::size_t>(cols_), 0);
        for (int c : pivotCol)
            isPivot[static_cast<std::size_t>(c)] = 1;
        std::vector<BitVector> basis;
        for (int freeCol = 0; freeCol < cols_; ++freeCol) {
            if (isPivot[static_cast<std::size_t>(freeCol)])
                continue;
            BitVector x(cols_);
            x.set(freeCol);
            for (int r = 0; r < rank; ++r)
                if (m[static_cast<std::size_t>(r)].get(freeCol))
                    x.set(pivotCol[static_cast<std::size_t>(r)]);
            basis.push_back(std::move(x));
        }
        return basis;
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BitVector> data_;
};

// Incrementally maintained row-echelon basis that can express vectors in terms of the
// vectors inserted so far.
class GF2Span {
  public:
    GF2Span() = default;

    int size() const { return static_cast<int>(inserted_); }

    // Inserts v if independent of the current span; returns whether it was inserted.
    bool insert(const BitVector &v) {
        auto [residual, combo] = reduce(v);
        if (!residual.any())
            return false;
        combo.resize_to(inserted_ + 1);
        combo.flip(inserted_);
        pivots_.push_back(residual.first_set());
        rows_.push_back(std::move(residual));
        combos_.push_back(std::move(combo));
        ++inserted_;
        return true;
    }

    // Coefficients of v in the inserted vectors, or nullopt if v is outside the span.
    std::optional<std::vector<int>> coordinates(const BitVector &v) const {
        auto [residual, combo] = reduce(v);
        if (residual.any())
            return std::nullopt;
        std::vector<int> out(inserted_, 0);
        for (std::size_t i = 0; i < inserted_; ++i)
            out[i] = combo.get(i) ? 1 : 0;
        return out;
    }

  private:
    struct Combo {
        std::vector<char> bits;
        void resize_to(std::size_t n) { bits.resize(n, 0); }
        void flip(std::size_t i) { bits[i] ^= 1; }
        bool get(std::size_t i) const { return i < bits.size() && bits[i]; }
        void add(const Combo &o) {
            if (bits.size() < o.bits.size())
                bits.resize(o.bits.size(), 0);
            for (std::size_t i = 0; i < o.bits.size(); ++i)
                bits[i] ^= o.bits[i];
        }
    };

    // Reduces v against the echelon rows; `combo` records which inserted vectors were used.
    std::pair<BitVector, Combo> reduce(const BitVector &v) const {
        BitVector residual = v;
        Combo combo;
        combo.resize_to(inserted_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (residual.get(pivots_[i])) {
                residual ^= rows_[i];
                combo.add(combos_[i]);
            }
        return {residual, combo};
    }

    std::size_t inserted_ = 0;
    std::vector<BitVector> rows_;
    std::vector<int> pivots_;
    std::vector<Combo> combos_;
};

} // namespace tvq
