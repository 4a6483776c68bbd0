#pragma once

// Dense linear algebra over F2 with packed rows.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace twistlab {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i, bool b = true) {
        const std::uint64_t m = std::uint64_t(1) << (i % 64);
        if (b) words_[i / 64] |= m;
        else words_[i / 64] &= ~m;
    }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t(1) << (i % 64); }
    bool is_zero() const;
    std::size_t popcount() const;

    BitVector& operator^=(const BitVector& o);
    BitVector operator^(const BitVector& o) const {
        BitVector r = *this;
        r ^= o;
        return r;
    }
    bool operator==(const BitVector& o) const { return n_ == o.n_ && words_ == o.words_; }
    /// Parity of the bitwise AND.
    bool dot(const BitVector& o) const;

    /// "0101..." with bit 0 first.
    std::string to_string() const;
    static BitVector from_string(const std::string& bits);

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool b = true) { rows_[r].set(c, b); }
    const BitVector& row(std::size_t r) const { return rows_[r]; }
    BitVector& row(std::size_t r) { return rows_[r]; }
    void append_row(const BitVector& v);

    BitMatrix operator*(const BitMatrix& o) const;
    BitMatrix operator+(const BitMatrix& o) const;
    bool operator==(const BitMatrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }
    BitVector apply(const BitVector& v) const;
    BitMatrix transpose() const;
    BitMatrix pow(unsigned long e) const;

    std::size_t rank() const;
    /// Basis of {x : M x = 0}, in reduced form. Free columns are taken in
    /// increasing order, pivots chosen at the lowest available row index.
    std::vector<BitVector> kernel() const;

    /// Block diagonal sum.
    static BitMatrix direct_sum(const BitMatrix& a, const BitMatrix& b);

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Rank of a list of vectors of equal length.
std::size_t span_rank(const std::vector<BitVector>& vs);

/// Incrementally maintained echelon basis; tells whether a vector is new.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t n) : n_(n) {}
    /// Returns true if v was independent of the current span (and adds it).
    bool insert(const BitVector& v);
    bool contains(const BitVector& v) const;
    std::size_t dim() const { return rows_.size(); }
    const std::vector<BitVector>& originals() const { return originals_; }

private:
    BitVector reduce(BitVector v) const;
    std::size_t n_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<BitVector> originals_;
};

}  // namespace twistlab
