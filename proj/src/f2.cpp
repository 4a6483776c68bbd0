#include "twistlab/f2.hpp"

#include <bit>
#include <stdexcept>

namespace twistlab {

bool BitVector::is_zero() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

std::size_t BitVector::popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

BitVector& BitVector::operator^=(const BitVector& o) {
    if (o.n_ != n_) throw std::invalid_argument("BitVector size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

bool BitVector::dot(const BitVector& o) const {
    if (o.n_ != n_) throw std::invalid_argument("BitVector size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
    return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i);
        else if (bits[i] != '0') throw std::invalid_argument("bit string must contain only 0 and 1");
    }
    return v;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
    BitMatrix m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

void BitMatrix::append_row(const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    rows_.push_back(v);
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows()) throw std::invalid_argument("matrix shape mismatch");
    BitMatrix r(rows(), o.cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (rows_[i].get(k)) r.rows_[i] ^= o.rows_[k];
    return r;
}

BitMatrix BitMatrix::operator+(const BitMatrix& o) const {
    if (cols_ != o.cols_ || rows() != o.rows()) throw std::invalid_argument("matrix shape mismatch");
    BitMatrix r = *this;
    for (std::size_t i = 0; i < rows(); ++i) r.rows_[i] ^= o.rows_[i];
    return r;
}

BitVector BitMatrix::apply(const BitVector& v) const {
    BitVector out(rows());
    for (std::size_t i = 0; i < rows(); ++i)
        if (rows_[i].dot(v)) out.set(i);
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) t.set(j, i);
    return t;
}

BitMatrix BitMatrix::pow(unsigned long e) const {
    if (rows() != cols_) throw std::invalid_argument("pow of non-square matrix");
    BitMatrix result = identity(cols_), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

namespace {

// Row-reduces in place; returns pivot column of each pivot row, in order.
std::vector<std::size_t> rref(std::vector<BitVector>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv].get(c)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace

std::size_t BitMatrix::rank() const {
    std::vector<BitVector> work = rows_;
    return rref(work, cols_).size();
}

std::vector<BitVector> BitMatrix::kernel() const {
    std::vector<BitVector> work = rows_;
    const std::vector<std::size_t> pivots = rref(work, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        BitVector v(cols_);
        v.set(f);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (work[i].get(f)) v.set(pivots[i]);
        basis.push_back(v);
    }
    return basis;
}

BitMatrix BitMatrix::direct_sum(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) m.set(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (b.get(i, j)) m.set(a.rows() + i, a.cols() + j);
    return m;
}

std::size_t span_rank(const std::vector<BitVector>& vs) {
    if (vs.empty()) return 0;
    std::vector<BitVector> work = vs;
    return rref(work, vs.front().size()).size();
}

BitVector EchelonBasis::reduce(BitVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i])) v ^= rows_[i];
    return v;
}

bool EchelonBasis::insert(const BitVector& v) {
    BitVector r = reduce(v);
    if (r.is_zero()) return false;
    std::size_t piv = 0;
    while (!r.get(piv)) ++piv;
    for (auto& row : rows_)
        if (row.get(piv)) row ^= r;
    rows_.push_back(r);
    pivots_.push_back(piv);
    originals_.push_back(v);
    return true;
}

bool EchelonBasis::contains(const BitVector& v) const { return reduce(v).is_zero(); }

}  // namespace twistlab
