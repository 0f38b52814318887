#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace upspec::gf2 {

/// Bit vector over GF(2), packed into 64-bit words (bit i lives at word i/64,
/// bit position i%64).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::int64_t n) : n_(n), w_(words_for(n), 0) {}

    static BitVec from_support(std::int64_t n, const std::vector<std::int64_t>& support) {
        BitVec v(n);
        for (std::int64_t i : support) v.set(i, true);
        return v;
    }

    std::int64_t size() const { return n_; }

    bool get(std::int64_t i) const {
        return (w_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1ULL;
    }

    void set(std::int64_t i, bool b) {
        std::uint64_t m = 1ULL << (i & 63);
        if (b)
            w_[static_cast<std::size_t>(i >> 6)] |= m;
        else
            w_[static_cast<std::size_t>(i >> 6)] &= ~m;
    }

    void flip(std::int64_t i) { w_[static_cast<std::size_t>(i >> 6)] ^= 1ULL << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t j = 0; j < w_.size(); ++j) w_[j] ^= o.w_[j];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::int64_t popcount() const {
        std::int64_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }

    /// Index of the lowest set bit, or -1.
    std::int64_t lowest_set() const {
        for (std::size_t j = 0; j < w_.size(); ++j)
            if (w_[j]) return static_cast<std::int64_t>(j) * 64 + std::countr_zero(w_[j]);
        return -1;
    }

    std::vector<std::int64_t> support() const {
        std::vector<std::int64_t> s;
        for (std::size_t j = 0; j < w_.size(); ++j) {
            std::uint64_t w = w_[j];
            while (w) {
                s.push_back(static_cast<std::int64_t>(j) * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
        return s;
    }

    /// Orders 0-1 strings by their first differing coordinate (the vector
    /// with 0 there is smaller); used for deterministic tie-breaking.
    static int lex_compare(const BitVec& a, const BitVec& b) {
        for (std::size_t j = 0; j < a.w_.size(); ++j) {
            std::uint64_t d = a.w_[j] ^ b.w_[j];
            if (d) {
                int bit = std::countr_zero(d);
                return ((a.w_[j] >> bit) & 1ULL) ? 1 : -1;
            }
        }
        return 0;
    }

    /// Parity of the GF(2) inner product <a, b>.
    static bool dot(const BitVec& a, const BitVec& b) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < a.w_.size(); ++j) acc ^= a.w_[j] & b.w_[j];
        return std::popcount(acc) & 1;
    }

private:
    static std::size_t words_for(std::int64_t n) {
        return static_cast<std::size_t>((n + 63) >> 6);
    }
    std::int64_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Dense GF(2) matrix as a list of packed rows.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::int64_t rows, std::int64_t cols)
        : rows_(rows), cols_(cols), row_(static_cast<std::size_t>(rows), BitVec(cols)) {}

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }
    BitVec& row(std::int64_t i) { return row_[static_cast<std::size_t>(i)]; }
    const BitVec& row(std::int64_t i) const { return row_[static_cast<std::size_t>(i)]; }

    bool get(std::int64_t i, std::int64_t j) const { return row(i).get(j); }
    void set(std::int64_t i, std::int64_t j, bool b) { row(i).set(j, b); }

    /// Matrix-vector product over GF(2); x indexed by columns.
    BitVec mul(const BitVec& x) const {
        if (x.size() != cols_) throw std::invalid_argument("gf2 mul: size mismatch");
        BitVec y(rows_);
        for (std::int64_t i = 0; i < rows_; ++i) y.set(i, BitVec::dot(row(i), x));
        return y;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (std::int64_t i = 0; i < rows_; ++i)
            for (std::int64_t j : row(i).support()) t.set(j, i, true);
        return t;
    }

    /// In-place row echelon reduction of `rows`; returns the pivot columns in
    /// increasing order. Rows are fully reduced (each pivot column appears in
    /// exactly one row).
    static std::vector<std::int64_t> echelonize(std::vector<BitVec>& rows) {
        std::vector<std::int64_t> pivots;
        if (rows.empty()) return pivots;
        std::int64_t cols = rows[0].size();
        std::size_t r = 0;
        for (std::int64_t c = 0; c < cols && r < rows.size(); ++c) {
            std::size_t sel = r;
            while (sel < rows.size() && !rows[sel].get(c)) ++sel;
            if (sel == rows.size()) continue;
            std::swap(rows[r], rows[sel]);
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
            pivots.push_back(c);
            ++r;
        }
        rows.resize(pivots.size());
        return pivots;
    }

    std::int64_t rank() const {
        std::vector<BitVec> rows = row_;
        return static_cast<std::int64_t>(echelonize(rows).size());
    }

    /// Basis of the row space (echelon form rows).
    std::vector<BitVec> row_space_basis() const {
        std::vector<BitVec> rows = row_;
        echelonize(rows);
        return rows;
    }

    /// Basis of {x : M x = 0}, one vector per free column.
    std::vector<BitVec> kernel_basis() const {
        std::vector<BitVec> rows = row_;
        std::vector<std::int64_t> pivots = echelonize(rows);
        std::vector<char> is_pivot(static_cast<std::size_t>(cols_), 0);
        std::vector<std::int64_t> pivot_row(static_cast<std::size_t>(cols_), -1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            is_pivot[static_cast<std::size_t>(pivots[r])] = 1;
            pivot_row[static_cast<std::size_t>(pivots[r])] = static_cast<std::int64_t>(r);
        }
        std::vector<BitVec> basis;
        for (std::int64_t c = 0; c < cols_; ++c) {
            if (is_pivot[static_cast<std::size_t>(c)]) continue;
            BitVec v(cols_);
            v.set(c, true);
            for (std::int64_t p : pivots)
                if (rows[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(p)])].get(c))
                    v.set(p, true);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Any solution of M x = b, or nullopt if inconsistent.
    std::optional<BitVec> solve(const BitVec& b) const {
        if (b.size() != rows_) throw std::invalid_argument("gf2 solve: size mismatch");
        // Eliminate on the augmented matrix [M | b].
        std::vector<BitVec> aug(static_cast<std::size_t>(rows_), BitVec(cols_ + 1));
        for (std::int64_t i = 0; i < rows_; ++i) {
            for (std::int64_t j : row(i).support()) aug[static_cast<std::size_t>(i)].set(j, true);
            if (b.get(i)) aug[static_cast<std::size_t>(i)].set(cols_, true);
        }
        std::vector<std::int64_t> pivots = echelonize(aug);
        BitVec x(cols_);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] == cols_) return std::nullopt;  // row (0 .. 0 | 1)
            x.set(pivots[r], aug[r].get(cols_));
        }
        return x;
    }

private:
    std::int64_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> row_;
};

}  // namespace upspec::gf2
