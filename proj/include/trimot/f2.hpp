#pragma once

#include <cstdint>
#include <vector>

namespace trimot {

// Bit-packed matrix over F2, row-major, 64 columns per word.
class F2Matrix {
  public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = data_[r * words_ + c / 64];
        std::uint64_t m = std::uint64_t(1) << (c % 64);
        if (v) w |= m; else w &= ~m;
    }
    void flip(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= std::uint64_t(1) << (c % 64); }

    void xor_rows(std::size_t dst, std::size_t src) {
        std::uint64_t* d = &data_[dst * words_];
        const std::uint64_t* s = &data_[src * words_];
        for (std::size_t k = 0; k < words_; ++k) d[k] ^= s[k];
    }
    void xor_row_from(std::size_t dst, const F2Matrix& src, std::size_t s) {
        std::uint64_t* d = &data_[dst * words_];
        const std::uint64_t* r = &src.data_[s * src.words_];
        for (std::size_t k = 0; k < words_; ++k) d[k] ^= r[k];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t k = 0; k < words_; ++k)
            std::swap(data_[a * words_ + k], data_[b * words_ + k]);
    }
    bool row_zero(std::size_t r) const {
        for (std::size_t k = 0; k < words_; ++k)
            if (data_[r * words_ + k]) return false;
        return true;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
};

// Row-reduce in place; returns pivot columns (one per pivot row, in order).
inline std::vector<std::size_t> f2_row_reduce(F2Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && !m.get(p, col)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(row, p);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != row && m.get(r, col)) m.xor_rows(r, row);
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t f2_rank(F2Matrix m) { return f2_row_reduce(m).size(); }

// Rows of the result span ker(m) (as row vectors x with m x^T = 0).
inline F2Matrix f2_kernel_basis(F2Matrix m) {
    auto pivots = f2_row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    F2Matrix k(free_cols.size(), m.cols());
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        k.set(i, free_cols[i], true);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (m.get(r, free_cols[i])) k.set(i, pivots[r], true);
    }
    return k;
}

}  // namespace trimot
