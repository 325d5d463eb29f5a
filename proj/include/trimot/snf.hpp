#pragma once

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "trimot/group.hpp"

namespace trimot {

using Int = boost::multiprecision::cpp_int;

struct NotAComplex : std::runtime_error {
    NotAComplex() : std::runtime_error("homology_group: d_out * d_in != 0") {}
};

// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        IntMatrix c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a.at(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (b.at(k, j) != 0) c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }
    bool is_zero() const {
        for (const auto& x : data_) if (x != 0) return false;
        return true;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

struct SNFResult {
    std::vector<Int> diagonal;              // d1 | d2 | ..., padded with zeros to min(r,c)
    std::optional<IntMatrix> left, right;   // U m V = diag when requested
};

// Smith normal form by minimal-absolute-value pivoting.
inline SNFResult smith_normal_form(IntMatrix m, bool transforms = false) {
    const std::size_t R = m.rows(), C = m.cols();
    SNFResult out;
    IntMatrix U, V;
    if (transforms) { U = IntMatrix::identity(R); V = IntMatrix::identity(C); }

    auto row_op = [&](std::size_t dst, std::size_t src, const Int& k) {
        for (std::size_t j = 0; j < C; ++j) m.at(dst, j) -= k * m.at(src, j);
        if (transforms)
            for (std::size_t j = 0; j < R; ++j) U.at(dst, j) -= k * U.at(src, j);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Int& k) {
        for (std::size_t i = 0; i < R; ++i) m.at(i, dst) -= k * m.at(i, src);
        if (transforms)
            for (std::size_t i = 0; i < C; ++i) V.at(i, dst) -= k * V.at(i, src);
    };
    auto swap_r = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < C; ++j) std::swap(m.at(a, j), m.at(b, j));
        if (transforms)
            for (std::size_t j = 0; j < R; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto swap_c = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < R; ++i) std::swap(m.at(i, a), m.at(i, b));
        if (transforms)
            for (std::size_t i = 0; i < C; ++i) std::swap(V.at(i, a), V.at(i, b));
    };
    auto negate_row = [&](std::size_t r) {
        for (std::size_t j = 0; j < C; ++j) m.at(r, j) = -m.at(r, j);
        if (transforms)
            for (std::size_t j = 0; j < R; ++j) U.at(r, j) = -U.at(r, j);
    };

    std::size_t t = 0;
    const std::size_t n = std::min(R, C);
    while (t < n) {
        // smallest nonzero |entry| in the trailing block
        std::size_t pr = R, pc = C;
        Int best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (m.at(i, j) == 0) continue;
                Int a = abs(m.at(i, j));
                if (pr == R || a < best) { best = a; pr = i; pc = j; }
            }
        if (pr == R) break;
        swap_r(t, pr);
        swap_c(t, pc);
        bool clean = true;
        for (std::size_t i = t + 1; i < R; ++i) {
            if (m.at(i, t) == 0) continue;
            Int q = m.at(i, t) / m.at(t, t);
            row_op(i, t, q);
            if (m.at(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < C; ++j) {
            if (m.at(t, j) == 0) continue;
            Int q = m.at(t, j) / m.at(t, t);
            col_op(j, t, q);
            if (m.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // remainders left; re-pivot on a smaller entry
        if (m.at(t, t) < 0) negate_row(t);
        ++t;
    }
    // enforce the divisibility chain
    for (std::size_t i = 0; i + 1 < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            if (m.at(j, j) % m.at(i, i) == 0) continue;
            // fold entry j into row/col i and redo from i
            col_op(i, j, Int(-1));
            for (std::size_t k = i; k < n; ++k) {
                // local re-elimination at position k
                std::size_t pr = R, pc = C;
                Int best;
                for (std::size_t r = k; r < R; ++r)
                    for (std::size_t c = k; c < C; ++c) {
                        if (m.at(r, c) == 0) continue;
                        Int a = abs(m.at(r, c));
                        if (pr == R || a < best) { best = a; pr = r; pc = c; }
                    }
                if (pr == R) break;
                swap_r(k, pr);
                swap_c(k, pc);
                bool clean = true;
                for (std::size_t r = k + 1; r < R; ++r)
                    if (m.at(r, k) != 0) { row_op(r, k, m.at(r, k) / m.at(k, k)); if (m.at(r, k) != 0) clean = false; }
                for (std::size_t c = k + 1; c < C; ++c)
                    if (m.at(k, c) != 0) { col_op(c, k, m.at(k, c) / m.at(k, k)); if (m.at(k, c) != 0) clean = false; }
                if (!clean) { --k; continue; }
                if (m.at(k, k) < 0) negate_row(k);
            }
            j = i;  // recheck the chain from i
        }
    out.diagonal.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = m.at(i, i) < 0 ? -m.at(i, i) : m.at(i, i);
    if (transforms) { out.left = std::move(U); out.right = std::move(V); }
    return out;
}

// ----- sparse elimination front end for large cobar matrices -----

// Nonzero elementary divisors of m: unit pivots are split off by sparse
// Gaussian elimination (Markowitz-style fill-in bound), then the small dense
// remainder goes through smith_normal_form.
inline std::vector<Int> elementary_divisors_sparse(
    const std::vector<std::map<std::uint32_t, Int>>& rows, std::uint32_t ncols) {
    struct Row { std::map<std::uint32_t, Int> e; };
    std::vector<Row> r(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) r[i].e = rows[i];
    std::vector<std::size_t> col_count(ncols, 0);
    for (auto& row : r)
        for (auto& [c, v] : row.e) ++col_count[c];
    std::vector<char> row_live(r.size(), 1);
    std::size_t unit_pivots = 0;

    while (true) {
        // best +-1 pivot by (nnz_row-1)*(nnz_col-1)
        std::size_t best_i = r.size();
        std::uint32_t best_c = 0;
        std::size_t best_score = SIZE_MAX;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!row_live[i] || r[i].e.empty()) continue;
            for (auto& [c, v] : r[i].e) {
                if (v != 1 && v != -1) continue;
                std::size_t score = (r[i].e.size() - 1) * (col_count[c] - 1);
                if (score < best_score) { best_score = score; best_i = i; best_c = c; }
                if (score == 0) break;
            }
            if (best_score == 0) break;
        }
        if (best_i == r.size()) break;
        // eliminate column best_c with row best_i
        Int piv = r[best_i].e[best_c];
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!row_live[i] || i == best_i) continue;
            auto it = r[i].e.find(best_c);
            if (it == r[i].e.end()) continue;
            Int f = it->second / piv;  // piv = +-1
            for (auto& [c, v] : r[best_i].e) {
                auto jt = r[i].e.find(c);
                if (jt == r[i].e.end()) {
                    Int nv = -f * v;
                    if (nv != 0) { r[i].e.emplace(c, nv); ++col_count[c]; }
                } else {
                    jt->second -= f * v;
                    if (jt->second == 0) { r[i].e.erase(jt); --col_count[c]; }
                }
            }
        }
        for (auto& [c, v] : r[best_i].e) --col_count[c];
        row_live[best_i] = 0;
        r[best_i].e.clear();
        ++unit_pivots;
    }

    // dense SNF on the remainder
    std::map<std::uint32_t, std::size_t> col_index;
    std::vector<std::size_t> live_rows;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!row_live[i] || r[i].e.empty()) continue;
        live_rows.push_back(i);
        for (auto& [c, v] : r[i].e)
            col_index.emplace(c, col_index.size());
    }
    std::vector<Int> divisors(unit_pivots, 1);
    if (!live_rows.empty()) {
        IntMatrix core(live_rows.size(), col_index.size());
        for (std::size_t i = 0; i < live_rows.size(); ++i)
            for (auto& [c, v] : r[live_rows[i]].e) core.at(i, col_index[c]) = v;
        auto snf = smith_normal_form(std::move(core));
        for (auto& d : snf.diagonal)
            if (d != 0) divisors.push_back(d);
    }
    return divisors;
}

// ----- 2-local fast path -----
// Elementary divisors over Z_(2): units are invertible, so divisors are
// 2-powers.  Entries live in Z/2^64; a min-valuation pivot rule keeps the
// computation exact as long as the accumulated pivot valuations stay well
// below the word size (guarded below).

struct PrecisionExhausted : std::runtime_error {
    PrecisionExhausted() : std::runtime_error("2-adic elimination lost too much precision") {}
};

inline std::uint64_t odd_inverse(std::uint64_t a) {
    std::uint64_t x = a;  // Newton iteration, converges in 6 steps for 64 bits
    for (int i = 0; i < 6; ++i) x *= 2 - a * x;
    return x;
}

// Returns the multiset of 2-exponents of the elementary divisors.
inline std::vector<int> two_local_divisor_exponents(std::vector<std::map<std::uint32_t, std::uint64_t>> rows,
                                                    std::uint32_t ncols) {
    std::vector<std::size_t> col_count(ncols, 0);
    for (auto& r : rows)
        for (auto& [c, v] : r) ++col_count[c];
    struct Summary { int minval = 99; std::size_t nnz = 0; };
    auto summarize = [](const std::map<std::uint32_t, std::uint64_t>& r) {
        Summary s;
        s.nnz = r.size();
        for (auto& [c, v] : r) {
            int e = std::countr_zero(v);
            if (e < s.minval) s.minval = e;
        }
        return s;
    };
    std::vector<Summary> info(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) info[i] = summarize(rows[i]);

    std::vector<int> exps;
    while (true) {
        // row with minimal valuation, ties broken by sparsity
        std::size_t best = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].empty()) continue;
            if (best == rows.size() || info[i].minval < info[best].minval ||
                (info[i].minval == info[best].minval && info[i].nnz < info[best].nnz))
                best = i;
        }
        if (best == rows.size()) break;
        const int e = info[best].minval;
        if (e >= 48) throw PrecisionExhausted();
        // entry of that valuation in the sparsest column
        std::uint32_t pc = 0;
        std::size_t pc_count = SIZE_MAX;
        for (auto& [c, v] : rows[best])
            if (std::countr_zero(v) == e && col_count[c] < pc_count) { pc = c; pc_count = col_count[c]; }
        exps.push_back(e);
        // normalize the pivot row: divide by 2^e * odd(pivot)
        std::uint64_t inv = odd_inverse(rows[best][pc] >> e);
        std::map<std::uint32_t, std::uint64_t> prow;
        for (auto& [c, v] : rows[best]) {
            std::uint64_t nv = (v >> e) * inv;
            if (nv) prow.emplace(c, nv);
            --col_count[c];
        }
        rows[best].clear();
        info[best] = {};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto it = rows[i].find(pc);
            if (it == rows[i].end()) continue;
            // val(f) >= e by pivot minimality, which restores the e bits the
            // pivot-row normalization shifted out: the update is exact mod 2^64
            std::uint64_t f = it->second;
            for (auto& [c, v] : prow) {
                auto jt = rows[i].find(c);
                if (jt == rows[i].end()) {
                    std::uint64_t nv = std::uint64_t(0) - f * v;
                    if (nv) { rows[i].emplace(c, nv); ++col_count[c]; }
                } else {
                    jt->second -= f * v;
                    if (jt->second == 0) { rows[i].erase(jt); --col_count[c]; }
                }
            }
            info[i] = summarize(rows[i]);
        }
    }
    return exps;
}

inline std::vector<Int> elementary_divisors(const IntMatrix& m) {
    std::vector<std::map<std::uint32_t, Int>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) rows[i][std::uint32_t(j)] = m.at(i, j);
    return elementary_divisors_sparse(rows, std::uint32_t(m.cols()));
}

inline std::size_t int_rank(const IntMatrix& m) { return elementary_divisors(m).size(); }

// 2-part of n (n > 0).
inline Int two_part(Int n) {
    Int t = 1;
    while (n % 2 == 0) { t *= 2; n /= 2; }
    return t;
}

// Homology at C of  A --d_in--> C --d_out--> B,  read 2-locally:
// ker/im = Z^(free) + sum Z/2^k from the elementary divisors of d_in.
// d_in is (dim C) x (dim A); d_out is (dim B) x (dim C); columns are images.
inline GroupPresentation homology_group(const IntMatrix& d_in, const IntMatrix& d_out) {
    if (d_in.rows() != d_out.cols()) throw std::invalid_argument("homology_group: shape mismatch");
    if (!(d_out * d_in).is_zero()) throw NotAComplex();
    const std::size_t n = d_in.rows();
    auto div_in = elementary_divisors(d_in);
    const std::size_t rank_out = int_rank(d_out);
    GroupPresentation g;
    const std::size_t free_rank = n - rank_out - div_in.size();
    for (std::size_t i = 0; i < free_rank; ++i) g.add(0, "");
    for (auto& d : div_in) {
        Int t = two_part(d);
        if (t > 1) g.add(std::int64_t(t), "");
    }
    g.normalize();
    return g;
}

// ----- dense transform-based helpers (small matrices) -----

// Columns span ker(m) over Z (saturated: a basis of the kernel lattice).
inline IntMatrix int_kernel_basis(const IntMatrix& m) {
    auto snf = smith_normal_form(m, true);
    std::size_t rank = 0;
    for (auto& d : snf.diagonal) rank += (d != 0);
    const IntMatrix& V = *snf.right;
    IntMatrix k(m.cols(), m.cols() - rank);
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = rank; j < m.cols(); ++j) k.at(i, j - rank) = V.at(i, j);
    return k;
}

// Solve m x = b over Z; nullopt when no integral solution exists.
inline std::optional<std::vector<Int>> int_solve(const IntMatrix& m, const std::vector<Int>& b) {
    auto snf = smith_normal_form(m, true);
    const IntMatrix& U = *snf.left;
    const IntMatrix& V = *snf.right;
    std::vector<Int> ub(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) ub[i] += U.at(i, j) * b[j];
    std::vector<Int> y(m.cols(), 0);
    const std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = i < n ? snf.diagonal[i] : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    std::vector<Int> x(m.cols(), 0);
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) x[i] += V.at(i, j) * y[j];
    return x;
}

}  // namespace trimot
