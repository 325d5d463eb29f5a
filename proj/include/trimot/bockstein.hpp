#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "trimot/f2.hpp"
#include "trimot/grading.hpp"
#include "trimot/group.hpp"

namespace trimot {

struct InhomogeneousDifferential : std::runtime_error {
    explicit InhomogeneousDifferential(const std::string& what) : std::runtime_error(what) {}
};
struct LeibnizContradiction : std::runtime_error {
    explicit LeibnizContradiction(const std::string& what) : std::runtime_error(what) {}
};
struct BadBocksteinInput : std::runtime_error {
    explicit BadBocksteinInput(const std::string& what) : std::runtime_error(what) {}
};

// Monomial in the page generators: label -> positive exponent.
using BMono = std::map<std::string, std::uint32_t>;
// Formal F2 sum of monomials.
using BSum = std::set<BMono>;

inline void bsum_add(BSum& s, const BMono& m) {
    auto it = s.find(m);
    if (it == s.end()) s.insert(m); else s.erase(it);
}

inline BMono bmono_mul(const BMono& a, const BMono& b) {
    BMono r = a;
    for (const auto& [g, e] : b) r[g] += e;
    return r;
}

inline bool bmono_divides(const BMono& d, const BMono& m) {
    for (const auto& [g, e] : d) {
        auto it = m.find(g);
        if (it == m.end() || it->second < e) return false;
    }
    return true;
}

inline BMono bmono_div(const BMono& m, const BMono& d) {
    BMono r = m;
    for (const auto& [g, e] : d) {
        auto it = r.find(g);
        it->second -= e;
        if (it->second == 0) r.erase(it);
    }
    return r;
}

inline std::string to_string(const BMono& m) {
    if (m.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : m) {
        if (!s.empty()) s += " ";
        s += g;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

// Grammar: whitespace- or '*'-separated factors "label" or "label^e".
inline BMono parse_bmono(const std::string& text) {
    BMono m;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        if (tok == "1") { tok.clear(); return; }
        std::string label = tok;
        std::uint32_t e = 1;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
            label = tok.substr(0, caret);
            try {
                e = std::uint32_t(std::stoul(tok.substr(caret + 1)));
            } catch (const std::exception&) {
                throw BadBocksteinInput("bad exponent in monomial factor: " + tok);
            }
        }
        if (label.empty() || e == 0) throw BadBocksteinInput("bad monomial factor: " + tok);
        m[label] += e;
        tok.clear();
    };
    for (char c : text) {
        if (c == ' ' || c == '*' || c == '\t') flush();
        else tok += c;
    }
    flush();
    return m;
}

struct BocksteinGenerator {
    std::string label;
    TriDegree degree;
    bool z2adic = false;
};

struct BocksteinRewrite {
    BMono from;
    BSum to;
};

// Page-r differential on a monomial; the implied factor ta^r is not stored,
// so each target monomial satisfies deg(target) = deg(source) + (-1, 0, r).
struct BocksteinDifferential {
    int page = 1;
    BMono source;
    BSum target;
};

struct TriBox {
    TriDegree lo, hi;
    bool contains(TriDegree d) const {
        return lo.p <= d.p && d.p <= hi.p && lo.q <= d.q && d.q <= hi.q && lo.w <= d.w &&
               d.w <= hi.w;
    }
};

struct BocksteinInput {
    std::vector<BocksteinGenerator> generators;
    std::vector<BMono> basis;
    std::vector<BocksteinRewrite> rewrites;
    std::vector<BocksteinDifferential> differentials;

    const BocksteinGenerator& generator(const std::string& label) const {
        for (const auto& g : generators)
            if (g.label == label) return g;
        throw BadBocksteinInput("unknown generator: " + label);
    }
    TriDegree degree(const BMono& m) const {
        TriDegree d{};
        for (const auto& [g, e] : m) d += std::int64_t(e) * generator(g).degree;
        return d;
    }
    bool z2adic_mono(const BMono& m) const {
        for (const auto& [g, e] : m)
            if (!generator(g).z2adic) return false;
        return true;
    }
};

// All monomials in the generators with every exponent <= max_exponent whose
// degree lies in the box and which no rewrite can reduce.
inline std::vector<BMono> expand_polynomial_basis(const BocksteinInput& in, TriBox box,
                                                  std::uint32_t max_exponent) {
    std::vector<BMono> out;
    BMono current;
    auto reducible = [&](const BMono& m) {
        for (const auto& rw : in.rewrites)
            if (bmono_divides(rw.from, m)) return true;
        return false;
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == in.generators.size()) {
            if (box.contains(in.degree(current)) && !reducible(current)) out.push_back(current);
            return;
        }
        self(self, i + 1);
        const std::string& g = in.generators[i].label;
        for (std::uint32_t e = 1; e <= max_exponent; ++e) {
            current[g] = e;
            self(self, i + 1);
        }
        current.erase(g);
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// Rewrite m to a sum of irreducible monomials (bounded iteration depth).
inline BSum bockstein_normalize(const BocksteinInput& in, const BMono& m, int depth = 0) {
    if (depth > 64) throw LeibnizContradiction("rewrite system does not terminate on " + to_string(m));
    for (const auto& rw : in.rewrites)
        if (bmono_divides(rw.from, m)) {
            BMono q = bmono_div(m, rw.from);
            BSum out;
            for (const auto& t : rw.to)
                for (const auto& n : bockstein_normalize(in, bmono_mul(t, q), depth + 1))
                    bsum_add(out, n);
            return out;
        }
    return {m};
}

inline void validate_bockstein_input(const BocksteinInput& in) {
    for (const auto& rw : in.rewrites) {
        TriDegree d = in.degree(rw.from);
        for (const auto& t : rw.to)
            if (in.degree(t) != d)
                throw InhomogeneousDifferential("rewrite changes degree: " + to_string(rw.from));
    }
    for (const auto& df : in.differentials) {
        if (df.page < 1) throw BadBocksteinInput("differential page must be >= 1");
        TriDegree want = in.degree(df.source) + TriDegree{-1, 0, df.page};
        for (const auto& t : df.target)
            if (in.degree(t) != want)
                throw InhomogeneousDifferential(
                    "d_" + std::to_string(df.page) + "(" + to_string(df.source) + ") target " +
                    to_string(t) + " has degree " + to_string(in.degree(t)) + ", expected " +
                    to_string(want));
    }
}

// Differentials extended to every basis monomial by the Leibniz rule, stored
// as one matrix per page and source degree (rows = source monomials, columns
// = target monomials of degree + (-1,0,r)).
struct ClosedDifferentials {
    std::map<TriDegree, std::vector<BMono>> basis;
    std::map<int, std::map<TriDegree, F2Matrix>> pages;
};

namespace detail {

inline std::size_t mono_index(const std::vector<BMono>& basis, const BMono& m) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) return basis.size();
    return std::size_t(it - basis.begin());
}

inline F2Matrix f2_transpose(const F2Matrix& m) {
    F2Matrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) t.set(c, r, true);
    return t;
}

inline F2Matrix compact_reduced(F2Matrix m) {
    std::size_t n = f2_row_reduce(m).size();
    F2Matrix out(n, m.cols());
    for (std::size_t r = 0; r < n; ++r) out.xor_row_from(r, m, r);
    return out;
}

// Reduce row r of m against the reduced basis rows; true if it lands in the span.
inline bool reduce_row_mod(F2Matrix& m, std::size_t r, const F2Matrix& basis,
                           const std::vector<std::size_t>& pivots) {
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (m.get(r, pivots[i])) m.xor_row_from(r, basis, i);
    return m.row_zero(r);
}

inline std::vector<std::size_t> pivot_columns(const F2Matrix& reduced) {
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < reduced.rows(); ++r)
        for (std::size_t c = 0; c < reduced.cols(); ++c)
            if (reduced.get(r, c)) { pivots.push_back(c); break; }
    return pivots;
}

}  // namespace detail

inline ClosedDifferentials leibniz_close(const BocksteinInput& in) {
    validate_bockstein_input(in);
    ClosedDifferentials out;
    for (const auto& m : in.basis) out.basis[in.degree(m)].push_back(m);
    for (auto& [d, v] : out.basis) std::sort(v.begin(), v.end());

    std::set<int> page_numbers;
    for (const auto& df : in.differentials) page_numbers.insert(df.page);

    // Images whose degree leaves the basis bounding box are truncated; inside
    // the box every normalized image monomial must be a basis element.
    TriBox bounds{{INT64_MAX, INT64_MAX, INT64_MAX}, {INT64_MIN, INT64_MIN, INT64_MIN}};
    for (const auto& [d, v] : out.basis) {
        bounds.lo = {std::min(bounds.lo.p, d.p), std::min(bounds.lo.q, d.q),
                     std::min(bounds.lo.w, d.w)};
        bounds.hi = {std::max(bounds.hi.p, d.p), std::max(bounds.hi.q, d.q),
                     std::max(bounds.hi.w, d.w)};
    }

    // d_r on one basis monomial: split off each declared source's power.
    auto image = [&](int r, const BMono& m) {
        BSum img;
        BMono rest = m;
        std::vector<std::pair<const BocksteinDifferential*, std::uint32_t>> parts;
        for (const auto& df : in.differentials) {
            if (df.page != r) continue;
            std::uint32_t c = 0;
            while (bmono_divides(df.source, rest)) { rest = bmono_div(rest, df.source); ++c; }
            if (c) parts.push_back({&df, c});
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i].second % 2 == 0) continue;  // even powers die in char 2
            BMono cof = rest;
            for (std::size_t j = 0; j < parts.size(); ++j) {
                std::uint32_t e = parts[j].second - (i == j ? 1 : 0);
                for (std::uint32_t k = 0; k < e; ++k)
                    cof = bmono_mul(cof, parts[j].first->source);
            }
            for (const auto& t : parts[i].first->target)
                for (const auto& n : bockstein_normalize(in, bmono_mul(t, cof)))
                    bsum_add(img, n);
        }
        return img;
    };

    for (int r : page_numbers) {
        for (const auto& [deg, monos] : out.basis) {
            TriDegree tdeg = deg + TriDegree{-1, 0, r};
            auto tit = out.basis.find(tdeg);
            const std::vector<BMono> empty;
            const std::vector<BMono>& tmonos = tit == out.basis.end() ? empty : tit->second;
            F2Matrix m(monos.size(), tmonos.size());
            bool nonzero = false;
            for (std::size_t i = 0; i < monos.size(); ++i)
                for (const auto& n : image(r, monos[i])) {
                    if (!bounds.contains(in.degree(n))) continue;
                    std::size_t j = detail::mono_index(tmonos, n);
                    if (j == tmonos.size())
                        throw LeibnizContradiction("d_" + std::to_string(r) + "(" +
                                                   to_string(monos[i]) + ") leaves the basis at " +
                                                   to_string(n));
                    m.flip(i, j);
                    nonzero = true;
                }
            if (nonzero) out.pages[r][deg] = std::move(m);
        }
        // d_r composed with itself must vanish on the monomial basis
        auto& mats = out.pages[r];
        for (const auto& [deg, m] : mats) {
            auto next = mats.find(deg + TriDegree{-1, 0, r});
            if (next == mats.end()) continue;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                F2Matrix acc(1, next->second.cols());
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (m.get(i, c)) acc.xor_row_from(0, next->second, c);
                if (!acc.row_zero(0))
                    throw LeibnizContradiction("d_" + std::to_string(r) + " squared is nonzero");
            }
        }
    }
    return out;
}

struct PageCellReport {
    TriDegree mdeg;  // degree of the representing monomials; total degree is mdeg - (0,0,k)
    int k = 0;       // ta-exponent
    GroupPresentation group;
};

struct SpectralSequencePage {
    int r = 1;
    std::vector<PageCellReport> cells;
};

struct AbutmentEntry {
    // Degree of the representing monomials on E_1; the class and its
    // ta-multiples land in abutment degrees (p, q, w - k) for k >= 0.
    TriDegree degree;
    std::size_t ta_free = 0;
    std::map<int, std::size_t> torsion;  // ta-torsion order -> count
};

struct BocksteinResult {
    std::vector<SpectralSequencePage> pages;  // E_1 through E_{r_max+1}
    std::vector<AbutmentEntry> summary;
    std::map<std::pair<TriDegree, int>, std::size_t> infinity_dims;  // (total degree, k)
    std::vector<std::string> notes;
    int k_max = 0;
};

inline BocksteinResult run(const BocksteinInput& in, int r_max, TriBox box) {
    auto closed = leibniz_close(in);
    const int k_max = r_max + 2;

    struct Cell {
        F2Matrix z, b;                       // reduced row bases, span(b) <= span(z)
        std::vector<std::size_t> zp, bp;     // pivot columns
        std::size_t dim() const { return z.rows() - b.rows(); }
    };
    std::map<std::pair<TriDegree, int>, Cell> cells;
    for (const auto& [deg, monos] : closed.basis)
        for (int k = 0; k <= k_max; ++k) {
            Cell c;
            c.z = F2Matrix(monos.size(), monos.size());
            for (std::size_t i = 0; i < monos.size(); ++i) c.z.set(i, i, true);
            c.zp = detail::pivot_columns(c.z);
            c.b = F2Matrix(0, monos.size());
            cells[{deg, k}] = std::move(c);
        }

    BocksteinResult result;
    result.k_max = k_max;
    for (const auto& df : in.differentials)
        if (in.z2adic_mono(df.source))
            result.notes.push_back("unresolved filtration jump: 2-adic class " +
                                   to_string(df.source) + " supports d_" +
                                   std::to_string(df.page));

    auto report_page = [&](int r) {
        SpectralSequencePage page;
        page.r = r;
        for (const auto& [key, cell] : cells) {
            const auto& [deg, k] = key;
            if (!box.contains(deg + TriDegree{0, 0, -std::int64_t(k)})) continue;
            if (cell.dim() == 0) continue;
            const auto& monos = closed.basis.at(deg);
            // coset basis: z rows reduced against b, keeping the independent ones
            F2Matrix stack(cell.z.rows(), cell.z.cols());
            for (std::size_t i = 0; i < cell.z.rows(); ++i) {
                stack.xor_row_from(i, cell.z, i);
                detail::reduce_row_mod(stack, i, cell.b, cell.bp);
            }
            F2Matrix red = detail::compact_reduced(std::move(stack));
            PageCellReport rep{deg, k, {}};
            for (std::size_t i = 0; i < red.rows(); ++i) {
                std::string label;
                bool all_z2 = true;
                for (std::size_t c = 0; c < red.cols(); ++c)
                    if (red.get(i, c)) {
                        if (label.empty()) label = to_string(monos[c]);
                        all_z2 = all_z2 && in.z2adic_mono(monos[c]);
                    }
                if (k > 0) label += " ta^" + std::to_string(k);
                rep.group.add(all_z2 ? 0 : 2, std::move(label));
            }
            page.cells.push_back(std::move(rep));
        }
        result.pages.push_back(std::move(page));
    };

    report_page(1);
    for (int r = 1; r <= r_max; ++r) {
        auto mats = closed.pages.find(r);
        if (mats != closed.pages.end()) {
            std::map<std::pair<TriDegree, int>, std::vector<F2Matrix>> staged_z;
            std::map<std::pair<TriDegree, int>, std::vector<F2Matrix>> incoming;
            for (auto& [key, cell] : cells) {
                const auto& [deg, k] = key;
                auto mit = mats->second.find(deg);
                if (mit == mats->second.end()) continue;
                const F2Matrix& m = mit->second;
                TriDegree tdeg = deg + TriDegree{-1, 0, r};
                int tk = std::min(k + r, k_max);  // cells are k-stable past r_max
                auto tit = cells.find({tdeg, tk});
                if (tit == cells.end()) {
                    // no target monomials: the whole cell consists of cycles
                    continue;
                }
                const Cell& tcell = tit->second;
                // image of every current basis row, in ambient target coordinates
                F2Matrix img(cell.z.rows(), m.cols());
                for (std::size_t i = 0; i < cell.z.rows(); ++i)
                    for (std::size_t c = 0; c < cell.z.cols(); ++c)
                        if (cell.z.get(i, c)) img.xor_row_from(i, m, c);
                // the differential must vanish on boundaries modulo boundaries
                F2Matrix bimg(cell.b.rows(), m.cols());
                for (std::size_t i = 0; i < cell.b.rows(); ++i) {
                    for (std::size_t c = 0; c < cell.b.cols(); ++c)
                        if (cell.b.get(i, c)) bimg.xor_row_from(i, m, c);
                    if (!detail::reduce_row_mod(bimg, i, tcell.b, tcell.bp))
                        throw LeibnizContradiction("d_" + std::to_string(r) +
                                                   " is not defined on the page at " +
                                                   to_string(deg));
                }
                if (k + r <= k_max) incoming[{tdeg, k + r}].push_back(img);
                // cycle combinations: rows whose image dies modulo target boundaries
                F2Matrix w = img;
                for (std::size_t i = 0; i < w.rows(); ++i)
                    detail::reduce_row_mod(w, i, tcell.b, tcell.bp);
                F2Matrix combos = f2_kernel_basis(detail::f2_transpose(w));
                F2Matrix nz(combos.rows(), cell.z.cols());
                for (std::size_t i = 0; i < combos.rows(); ++i)
                    for (std::size_t j = 0; j < cell.z.rows(); ++j)
                        if (combos.get(i, j)) nz.xor_row_from(i, cell.z, j);
                staged_z[key].push_back(std::move(nz));
            }
            for (auto& [key, zs] : staged_z) {
                Cell& cell = cells[key];
                cell.z = detail::compact_reduced(std::move(zs.front()));
                cell.zp = detail::pivot_columns(cell.z);
            }
            for (auto& [key, imgs] : incoming) {
                Cell& cell = cells[key];
                std::size_t extra = 0;
                for (const auto& im : imgs) extra += im.rows();
                F2Matrix stack(cell.b.rows() + extra, cell.b.cols());
                std::size_t at = 0;
                for (std::size_t i = 0; i < cell.b.rows(); ++i) stack.xor_row_from(at++, cell.b, i);
                for (const auto& im : imgs)
                    for (std::size_t i = 0; i < im.rows(); ++i) stack.xor_row_from(at++, im, i);
                cell.b = detail::compact_reduced(std::move(stack));
                cell.bp = detail::pivot_columns(cell.b);
                // boundaries are cycles (d*d = 0), so they stay inside z
                F2Matrix check(1, cell.b.cols());
                for (std::size_t i = 0; i < cell.b.rows(); ++i) {
                    for (std::size_t c = 0; c < cell.b.cols(); ++c)
                        check.set(0, c, cell.b.get(i, c));
                    if (!detail::reduce_row_mod(check, 0, cell.z, cell.zp))
                        throw LeibnizContradiction("boundary escapes the cycle space at page " +
                                                   std::to_string(r));
                }
            }
        }
        report_page(r + 1);
    }

    for (const auto& [key, cell] : cells) {
        const auto& [deg, k] = key;
        TriDegree total = deg + TriDegree{0, 0, -std::int64_t(k)};
        if (cell.dim()) result.infinity_dims[{total, k}] = cell.dim();
    }

    // For fixed representative degree the E_infinity dimensions are
    // non-increasing in the ta-exponent (same ambient space, growing
    // boundaries, shrinking cycles), so the ta-free rank is the stable
    // dimension and the order-j torsion count is the drop from k = j-1 to j.
    std::map<TriDegree, std::vector<std::size_t>> columns;
    for (const auto& [key, cell] : cells) {
        const auto& [deg, k] = key;
        if (!box.contains(deg) || cell.dim() == 0) continue;
        auto& col = columns[deg];
        col.resize(std::size_t(k_max) + 1, 0);
        col[std::size_t(k)] = cell.dim();
    }
    for (const auto& [t, col] : columns) {
        if (col[std::size_t(k_max)] != col[std::size_t(k_max) - 1])
            result.notes.push_back("column at " + to_string(t) +
                                   " did not stabilize by ta^" + std::to_string(k_max));
        AbutmentEntry e;
        e.degree = t;
        e.ta_free = col[std::size_t(k_max)];
        for (int j = 1; j <= k_max; ++j)
            if (col[std::size_t(j) - 1] > col[std::size_t(j)])
                e.torsion[j] = col[std::size_t(j) - 1] - col[std::size_t(j)];
        result.summary.push_back(std::move(e));
    }
    return result;
}

// ----- direct homology oracle: a chain complex of free F2[ta]-modules -----

// d(src) contains ta^order * dst; homogeneity requires
// deg(dst) = deg(src) + (-1, 0, order).
struct TaComplexEntry {
    std::string src, dst;
    int order = 0;
};

struct TaComplex {
    std::vector<BocksteinGenerator> gens;  // z2adic flag unused by the oracle
    std::vector<TaComplexEntry> diff;

    TriDegree degree(const std::string& label) const {
        for (const auto& g : gens)
            if (g.label == label) return g.degree;
        throw BadBocksteinInput("unknown oracle generator: " + label);
    }
};

inline void validate_ta_complex(const TaComplex& cx) {
    for (const auto& e : cx.diff) {
        if (e.order < 0) throw BadBocksteinInput("negative ta order");
        if (cx.degree(e.dst) != cx.degree(e.src) + TriDegree{-1, 0, e.order})
            throw InhomogeneousDifferential("oracle entry " + e.src + " -> " + e.dst);
    }
    // All entries out of one generator must share their ta-order, so that the
    // differential is homogeneous per (total degree, ta power) spot and the
    // homology can be computed spot by spot.
    for (const auto& a : cx.diff)
        for (const auto& b : cx.diff)
            if (a.src == b.src && a.order != b.order)
                throw BadBocksteinInput("oracle generator " + a.src + " mixes ta-orders");
    // d is F2[ta]-linear, so checking d*d on generators suffices
    for (const auto& a : cx.diff)
        for (const auto& b : cx.diff)
            if (a.dst == b.src) {
                int count = 0;
                for (const auto& c : cx.diff)
                    for (const auto& d : cx.diff)
                        if (c.dst == d.src && c.src == a.src && d.dst == b.dst &&
                            c.order + d.order == a.order + b.order)
                            ++count;
                if (count % 2)
                    throw LeibnizContradiction("oracle differential does not square to zero");
            }
}

// Homology dimension of the expanded F2 complex per (total degree, ta power),
// for ta powers 0..k_max.
inline std::map<std::pair<TriDegree, int>, std::size_t> ta_homology_dims(const TaComplex& cx,
                                                                         int k_max) {
    validate_ta_complex(cx);
    // spot (t,k) holds generators g with deg(g) = t + (0,0,k)
    std::map<std::pair<TriDegree, int>, std::vector<std::string>> spots;
    for (const auto& g : cx.gens)
        for (int k = 0; k <= k_max; ++k)
            spots[{g.degree + TriDegree{0, 0, -k}, k}].push_back(g.label);
    auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
        return std::size_t(std::find(v.begin(), v.end(), s) - v.begin());
    };
    std::map<std::pair<TriDegree, int>, std::size_t> dims;
    for (const auto& [tk, labels] : spots) {
        const auto& [t, k] = tk;
        // outgoing: d maps (t,k) -> (t-(1,0,0), k+order); columns identified
        // by (target generator, landing power)
        std::size_t out_cols = 0;
        std::map<std::pair<std::string, int>, std::size_t> out_col;
        for (const auto& e : cx.diff)
            if (std::find(labels.begin(), labels.end(), e.src) != labels.end())
                if (!out_col.count({e.dst, k + e.order}))
                    out_col[{e.dst, k + e.order}] = out_cols++;
        F2Matrix mout(labels.size(), out_cols);
        for (const auto& e : cx.diff)
            if (std::find(labels.begin(), labels.end(), e.src) != labels.end())
                mout.flip(index_of(labels, e.src), out_col.at({e.dst, k + e.order}));
        // incoming: sources at (t+(1,0,0), k-order)
        std::size_t in_rows = 0;
        std::map<std::pair<std::string, int>, std::size_t> in_row;
        for (const auto& e : cx.diff) {
            int sk = k - e.order;
            if (sk < 0) continue;
            if (std::find(labels.begin(), labels.end(), e.dst) == labels.end()) continue;
            if (!in_row.count({e.src, sk})) in_row[{e.src, sk}] = in_rows++;
        }
        F2Matrix m_in(in_rows, labels.size());
        for (const auto& e : cx.diff) {
            int sk = k - e.order;
            if (sk < 0) continue;
            if (std::find(labels.begin(), labels.end(), e.dst) == labels.end()) continue;
            m_in.flip(in_row.at({e.src, sk}), index_of(labels, e.dst));
        }
        std::size_t h = labels.size() - f2_rank(mout) - f2_rank(m_in);
        if (h) dims[tk] = h;
    }
    return dims;
}

// True iff the E_infinity associated graded equals the associated graded of
// the oracle's homology under the ta-adic filtration, inside the box.
inline bool abutment_check(const BocksteinResult& pages, const TaComplex& oracle, TriBox box) {
    auto oracle_dims = ta_homology_dims(oracle, pages.k_max);
    for (const auto& [tk, dim] : oracle_dims) {
        if (!box.contains(tk.first)) continue;
        auto it = pages.infinity_dims.find(tk);
        if (it == pages.infinity_dims.end() || it->second != dim) return false;
    }
    for (const auto& [tk, dim] : pages.infinity_dims) {
        if (!box.contains(tk.first)) continue;
        auto it = oracle_dims.find(tk);
        if (it == oracle_dims.end() || it->second != dim) return false;
    }
    return true;
}

// ----- JSON input format (schema shipped in docs/) -----

inline BocksteinInput load_bockstein_input(const nlohmann::json& j) {
    if (!j.is_object()) throw BadBocksteinInput("input must be a JSON object");
    BocksteinInput in;
    if (!j.contains("generators")) throw BadBocksteinInput("missing generators");
    for (const auto& g : j.at("generators")) {
        BocksteinGenerator gen;
        gen.label = g.at("label").get<std::string>();
        auto d = g.at("degree");
        if (!d.is_array() || d.size() != 3) throw BadBocksteinInput("generator degree must be [p,q,w]");
        gen.degree = {d[0].get<std::int64_t>(), d[1].get<std::int64_t>(), d[2].get<std::int64_t>()};
        if (g.contains("torsion")) {
            std::string t = g.at("torsion").get<std::string>();
            if (t == "Z2adic") gen.z2adic = true;
            else if (t != "F2") throw BadBocksteinInput("torsion must be F2 or Z2adic");
        }
        in.generators.push_back(std::move(gen));
    }
    for (const auto& rw : j.value("rewrites", nlohmann::json::array())) {
        BocksteinRewrite r;
        r.from = parse_bmono(rw.at("from").get<std::string>());
        for (const auto& t : rw.at("to")) bsum_add(r.to, parse_bmono(t.get<std::string>()));
        in.rewrites.push_back(std::move(r));
    }
    if (!j.contains("basis")) throw BadBocksteinInput("missing basis");
    if (j.at("basis").is_array()) {
        for (const auto& b : j.at("basis")) in.basis.push_back(parse_bmono(b.get<std::string>()));
    } else {
        const auto& b = j.at("basis");
        if (!b.contains("polynomial") || !b.at("polynomial").get<bool>())
            throw BadBocksteinInput("basis must be a list or a polynomial presentation");
        const auto& bx = b.at("box");
        TriBox box{{bx[0][0].get<std::int64_t>(), bx[1][0].get<std::int64_t>(),
                    bx[2][0].get<std::int64_t>()},
                   {bx[0][1].get<std::int64_t>(), bx[1][1].get<std::int64_t>(),
                    bx[2][1].get<std::int64_t>()}};
        in.basis = expand_polynomial_basis(in, box, b.at("max_exponent").get<std::uint32_t>());
    }
    for (const auto& df : j.value("differentials", nlohmann::json::array())) {
        BocksteinDifferential d;
        d.page = df.at("page").get<int>();
        d.source = parse_bmono(df.at("source").get<std::string>());
        for (const auto& t : df.at("target")) bsum_add(d.target, parse_bmono(t.get<std::string>()));
        in.differentials.push_back(std::move(d));
    }
    validate_bockstein_input(in);
    return in;
}

}  // namespace trimot
