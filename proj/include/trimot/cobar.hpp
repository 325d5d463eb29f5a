#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimot/bp.hpp"
#include "trimot/f2.hpp"
#include "trimot/group.hpp"
#include "trimot/poly.hpp"
#include "trimot/snf.hpp"

namespace trimot {

enum class ExtCoeffs { Z, F2 };

struct BoxExceeded : std::runtime_error {
    BoxExceeded(int s, std::int64_t deg)
        : std::runtime_error("Ext entry (s=" + std::to_string(s) + ", deg=" + std::to_string(deg) +
                             ") outside the computed table") {}
};

// Ext^{s,deg} table over a box 0 <= s <= s_max, 0 <= deg <= D (deg even).
struct ExtTable {
    int N = 0;
    int s_max = 0;
    std::int64_t D = 0;
    ExtCoeffs coeffs = ExtCoeffs::Z;
    std::map<std::pair<int, std::int64_t>, GroupPresentation> groups;

    const GroupPresentation& at(int s, std::int64_t deg) const {
        static const GroupPresentation zero{};
        if (deg % 2 != 0 || deg < 0) return zero;  // odd/negative internal degree: nothing there
        if (s < 0 || 2 * s > deg) return zero;     // every normalized slot has degree >= 2
        if (s > s_max || deg > D) throw BoxExceeded(s, deg);
        auto it = groups.find({s, deg});
        return it == groups.end() ? zero : it->second;
    }
};

inline bool stable_range(int N, int /*s_max*/, std::int64_t D) {
    return 2 * ((std::int64_t(1) << (N + 1)) - 1) > D;
}

// The normalized cobar complex of the presented Hopf algebroid:
// C^s = Gamma^{(x)s} = Z[v, t^(1)..t^(s)], normalized basis = monomials with a
// nonempty t-part in every slot; d = sum (-1)^j d^j with the cofaces acting as
// ring homomorphisms (coefficients kept canonically at the front).
class CobarComplex {
  public:
    using Column = std::vector<std::pair<std::size_t, Int>>;  // (row, entry)

    CobarComplex(const BPPresentation& pres, int s_max, std::int64_t D)
        : pres_(pres), s_max_(s_max), D_(D) {
        if (D > pres.D) throw std::invalid_argument("CobarComplex: degree beyond presentation cap");
        build_bases();
        build_matrices();
    }

    int s_max() const { return s_max_; }
    std::int64_t D() const { return D_; }
    const std::vector<Mono>& basis(int s, std::int64_t deg) const {
        static const std::vector<Mono> none{};
        auto it = bases_.find({s, deg});
        return it == bases_.end() ? none : it->second;
    }
    // columns of d^s restricted to internal degree deg: C^s_deg -> C^{s+1}_deg
    const std::vector<Column>& differential(int s, std::int64_t deg) const {
        static const std::vector<Column> none{};
        auto it = diffs_.find({s, deg});
        return it == diffs_.end() ? none : it->second;
    }

  private:
    void build_bases() {
        // v-monomials and nonempty slot t-monomials by exact degree
        std::vector<std::vector<Mono>> vmon(D_ + 1), tmon(D_ + 1);
        enumerate(vmon, [&](int i) { return var_v(i); }, true);
        enumerate(tmon, [&](int i) { return var_t(1, i); }, false);
        for (int s = 0; s <= s_max_ + 1; ++s)
            for (std::int64_t deg = 0; deg <= D_; deg += 2) {
                std::vector<Mono> out;
                Mono acc;
                compose(s, deg, 1, acc, vmon, tmon, out);
                std::sort(out.begin(), out.end());
                bases_[{s, deg}] = std::move(out);
            }
    }

    void enumerate(std::vector<std::vector<Mono>>& by_deg,
                   const std::function<std::uint32_t(int)>& var_of, bool allow_empty) {
        Mono acc;
        auto rec = [&](auto&& self, int i, std::int64_t deg) -> void {
            if (i > pres_.N) {
                if (allow_empty || !acc.empty()) by_deg[deg].push_back(acc);
                return;
            }
            std::int64_t gd = 2 * ((std::int64_t(1) << i) - 1);
            for (std::uint32_t e = 0;; ++e) {
                std::int64_t nd = deg + e * gd;
                if (nd > D_) break;
                if (e > 0) {
                    if (e == 1) acc.push_back({var_of(i), 1});
                    else acc.back().second = e;
                }
                self(self, i + 1, nd);
            }
            if (!acc.empty() && acc.back().first == var_of(i)) acc.pop_back();
        };
        rec(rec, 1, 0);
        for (auto& v : by_deg)
            for (auto& m : v) std::sort(m.begin(), m.end());
    }

    void compose(int slots_left, std::int64_t deg, int slot, Mono& acc,
                 const std::vector<std::vector<Mono>>& vmon,
                 const std::vector<std::vector<Mono>>& tmon, std::vector<Mono>& out) {
        if (slots_left == 0) {
            for (const auto& vm : vmon[deg]) {
                Mono m = vm;
                m.insert(m.end(), acc.begin(), acc.end());
                std::sort(m.begin(), m.end());
                out.push_back(std::move(m));
            }
            return;
        }
        for (std::int64_t d = 2; d + 2 * (slots_left - 1) <= deg; d += 2)
            for (const auto& tm : tmon[d]) {
                std::size_t mark = acc.size();
                for (auto& [v, e] : tm) acc.push_back({var_t(slot, var_index(v)), e});
                compose(slots_left - 1, deg - d, slot + 1, acc, vmon, tmon, out);
                acc.resize(mark);
            }
    }

    // image of variable v under coface d^j at source level s
    Poly<Int> coface_image(int s, int j, std::uint32_t v) {
        auto key = std::tuple{s, j, v};
        auto it = image_cache_.find(key);
        if (it != image_cache_.end()) return it->second;
        Poly<Int> img;
        int slot = var_slot(v), i = var_index(v);
        if (j == 0) {
            img = slot == 0 ? pres_.eta_r[i] : Poly<Int>::var(var_t(slot + 1, i));
        } else if (j >= 1 && j <= s) {
            if (slot == 0 || slot < j) img = Poly<Int>::var(v);
            else if (slot > j) img = Poly<Int>::var(var_t(slot + 1, i));
            else img = shifted_delta(i, j);
        } else {  // j == s+1: append a unit slot
            img = Poly<Int>::var(v);
        }
        image_cache_.emplace(key, img);
        return img;
    }

    // Delta(t_i) placed in slots (j, j+1), v-coefficients pushed to the front
    Poly<Int> shifted_delta(int i, int j) {
        auto key = std::pair{i, j};
        auto it = delta_cache_.find(key);
        if (it != delta_cache_.end()) return it->second;
        Poly<Int> moved = slot_map(pres_.delta[i], [&](int k) { return k + j - 1; });
        Poly<Int> out;
        for (auto& [m, c] : moved.terms) {
            Poly<Int> vpart = Poly<Int>::constant(c);
            Mono tpart;
            for (auto& [vv, e] : m) {
                if (var_slot(vv) == 0)
                    vpart = poly_mul(vpart, Poly<Int>::var(vv, e), gen_degree, std::int64_t(-1));
                else
                    tpart.push_back({vv, e});
            }
            Poly<Int> term;
            term.add_term(tpart, 1);
            out += poly_mul(push_coeff(pres_, vpart, j), term, gen_degree, std::int64_t(-1));
        }
        delta_cache_.emplace(key, out);
        return out;
    }

    Poly<Int> var_power(int s, int j, std::uint32_t v, std::uint32_t e) {
        auto key = std::tuple{s, j, v, e};
        auto it = power_cache_.find(key);
        if (it != power_cache_.end()) return it->second;
        Poly<Int> p = poly_pow(coface_image(s, j, v), e, gen_degree, std::int64_t(-1));
        power_cache_.emplace(key, p);
        return p;
    }

    void build_matrices() {
        for (int s = 0; s <= s_max_; ++s)
            for (std::int64_t deg = 0; deg <= D_; deg += 2) {
                const auto& src = bases_.at({s, deg});
                const auto& dst = bases_.at({s + 1, deg});
                std::map<Mono, std::size_t> dst_index;
                for (std::size_t k = 0; k < dst.size(); ++k) dst_index[dst[k]] = k;
                std::vector<Column> cols(src.size());
                for (std::size_t c = 0; c < src.size(); ++c) {
                    Poly<Int> dx;
                    for (int j = 0; j <= s + 1; ++j) {
                        Poly<Int> img = Poly<Int>::constant(j % 2 == 0 ? 1 : -1);
                        for (auto& [v, e] : src[c])
                            img = poly_mul(img, var_power(s, j, v, e), gen_degree, std::int64_t(-1));
                        dx += img;
                    }
                    std::map<std::size_t, Int> col;
                    for (auto& [m, coeff] : dx.terms) {
                        auto it = dst_index.find(m);
                        // terms outside the normalized basis must cancel;
                        // a leftover one signals a structure-map bug
                        if (it == dst_index.end())
                            throw std::logic_error("cobar differential left the normalized complex");
                        col[it->second] += coeff;
                    }
                    for (auto& [r, x] : col)
                        if (x != 0) cols[c].push_back({r, x});
                }
                diffs_[{s, deg}] = std::move(cols);
            }
        check_d_squared();
    }

    void check_d_squared() {
        for (int s = 0; s + 1 <= s_max_; ++s)
            for (std::int64_t deg = 0; deg <= D_; deg += 2) {
                const auto& a = diffs_.at({s, deg});
                const auto& b = diffs_.at({s + 1, deg});
                for (const auto& col : a) {
                    std::map<std::size_t, Int> acc;
                    for (auto& [mid, x] : col)
                        for (auto& [r, y] : b[mid]) acc[r] += x * y;
                    for (auto& [r, x] : acc)
                        if (x != 0) throw std::logic_error("cobar d^2 != 0");
                }
            }
    }

    const BPPresentation& pres_;
    int s_max_;
    std::int64_t D_;
    std::map<std::pair<int, std::int64_t>, std::vector<Mono>> bases_;
    std::map<std::pair<int, std::int64_t>, std::vector<Column>> diffs_;
    std::map<std::pair<int, int>, Poly<Int>> delta_cache_;
    std::map<std::tuple<int, int, std::uint32_t>, Poly<Int>> image_cache_;
    std::map<std::tuple<int, int, std::uint32_t, std::uint32_t>, Poly<Int>> power_cache_;
};

namespace detail {

inline std::vector<std::map<std::uint32_t, Int>> columns_to_rows(
    const std::vector<CobarComplex::Column>& cols, std::size_t nrows) {
    std::vector<std::map<std::uint32_t, Int>> rows(nrows);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto& [r, x] : cols[c]) rows[r][std::uint32_t(c)] = x;
    return rows;
}

inline std::vector<std::map<std::uint32_t, std::uint64_t>> columns_to_rows_u64(
    const std::vector<CobarComplex::Column>& cols, std::size_t nrows) {
    static const Int word = Int(1) << 64;
    std::vector<std::map<std::uint32_t, std::uint64_t>> rows(nrows);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto& [r, x] : cols[c]) {
            Int m = x % word;
            if (m < 0) m += word;
            if (m == 0) throw PrecisionExhausted();  // nonzero entry with 2-valuation >= 64
            rows[r][std::uint32_t(c)] = static_cast<std::uint64_t>(m);
        }
    return rows;
}

inline F2Matrix columns_to_f2(const std::vector<CobarComplex::Column>& cols, std::size_t nrows) {
    F2Matrix m(nrows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto& [r, x] : cols[c])
            if (x % 2 != 0) m.set(r, c, true);
    return m;
}

}  // namespace detail

// Ext^{s,deg}(A, A) or Ext^{s,deg}(A, A/2) over the cobar complex.
inline ExtTable ext(const BPPresentation& pres, ExtCoeffs coeffs, int s_max, std::int64_t D) {
    CobarComplex cx(pres, s_max, D);
    ExtTable table;
    table.N = pres.N;
    table.s_max = s_max;
    table.D = D;
    table.coeffs = coeffs;
    for (std::int64_t deg = 0; deg <= D; deg += 2) {
        for (int s = 0; s <= s_max; ++s) {
            const std::size_t n = cx.basis(s, deg).size();
            if (n == 0) continue;
            GroupPresentation g;
            if (coeffs == ExtCoeffs::F2) {
                std::size_t r_out = f2_rank(detail::columns_to_f2(cx.differential(s, deg),
                                                                  cx.basis(s + 1, deg).size()));
                std::size_t r_in = 0;
                if (s > 0)
                    r_in = f2_rank(detail::columns_to_f2(cx.differential(s - 1, deg), n));
                for (std::size_t k = 0; k < n - r_out - r_in; ++k) g.add(2, "");
            } else {
                auto div_out = two_local_divisor_exponents(
                    detail::columns_to_rows_u64(cx.differential(s, deg),
                                                cx.basis(s + 1, deg).size()),
                    std::uint32_t(n));
                std::vector<int> div_in;
                if (s > 0)
                    div_in = two_local_divisor_exponents(
                        detail::columns_to_rows_u64(cx.differential(s - 1, deg), n),
                        std::uint32_t(cx.basis(s - 1, deg).size()));
                for (std::size_t k = 0; k < n - div_out.size() - div_in.size(); ++k) g.add(0, "");
                for (int e : div_in)
                    if (e > 0) g.add(std::int64_t(1) << e, "");
                g.normalize();
            }
            if (!g.zero()) table.groups[{s, deg}] = std::move(g);
        }
    }
    return table;
}

}  // namespace trimot
