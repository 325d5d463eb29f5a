#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trimot/grading.hpp"
#include "trimot/point.hpp"

namespace trimot {

// A monomial  ta^e * c * prod tau_i^{eps_i} * prod xi_i^{n_i}  with c a
// point-ring monomial (any cone) over uF2.  Admissible means all eps_i <= 1.
struct SteenrodMonomial {
    std::int64_t ta = 0;                     // ta-exponent, >= 0
    PointBasisElement coeff{PointRing::uF2, Cone::Positive, 0, 0};
    std::map<int, std::int64_t> eps;         // tau exponents
    std::map<int, std::int64_t> xs;          // xi exponents

    void prune() {
        std::erase_if(eps, [](auto& kv) { return kv.second == 0; });
        std::erase_if(xs, [](auto& kv) { return kv.second == 0; });
    }
    bool admissible() const {
        for (auto& [i, e] : eps)
            if (e > 1) return false;
        return true;
    }
    auto operator<=>(const SteenrodMonomial&) const = default;
};

inline TriDegree tau_degree(int i) {
    std::int64_t e = std::int64_t(1) << i;
    return {e, e - 1, e - 1};
}
inline TriDegree xi_degree(int i) {
    std::int64_t e = (std::int64_t(1) << i) - 1;
    return {e, e, e};
}

inline TriDegree degree(const SteenrodMonomial& m) {
    RODegree c = degree(m.coeff);
    TriDegree d{c.p, c.q, -m.ta};
    for (auto& [i, e] : m.eps) d += e * tau_degree(i);
    for (auto& [i, n] : m.xs) d += n * xi_degree(i);
    return d;
}

// F2-linear combination as a set of monomials (multiplicities mod 2).
using SteenrodSum = std::set<SteenrodMonomial>;

inline void add_term(SteenrodSum& s, const SteenrodMonomial& m) {
    auto [it, inserted] = s.insert(m);
    if (!inserted) s.erase(it);
}

// Multiply the point coefficient by a basis element of uF2; nullopt if zero.
inline std::optional<SteenrodMonomial> coeff_mul(SteenrodMonomial m, const PointBasisElement& x) {
    auto prod = point_multiply(PointRing::uF2, m.coeff, x);
    if (prod.empty()) return std::nullopt;
    m.coeff = prod[0].elem;
    return m;
}

// Rewrite tau squares away:  tau_i^2 = ta*a*tau_{i+1} + ta*u*xi_{i+1}
//                                     + ta*a*tau_0*xi_{i+1}.
// Lowest squared index first; each rewrite lowers the total tau-count, so
// this terminates.
inline SteenrodSum normal_form(const SteenrodMonomial& input) {
    const PointBasisElement a{PointRing::uF2, Cone::Positive, 1, 0};
    const PointBasisElement u{PointRing::uF2, Cone::Positive, 0, 1};
    SteenrodSum done;
    std::vector<SteenrodMonomial> work{input};
    work[0].prune();
    while (!work.empty()) {
        SteenrodMonomial m = std::move(work.back());
        work.pop_back();
        int bad = -1;
        for (auto& [i, e] : m.eps)
            if (e >= 2) { bad = i; break; }
        if (bad < 0) {
            add_term(done, m);
            continue;
        }
        SteenrodMonomial base = m;
        base.eps[bad] -= 2;
        base.ta += 1;
        auto push = [&](std::optional<SteenrodMonomial> t) {
            if (t) { t->prune(); work.push_back(std::move(*t)); }
        };
        SteenrodMonomial t1 = base;
        t1.eps[bad + 1] += 1;
        push(coeff_mul(t1, a));
        SteenrodMonomial t2 = base;
        t2.xs[bad + 1] += 1;
        push(coeff_mul(t2, u));
        SteenrodMonomial t3 = base;
        t3.eps[0] += 1;
        t3.xs[bad + 1] += 1;
        push(coeff_mul(t3, a));
    }
    return done;
}

inline SteenrodSum steenrod_multiply(const SteenrodSum& x, const SteenrodSum& y) {
    SteenrodSum out;
    for (const auto& mx : x)
        for (const auto& my : y) {
            auto prod = point_multiply(PointRing::uF2, mx.coeff, my.coeff);
            if (prod.empty()) continue;
            SteenrodMonomial m;
            m.ta = mx.ta + my.ta;
            m.coeff = prod[0].elem;
            m.eps = mx.eps;
            for (auto& [i, e] : my.eps) m.eps[i] += e;
            m.xs = mx.xs;
            for (auto& [i, n] : my.xs) m.xs[i] += n;
            for (const auto& t : normal_form(m)) add_term(out, t);
        }
    return out;
}

// Rank of the dual Steenrod algebra in tri-degree d: the algebra is free
// over the point on admissible monomials, so sum mf2-ranks of d - deg(m)
// over admissible monomials m.  Pruning: generators all have P >= 1 and
// P+Q >= 1, and the point is nonzero only when the residual degree has
// p >= 0 (positive cone) or p+q >= 0 (theta cone), so enumeration stops
// once both P > d.p and P+Q > d.p + d.q.
inline std::int64_t steenrod_rank(TriDegree d) {
    std::int64_t count = 0;
    // generator list: (degree, max exponent)
    std::vector<std::pair<TriDegree, std::int64_t>> gens;
    for (int i = 0; i <= 20; ++i) {
        TriDegree t = tau_degree(i);
        if (t.p > d.p && t.p + t.q > d.p + d.q) break;
        gens.push_back({t, 1});
    }
    for (int i = 1; i <= 20; ++i) {
        TriDegree t = xi_degree(i);
        if (t.p > d.p && t.p + t.q > d.p + d.q) break;
        gens.push_back({t, -1});  // unbounded
    }
    auto rec = [&](auto&& self, std::size_t g, TriDegree acc) -> void {
        if (g == gens.size()) {
            count += mf2_group(d - acc).rank();
            return;
        }
        const auto& [gd, cap] = gens[g];
        TriDegree cur = acc;
        for (std::int64_t e = 0; cap < 0 || e <= cap; ++e) {
            if (e > 0) {
                cur += gd;
                if (cur.p > d.p && cur.p + cur.q > d.p + d.q) break;
            }
            self(self, g + 1, cur);
        }
    };
    rec(rec, 0, {0, 0, 0});
    return count;
}

// ----- expression parsing for the CLI -----
// Grammar: whitespace-separated factors  ta[^e]  a[^i]  u[^j]  t<i>[^e]  x<i>[^e]

inline std::optional<SteenrodMonomial> parse_steenrod_monomial(const std::string& s) {
    SteenrodMonomial m;
    std::int64_t ai = 0, uj = 0;
    std::size_t pos = 0;
    auto num = [&]() -> std::int64_t {
        std::int64_t v = 0;
        bool any = false;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) { v = v * 10 + (s[pos++] - '0'); any = true; }
        return any ? v : -1;
    };
    auto exp = [&]() -> std::int64_t {
        if (pos < s.size() && s[pos] == '^') { ++pos; auto v = num(); return v < 0 ? 1 : v; }
        return 1;
    };
    while (pos < s.size()) {
        if (std::isspace((unsigned char)s[pos])) { ++pos; continue; }
        if (s.compare(pos, 2, "ta") == 0) { pos += 2; m.ta += exp(); continue; }
        char c = s[pos];
        if (c == 'a') { ++pos; ai += exp(); continue; }
        if (c == 'u') { ++pos; uj += exp(); continue; }
        if (c == 't' || c == 'x') {
            ++pos;
            auto i = num();
            if (i < 0) return std::nullopt;
            auto e = exp();
            if (c == 't') m.eps[int(i)] += e; else m.xs[int(i)] += e;
            continue;
        }
        if (c == '1') { ++pos; continue; }
        return std::nullopt;
    }
    m.coeff = {PointRing::uF2, Cone::Positive, ai, uj};
    m.prune();
    return m;
}

inline std::string to_string(const SteenrodMonomial& m) {
    std::string s;
    auto app = [&](const std::string& t) {
        if (!s.empty()) s += " ";
        s += t;
    };
    if (m.ta == 1) app("ta");
    else if (m.ta > 1) app("ta^" + std::to_string(m.ta));
    std::string c = label(m.coeff);
    if (c != "1") app(c);
    for (auto& [i, e] : m.eps)
        app("t" + std::to_string(i) + (e == 1 ? "" : "^" + std::to_string(e)));
    for (auto& [i, n] : m.xs)
        app("x" + std::to_string(i) + (n == 1 ? "" : "^" + std::to_string(n)));
    return s.empty() ? "1" : s;
}

inline std::string to_string(const SteenrodSum& sum) {
    if (sum.empty()) return "0";
    std::string s;
    for (const auto& m : sum) {
        if (!s.empty()) s += " + ";
        s += to_string(m);
    }
    return s;
}

}  // namespace trimot
