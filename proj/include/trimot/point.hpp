#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimot/grading.hpp"
#include "trimot/group.hpp"

namespace trimot {

// Coefficient rings of a point:
//   uF2 = pi^{C2}_{p+q*sigma} of the constant Mackey functor F2,
//   uZ2 = pi^{C2}_{p+q*sigma} of the 2-complete constant Mackey functor Z.
enum class PointRing { uF2, uZ2 };
enum class Cone { Positive, TwoTower, Theta };

struct MixedRings : std::runtime_error {
    MixedRings() : std::runtime_error("point_multiply: operands live in different rings") {}
};
struct EvenPrime : std::runtime_error {
    EvenPrime() : std::runtime_error("mfp_group: prime must be odd") {}
};

// A monomial basis element of uF2 or uZ2.
//   Positive: a^i u^j  (u = u_sigma in uF2, u_{2sigma} in uZ2)
//   Theta:    theta/(a^i u^j)
//   TwoTower: 2/u^j    (uZ2 only)
struct PointBasisElement {
    PointRing ring = PointRing::uF2;
    Cone cone = Cone::Positive;
    std::int64_t i = 0;
    std::int64_t j = 0;

    auto operator<=>(const PointBasisElement&) const = default;
};

inline RODegree degree(const PointBasisElement& e) {
    const bool z = (e.ring == PointRing::uZ2);
    const std::int64_t u = z ? 2 : 1;  // |u| = (u, -u)
    switch (e.cone) {
        case Cone::Positive: return {u * e.j, -e.i - u * e.j};
        case Cone::TwoTower: return {-u * e.j, u * e.j};
        case Cone::Theta: {
            // |theta| = (-2, 2) in uF2, (-3, 3) in uZ2.
            const std::int64_t t = z ? 3 : 2;
            return {-t - u * e.j, t + e.i + u * e.j};
        }
    }
    return {};
}

inline std::string label(const PointBasisElement& e) {
    auto pow = [](const char* v, std::int64_t n) -> std::string {
        if (n == 0) return "";
        if (n == 1) return v;
        return std::string(v) + "^" + std::to_string(n);
    };
    auto join = [](std::string a, const std::string& b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        return a + " " + b;
    };
    switch (e.cone) {
        case Cone::Positive: {
            std::string s = join(pow("a", e.i), pow("u", e.j));
            return s.empty() ? "1" : s;
        }
        case Cone::TwoTower:
            return "2/" + (e.j == 1 ? std::string("u") : "u^" + std::to_string(e.j));
        case Cone::Theta: {
            std::string d = join(pow("a", e.i), pow("u", e.j));
            return d.empty() ? "theta" : "theta/(" + d + ")";
        }
    }
    return "?";
}

// Label with a ta-power tag, used by the tri-graded rings.
inline std::string label_ta(const PointBasisElement& e, std::int64_t ta_exp) {
    if (ta_exp == 0) return label(e);
    std::string t = ta_exp == 1 ? "ta" : "ta^" + std::to_string(ta_exp);
    std::string base = label(e);
    return base == "1" ? t : t + "*" + base;
}

// Inverse of label(); returns nullopt for labels that are not point monomials.
std::optional<PointBasisElement> parse_point_label(PointRing ring, const std::string& s);

// ----- the bigraded groups -----

// The unique basis element of pi^{C2}_{p+q*sigma} F2, if any.
inline std::optional<PointBasisElement> uf2_basis(std::int64_t p, std::int64_t q) {
    if (p >= 0 && p + q <= 0)
        return PointBasisElement{PointRing::uF2, Cone::Positive, -p - q, p};
    if (p <= -2 && p + q >= 0)
        return PointBasisElement{PointRing::uF2, Cone::Theta, p + q, -2 - p};
    return std::nullopt;
}

inline GroupPresentation uf2_group(std::int64_t p, std::int64_t q) {
    GroupPresentation g;
    if (auto e = uf2_basis(p, q)) g.add(2, label(*e));
    return g;
}

// The unique cyclic summand of pi^{C2}_{p+q*sigma} Z_2, if any.
// order 0 = free over Z_2, order 2 = Z/2.
inline std::optional<std::pair<PointBasisElement, std::int64_t>> uz2_basis(std::int64_t p,
                                                                           std::int64_t q) {
    using R = std::pair<PointBasisElement, std::int64_t>;
    if (p >= 0 && p % 2 == 0 && p + q <= 0) {
        std::int64_t i = -p - q, j = p / 2;
        return R{{PointRing::uZ2, Cone::Positive, i, j}, i == 0 ? 0 : 2};
    }
    if (p <= -2 && p % 2 == 0 && q == -p)
        return R{{PointRing::uZ2, Cone::TwoTower, 0, -p / 2}, 0};
    if (p <= -3 && p % 2 != 0 && p + q >= 0)
        return R{{PointRing::uZ2, Cone::Theta, p + q, (-3 - p) / 2}, 2};
    return std::nullopt;
}

inline GroupPresentation uz2_group(std::int64_t p, std::int64_t q) {
    GroupPresentation g;
    if (auto e = uz2_basis(p, q)) g.add(e->second, label(e->first));
    return g;
}

// ----- multiplication -----

struct PointTerm {
    std::int64_t coeff = 1;
    PointBasisElement elem;
};

inline bool is_two_torsion(const PointBasisElement& e) {
    if (e.ring == PointRing::uF2) return true;
    return e.cone == Cone::Theta || (e.cone == Cone::Positive && e.i >= 1);
}

// Product of two basis elements as a formal integer combination of basis
// elements.  Products across the square-zero part vanish; the TwoTower rules
// are forced by u_{2sigma}-injectivity on the 2-tower (the figures give the
// module structure, not formulas).
inline std::vector<PointTerm> point_multiply(PointRing ring, const PointBasisElement& x,
                                             const PointBasisElement& y) {
    if (x.ring != ring || y.ring != ring) throw MixedRings();
    auto result = [&](std::int64_t c, PointBasisElement e) -> std::vector<PointTerm> {
        if (is_two_torsion(e)) c %= 2;
        if (c == 0) return {};
        return {{c, e}};
    };
    const PointBasisElement* a = &x;
    const PointBasisElement* b = &y;
    auto ordered = [&](Cone ca, Cone cb) {
        if (a->cone == ca && b->cone == cb) return true;
        if (a->cone == cb && b->cone == ca) { std::swap(a, b); return true; }
        return false;
    };
    if (ordered(Cone::Positive, Cone::Positive))
        return result(1, {ring, Cone::Positive, a->i + b->i, a->j + b->j});
    if (ordered(Cone::Positive, Cone::Theta)) {
        std::int64_t i = b->i - a->i, j = b->j - a->j;
        if (i < 0 || j < 0) return {};
        return result(1, {ring, Cone::Theta, i, j});
    }
    if (ordered(Cone::Theta, Cone::Theta)) return {};
    if (ordered(Cone::Positive, Cone::TwoTower)) {
        if (a->i >= 1) return {};  // a_sigma kills the 2-tower
        std::int64_t n = b->j - a->j;
        if (n >= 1) return result(1, {ring, Cone::TwoTower, 0, n});
        return result(2, {ring, Cone::Positive, 0, -n});
    }
    if (ordered(Cone::TwoTower, Cone::TwoTower))
        return result(2, {ring, Cone::TwoTower, 0, a->j + b->j});
    // TwoTower * Theta
    return {};
}

// ----- the tri-graded rings -----

// pi_{p,q,w} MF2 = uF2(p,q)[ta]; zero in positive weight.
inline GroupPresentation mf2_group(TriDegree d) {
    GroupPresentation g;
    if (d.w > 0) return g;
    if (auto e = uf2_basis(d.p, d.q)) g.add(2, label_ta(*e, -d.w));
    return g;
}

inline GroupPresentation mz2_group(TriDegree d) {
    GroupPresentation g;
    if (d.w > 0) return g;
    if (auto e = uz2_basis(d.p, d.q)) g.add(e->second, label_ta(e->first, -d.w));
    return g;
}

// Odd-prime point: F_p[u_{2sigma}^{+-}, ta], |u_{2sigma}| = (2,-2,0).
inline GroupPresentation mfp_group(std::int64_t prime, TriDegree d) {
    if (prime < 3 || prime % 2 == 0) throw EvenPrime();
    GroupPresentation g;
    if (d.w > 0 || d.p % 2 != 0 || d.q != -d.p) return g;
    std::int64_t j = d.p / 2;
    std::string gen;
    if (j == 0) gen = "1";
    else if (j == 1) gen = "u";
    else gen = "u^" + std::to_string(j);
    if (d.w < 0) {
        std::string t = d.w == -1 ? "ta" : "ta^" + std::to_string(-d.w);
        gen = gen == "1" ? t : gen + "*" + t;
    }
    g.add(prime, gen);
    return g;
}

// ----- label parsing (charts, CLI) -----

inline std::optional<PointBasisElement> parse_point_label(PointRing ring, const std::string& in) {
    // strip a leading "ta^e*" / "ta*" / bare "ta^e" tag
    std::string s = in;
    if (s.rfind("ta", 0) == 0) {
        std::size_t k = 2;
        while (k < s.size() && (s[k] == '^' || std::isdigit((unsigned char)s[k]))) ++k;
        if (k == s.size()) return PointBasisElement{ring, Cone::Positive, 0, 0};
        if (s[k] == '*') s = s.substr(k + 1);
    }
    auto parse_exp = [](const std::string& t, std::size_t& pos) -> std::int64_t {
        if (pos < t.size() && t[pos] == '^') {
            ++pos;
            std::int64_t v = 0;
            while (pos < t.size() && std::isdigit((unsigned char)t[pos])) v = v * 10 + (t[pos++] - '0');
            return v;
        }
        return 1;
    };
    auto parse_au = [&](const std::string& t, std::int64_t& i, std::int64_t& j) -> bool {
        std::size_t pos = 0;
        i = j = 0;
        while (pos < t.size()) {
            if (t[pos] == ' ') { ++pos; continue; }
            if (t[pos] == 'a') { ++pos; i += parse_exp(t, pos); }
            else if (t[pos] == 'u') { ++pos; j += parse_exp(t, pos); }
            else return false;
        }
        return true;
    };
    if (s == "1") return PointBasisElement{ring, Cone::Positive, 0, 0};
    if (s == "theta") return PointBasisElement{ring, Cone::Theta, 0, 0};
    if (s.rfind("theta/(", 0) == 0 && s.back() == ')') {
        std::int64_t i, j;
        if (parse_au(s.substr(7, s.size() - 8), i, j))
            return PointBasisElement{ring, Cone::Theta, i, j};
        return std::nullopt;
    }
    if (s.rfind("2/u", 0) == 0) {
        std::size_t pos = 3;
        std::int64_t n = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos; n = 0;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) n = n * 10 + (s[pos++] - '0');
        }
        if (pos != s.size()) return std::nullopt;
        return PointBasisElement{ring, Cone::TwoTower, 0, n};
    }
    std::int64_t i, j;
    if (parse_au(s, i, j)) return PointBasisElement{ring, Cone::Positive, i, j};
    return std::nullopt;
}

}  // namespace trimot
