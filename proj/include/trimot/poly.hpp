#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace trimot {

// Sorted sparse exponent vector: (variable id, exponent), exponent > 0.
using Mono = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline Mono mono_mul(const Mono& a, const Mono& b) {
    Mono out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) out.push_back(a[i++]);
        else if (a[i].first > b[j].first) out.push_back(b[j++]);
        else { out.push_back({a[i].first, a[i].second + b[j].second}); ++i; ++j; }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

using DegreeFn = std::function<std::int64_t(std::uint32_t)>;

inline std::int64_t mono_degree(const Mono& m, const DegreeFn& deg) {
    std::int64_t d = 0;
    for (auto& [v, e] : m) d += deg(v) * e;
    return d;
}

// Sparse multivariate polynomial with coefficients C.
template <class C>
struct Poly {
    std::map<Mono, C> terms;

    static Poly zero() { return {}; }
    static Poly constant(C c) {
        Poly p;
        if (c != 0) p.terms[{}] = std::move(c);
        return p;
    }
    static Poly var(std::uint32_t v, std::uint32_t e = 1) {
        Poly p;
        p.terms[{{v, e}}] = C(1);
        return p;
    }
    bool is_zero() const { return terms.empty(); }

    void add_term(const Mono& m, const C& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    Poly& operator+=(const Poly& o) {
        for (auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const C& c) {
        Poly out;
        if (c == 0) return out;
        for (auto& [m, x] : a.terms) out.terms[m] = x * c;
        return out;
    }
    friend bool operator==(const Poly&, const Poly&) = default;
};

// Product truncated above internal degree cap (cap < 0 disables truncation).
template <class C>
Poly<C> poly_mul(const Poly<C>& a, const Poly<C>& b, const DegreeFn& deg, std::int64_t cap) {
    Poly<C> out;
    for (auto& [ma, ca] : a.terms) {
        std::int64_t da = cap < 0 ? 0 : mono_degree(ma, deg);
        for (auto& [mb, cb] : b.terms) {
            if (cap >= 0 && da + mono_degree(mb, deg) > cap) continue;
            out.add_term(mono_mul(ma, mb), ca * cb);
        }
    }
    return out;
}

template <class C>
Poly<C> poly_pow(const Poly<C>& a, std::uint32_t e, const DegreeFn& deg, std::int64_t cap) {
    Poly<C> out = Poly<C>::constant(C(1));
    Poly<C> base = a;
    while (e) {
        if (e & 1) out = poly_mul(out, base, deg, cap);
        e >>= 1;
        if (e) base = poly_mul(base, base, deg, cap);
    }
    return out;
}

// Substitution homomorphism: image(v) = nullopt keeps the variable.
template <class C>
Poly<C> poly_subst(const Poly<C>& p,
                   const std::function<std::optional<Poly<C>>(std::uint32_t)>& image,
                   const DegreeFn& deg, std::int64_t cap) {
    Poly<C> out;
    for (auto& [m, c] : p.terms) {
        Poly<C> term = Poly<C>::constant(c);
        for (auto& [v, e] : m) {
            auto img = image(v);
            Poly<C> f = img ? poly_pow(*img, e, deg, cap) : Poly<C>::var(v, e);
            term = poly_mul(term, f, deg, cap);
            if (term.is_zero()) break;
        }
        out += term;
    }
    return out;
}

}  // namespace trimot
