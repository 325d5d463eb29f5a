#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trimot {

// Tri-degree (p,q,w): p = simplicial/stem direction, q = sigma direction,
// w = motivic weight.
struct TriDegree {
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::int64_t w = 0;

    friend TriDegree operator+(TriDegree a, TriDegree b) {
        return {a.p + b.p, a.q + b.q, a.w + b.w};
    }
    friend TriDegree operator-(TriDegree a, TriDegree b) {
        return {a.p - b.p, a.q - b.q, a.w - b.w};
    }
    TriDegree operator-() const { return {-p, -q, -w}; }
    TriDegree& operator+=(TriDegree o) { p += o.p; q += o.q; w += o.w; return *this; }
    friend TriDegree operator*(std::int64_t n, TriDegree d) {
        return {n * d.p, n * d.q, n * d.w};
    }
    auto operator<=>(const TriDegree&) const = default;
};

// RO(C2)-degree p + q*sigma.
struct RODegree {
    std::int64_t p = 0;
    std::int64_t q = 0;

    friend RODegree operator+(RODegree a, RODegree b) { return {a.p + b.p, a.q + b.q}; }
    friend RODegree operator-(RODegree a, RODegree b) { return {a.p - b.p, a.q - b.q}; }
    auto operator<=>(const RODegree&) const = default;
};

inline std::string to_string(TriDegree d) {
    return "(" + std::to_string(d.p) + "," + std::to_string(d.q) + "," + std::to_string(d.w) + ")";
}
inline std::string to_string(RODegree d) {
    std::string s = std::to_string(d.p);
    s += (d.q < 0 ? " - " : " + ") + std::to_string(d.q < 0 ? -d.q : d.q) + "s";
    return s;
}

// Betti realization on Picard degrees: (p,q,w) -> p + q*sigma.
inline RODegree betti_degree(TriDegree d) { return {d.p, d.q}; }

// Base change to the closed point: (p,q,w) -> (p+q, w).
inline std::pair<std::int64_t, std::int64_t> base_change_degree(TriDegree d) {
    return {d.p + d.q, d.w};
}

// Artin embedding: p + q*sigma -> (p,q,0).  Section of betti_degree.
inline TriDegree artin_embed(RODegree r) { return {r.p, r.q, 0}; }

enum class Home { Sphere2, MF2, MZ2, uF2, uZ2, Steenrod };

inline const char* to_string(Home h) {
    switch (h) {
        case Home::Sphere2: return "Sphere2";
        case Home::MF2: return "MF2";
        case Home::MZ2: return "MZ2";
        case Home::uF2: return "uF2";
        case Home::uZ2: return "uZ2";
        case Home::Steenrod: return "Steenrod";
    }
    return "?";
}

struct NamedElement {
    std::string name;
    bool tri = true;          // tri-graded vs RO(C2)-graded home
    TriDegree deg3{};         // valid when tri
    RODegree deg2{};          // valid when !tri
    Home home = Home::Sphere2;
};

struct UnknownName : std::runtime_error {
    explicit UnknownName(const std::string& n) : std::runtime_error("unknown element: " + n) {}
};

// Static registry of the commonly used elements and their degrees.
inline const std::vector<NamedElement>& element_registry() {
    static const std::vector<NamedElement> reg = [] {
        std::vector<NamedElement> r;
        auto tri = [&](std::string n, std::int64_t p, std::int64_t q, std::int64_t w, Home h) {
            r.push_back({std::move(n), true, {p, q, w}, {}, h});
        };
        auto ro = [&](std::string n, std::int64_t p, std::int64_t q, Home h) {
            r.push_back({std::move(n), false, {}, {p, q}, h});
        };
        tri("ta", 0, 0, -1, Home::Sphere2);
        tri("a", 0, -1, 0, Home::Sphere2);
        tri("rho", 0, -1, -1, Home::Sphere2);
        tri("u", 1, -1, 0, Home::MF2);
        tri("tau", 1, -1, -1, Home::MF2);
        ro("a_sigma", 0, -1, Home::uF2);
        ro("u_sigma", 1, -1, Home::uF2);
        ro("u_2sigma", 2, -2, Home::uZ2);
        ro("theta", -2, 2, Home::uF2);
        for (int i = 0; i <= 5; ++i) {
            std::int64_t e = std::int64_t(1) << i;
            tri("tau_" + std::to_string(i), e, e - 1, e - 1, Home::Steenrod);
        }
        for (int i = 1; i <= 5; ++i) {
            std::int64_t e = (std::int64_t(1) << i) - 1;
            tri("xi_" + std::to_string(i), e, e, e, Home::Steenrod);
        }
        return r;
    }();
    return reg;
}

inline const NamedElement& named_element(const std::string& name) {
    for (const auto& e : element_registry())
        if (e.name == name) return e;
    throw UnknownName(name);
}

}  // namespace trimot
