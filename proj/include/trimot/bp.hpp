#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trimot/poly.hpp"
#include "trimot/snf.hpp"

namespace trimot {

using Rat = boost::multiprecision::cpp_rational;

struct CapTooSmall : std::runtime_error {
    CapTooSmall() : std::runtime_error("degree cap excludes the last generator") {}
};
struct NotIntegral : std::runtime_error {
    NotIntegral() : std::runtime_error("structure map has a non-integer coefficient") {}
};

// Variable ids:  v_i = i  (1 <= i < 100),  t_i in tensor slot k = 100k + i,
// log coefficients m_i = 10000 + i (rational bootstrap only).
inline std::uint32_t var_v(int i) { return std::uint32_t(i); }
inline std::uint32_t var_t(int slot, int i) { return std::uint32_t(100 * slot + i); }
inline std::uint32_t var_m(int i) { return std::uint32_t(10000 + i); }
inline int var_slot(std::uint32_t v) { return v >= 10000 ? -1 : int(v / 100); }
inline int var_index(std::uint32_t v) { return v >= 10000 ? int(v - 10000) : int(v % 100); }

// |v_i| = |t_i| = |m_i| = 2(2^i - 1)
inline std::int64_t gen_degree(std::uint32_t v) {
    return 2 * ((std::int64_t(1) << var_index(v)) - 1);
}

// The 2-typical Hopf algebroid (A, Gamma) = (Z[v1..vN], A[t1..tN]) with
// Hazewinkel generators, exact (everything is homogeneous, no truncation).
struct BPPresentation {
    int N = 0;
    std::int64_t D = 0;                // advertised internal-degree cap
    std::vector<Poly<Int>> eta_r;      // eta_r[i]: poly in v, t@slot1 (i = 1..N)
    std::vector<Poly<Int>> delta;      // delta[i]: poly in v, t@slots 1,2
};

namespace detail {

inline Poly<Rat> to_rat(const Poly<Int>& p) {
    Poly<Rat> out;
    for (auto& [m, c] : p.terms) out.terms[m] = Rat(c);
    return out;
}
inline Poly<Int> to_int(const Poly<Rat>& p) {
    Poly<Int> out;
    for (auto& [m, c] : p.terms) {
        if (denominator(c) != 1) throw NotIntegral();
        out.terms[m] = numerator(c);
    }
    return out;
}

}  // namespace detail

// Rename tensor slots: t@slot k -> t@slot map(k); v untouched.
template <class C>
Poly<C> slot_map(const Poly<C>& p, const std::function<int(int)>& f) {
    Poly<C> out;
    for (auto& [m, c] : p.terms) {
        Mono nm;
        for (auto& [v, e] : m) {
            int s = var_slot(v);
            nm.push_back({s >= 1 ? var_t(f(s), var_index(v)) : v, e});
        }
        std::sort(nm.begin(), nm.end());
        out.add_term(nm, c);
    }
    return out;
}

// Move a coefficient polynomial in v across tensor slots 1..j-1 so it sits at
// the front: one step left across slot j-1 applies eta_r (t's land in slot
// j-1), then recurse on the new coefficients.
inline Poly<Int> push_coeff(const BPPresentation& pres, const Poly<Int>& c, int j) {
    if (j <= 1) return c;
    auto image = [&](std::uint32_t v) -> std::optional<Poly<Int>> {
        if (var_slot(v) != 0) return std::nullopt;  // only v-variables move
        Poly<Int> er = slot_map(pres.eta_r[var_index(v)], [&](int) { return j - 1; });
        // the v-parts of er are now coefficients one slot further left
        Poly<Int> out;
        for (auto& [m, coeff] : er.terms) {
            Poly<Int> vpart = Poly<Int>::constant(coeff);
            Mono tpart;
            for (auto& [vv, e] : m) {
                if (var_slot(vv) == 0) vpart = poly_mul(vpart, Poly<Int>::var(vv, e), gen_degree, -1);
                else tpart.push_back({vv, e});
            }
            Poly<Int> pushed = push_coeff(pres, vpart, j - 1);
            Poly<Int> term;
            term.add_term(tpart, 1);
            out += poly_mul(pushed, term, gen_degree, -1);
        }
        return out;
    };
    return poly_subst<Int>(c, image, gen_degree, std::int64_t(-1));
}

inline BPPresentation build_presentation(int N, std::int64_t D) {
    if (N < 1 || D < 0) throw std::invalid_argument("build_presentation: bad arguments");
    if (2 * ((std::int64_t(1) << N) - 1) > D) throw CapTooSmall();
    using P = Poly<Rat>;
    auto pw = [](P b, std::uint32_t e) { return poly_pow(b, e, gen_degree, std::int64_t(-1)); };
    auto mul = [](const P& a, const P& b) { return poly_mul(a, b, gen_degree, std::int64_t(-1)); };

    // log coefficients: 2 m_n = sum_{i<n} m_i v_{n-i}^{2^i}
    std::vector<P> m(N + 1);
    m[0] = P::constant(1);
    for (int n = 1; n <= N; ++n) {
        P acc;
        for (int i = 0; i < n; ++i) acc += mul(m[i], pw(P::var(var_v(n - i)), 1u << i));
        m[n] = acc * Rat(1, 2);
    }
    // eta_r on the log: eta_r(m_n) = sum_{i<=n} m_i t_{n-i}^{2^i}, t_0 = 1
    std::vector<P> er_m(N + 1);
    er_m[0] = P::constant(1);
    for (int n = 1; n <= N; ++n) {
        P acc = m[n];
        for (int i = 0; i < n; ++i) acc += mul(m[i], pw(P::var(var_t(1, n - i)), 1u << i));
        er_m[n] = acc;
    }
    // solve for eta_r(v_n) from 2 eta_r(m_n) = sum_{i<n} eta_r(m_i) eta_r(v_{n-i})^{2^i}
    std::vector<P> er_v(N + 1);
    for (int n = 1; n <= N; ++n) {
        P acc = er_m[n] * Rat(2);
        for (int i = 1; i < n; ++i) acc -= mul(er_m[i], pw(er_v[n - i], 1u << i));
        er_v[n] = acc;
    }
    // solve for Delta(t_n) from
    //   sum_{i+j=n} m_i Delta(t_j)^{2^i} = sum_{i+j+k=n} m_i t_j^{2^i} (x) t_k^{2^{i+j}}
    std::vector<P> dt(N + 1);
    dt[0] = P::constant(1);
    for (int n = 1; n <= N; ++n) {
        P acc;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                int k = n - i - j;
                P term = m[i];
                if (j > 0) term = mul(term, pw(P::var(var_t(1, j)), 1u << i));
                if (k > 0) term = mul(term, pw(P::var(var_t(2, k)), 1u << (i + j)));
                acc += term;
            }
        for (int i = 1; i <= n; ++i) acc -= mul(m[i], pw(dt[n - i], 1u << i));
        dt[n] = acc;
    }

    BPPresentation pres;
    pres.N = N;
    pres.D = D;
    pres.eta_r.resize(N + 1);
    pres.delta.resize(N + 1);
    for (int n = 1; n <= N; ++n) {
        pres.eta_r[n] = detail::to_int(er_v[n]);
        pres.delta[n] = detail::to_int(dt[n]);
    }

    // counit checks: kill all t's in eta_r(v_i) -> v_i; (eps (x) id) and
    // (id (x) eps) on Delta(t_i) -> t_i
    auto kill_slot = [&](const Poly<Int>& p, int slot) {
        return poly_subst<Int>(p, [&](std::uint32_t v) -> std::optional<Poly<Int>> {
            if (var_slot(v) == slot) return Poly<Int>::zero();
            return std::nullopt;
        }, gen_degree, std::int64_t(-1));
    };
    for (int n = 1; n <= N; ++n) {
        if (kill_slot(pres.eta_r[n], 1) != Poly<Int>::var(var_v(n)))
            throw std::logic_error("counit check failed for eta_r");
        Poly<Int> left = kill_slot(pres.delta[n], 1);
        if (left != Poly<Int>::var(var_t(2, n)))
            throw std::logic_error("left counit check failed for Delta");
        Poly<Int> right = kill_slot(pres.delta[n], 2);
        if (right != Poly<Int>::var(var_t(1, n)))
            throw std::logic_error("right counit check failed for Delta");
    }
    // coassociativity in three slots, with coefficient pushing on the right
    for (int n = 1; n <= N; ++n) {
        auto lhs = poly_subst<Int>(pres.delta[n], [&](std::uint32_t v) -> std::optional<Poly<Int>> {
            int s = var_slot(v);
            if (s == 1) return pres.delta[var_index(v)];       // slots (1,2)
            if (s == 2) return Poly<Int>::var(var_t(3, var_index(v)));
            return std::nullopt;
        }, gen_degree, std::int64_t(-1));
        auto rhs = poly_subst<Int>(pres.delta[n], [&](std::uint32_t v) -> std::optional<Poly<Int>> {
            int s = var_slot(v);
            if (s != 2) return std::nullopt;
            Poly<Int> d = slot_map(pres.delta[var_index(v)], [](int k) { return k + 1; });
            // push the v-coefficients of d across slot 1
            Poly<Int> out;
            for (auto& [mm, coeff] : d.terms) {
                Poly<Int> vpart = Poly<Int>::constant(coeff);
                Mono tpart;
                for (auto& [vv, e] : mm) {
                    if (var_slot(vv) == 0) vpart = poly_mul(vpart, Poly<Int>::var(vv, e), gen_degree, std::int64_t(-1));
                    else tpart.push_back({vv, e});
                }
                Poly<Int> term;
                term.add_term(tpart, 1);
                out += poly_mul(push_coeff(pres, vpart, 2), term, gen_degree, std::int64_t(-1));
            }
            return out;
        }, gen_degree, std::int64_t(-1));
        if (lhs != rhs) throw std::logic_error("coassociativity check failed");
    }
    return pres;
}

}  // namespace trimot
