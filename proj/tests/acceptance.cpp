// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its expectations independently of the
// unit suites.
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "trimot/bockstein.hpp"
#include "trimot/chart.hpp"
#include "trimot/cobar.hpp"
#include "trimot/cta.hpp"
#include "trimot/grading.hpp"
#include "trimot/point.hpp"
#include "trimot/regions.hpp"
#include "trimot/steenrod.hpp"

using namespace trimot;

namespace {

int g_failures = 0;

template <typename F>
void criterion(int number, const std::string& what, F body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        detail = body();
        ok = detail.empty();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (!ok) ++g_failures;
    std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " (" << ms
              << " ms) " << what;
    if (!ok) std::cout << " [" << detail << "]";
    std::cout << "\n";
}

std::string maybe(bool ok, const std::string& msg) { return ok ? "" : msg; }

struct PQ {
    std::int64_t p, q;
};

// one drawn multiplication line: elem * (class at src) = (class at dst)
struct Line {
    std::string elem;
    PQ src, dst;
    std::int64_t coeff = 1;  // expected coefficient mod; 1 = any odd, 2 = exactly 2
};

std::string check_point_figure(PointRing ring, std::int64_t p0, std::int64_t p1, std::int64_t q0,
                               std::int64_t q1, const std::map<std::pair<std::int64_t, std::int64_t>,
                                                               std::int64_t>& expected,
                               const std::vector<Line>& lines) {
    for (std::int64_t p = p0; p <= p1; ++p)
        for (std::int64_t q = q0; q <= q1; ++q) {
            GroupPresentation g =
                ring == PointRing::uF2 ? uf2_group(p, q) : uz2_group(p, q);
            auto it = expected.find({p, q});
            if (it == expected.end()) {
                if (!g.zero())
                    return "unexpected class at (" + std::to_string(p) + "," + std::to_string(q) +
                           ")";
                continue;
            }
            if (g.summands.size() != 1 || g.summands[0].order != it->second)
                return "wrong group at (" + std::to_string(p) + "," + std::to_string(q) + ")";
        }
    if (expected.size() !=
        [&] {
            std::size_t n = 0;
            for (auto& [pq, o] : expected)
                if (pq.first >= p0 && pq.first <= p1 && pq.second >= q0 && pq.second <= q1) ++n;
            return n;
        }())
        return "expected class outside the stated range";
    for (const auto& line : lines) {
        auto grp = [&](PQ d) {
            return ring == PointRing::uF2 ? uf2_group(d.p, d.q) : uz2_group(d.p, d.q);
        };
        GroupPresentation src = grp(line.src), dst = grp(line.dst);
        if (src.summands.size() != 1 || dst.summands.size() != 1)
            return "structure line endpoint missing";
        auto e = parse_point_label(ring, line.elem);
        auto x = parse_point_label(ring, src.summands[0].generator);
        auto y = parse_point_label(ring, dst.summands[0].generator);
        if (!e || !x || !y) return "unparseable label on a structure line";
        bool hit = false;
        for (const auto& term : point_multiply(ring, *e, *x)) {
            if (!(term.elem == *y)) continue;
            if (line.coeff == 2 ? term.coeff == 2 : term.coeff % 2 != 0) hit = true;
        }
        if (!hit)
            return "structure line " + line.elem + "*(" + std::to_string(line.src.p) + "," +
                   std::to_string(line.src.q) + ") not reproduced";
    }
    return "";
}

std::string criterion1() {
    // bigraded F2 point: every class is a single F2, in the polynomial cone
    // or the divided theta cone
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> f2_classes;
    for (std::int64_t n = 0; n <= 4; ++n)        // u^n a^k at (n, -n-k)
        for (std::int64_t k = 0; n + k <= 4; ++k) f2_classes[{n, -n - k}] = 2;
    for (std::int64_t n = 0; n <= 4; ++n)        // theta/(a^k u^n) at (-2-n, 2+n+k)
        for (std::int64_t k = 0; n + k <= 4; ++k) f2_classes[{-2 - n, 2 + n + k}] = 2;
    std::vector<Line> f2_lines;
    for (std::int64_t n = 0; n <= 3; ++n)
        for (std::int64_t k = 0; n + k <= 3; ++k) {
            f2_lines.push_back({"a", {n, -n - k}, {n, -n - k - 1}});
            f2_lines.push_back({"u", {n, -n - k}, {n + 1, -n - k - 1}});
        }
    for (std::int64_t n = 0; n <= 3; ++n)
        for (std::int64_t k = 0; n + k <= 3; ++k) {
            // a * theta/(a^{k+1} u^n), u * theta/(a^k u^{n+1})
            f2_lines.push_back({"a", {-2 - n, 2 + n + k + 1}, {-2 - n, 2 + n + k}});
            f2_lines.push_back({"u", {-2 - n - 1, 2 + n + 1 + k}, {-2 - n, 2 + n + k}});
        }
    std::string err = check_point_figure(PointRing::uF2, -6, 4, -4, 6, f2_classes, f2_lines);
    if (!err.empty()) return "uF2: " + err;

    // bigraded 2-adic point: squares are Z2 (order 0), circles are F2
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> z2_classes;
    for (std::int64_t n = 0; 2 * n <= 6; ++n)    // u2^n a^k at (2n, -2n-k)
        for (std::int64_t k = 0; 2 * n + k <= 5 || (k == 0 && 2 * n <= 6); ++k) {
            std::int64_t p = 2 * n, q = -2 * n - k;
            if (p > 6 || q < -5) continue;
            z2_classes[{p, q}] = k == 0 ? 0 : 2;
        }
    for (std::int64_t n = 1; 2 * n <= 8; ++n) z2_classes[{-2 * n, 2 * n}] = 0;  // 2/u2^n
    for (std::int64_t n = 0; n <= 3; ++n)        // theta/(a^k u2^n) at (-3-2n, 3+2n+k)
        for (std::int64_t k = 0; 3 + 2 * n + k <= 9; ++k) z2_classes[{-3 - 2 * n, 3 + 2 * n + k}] = 2;
    std::vector<Line> z2_lines;
    for (std::int64_t k = 0; k <= 4; ++k) z2_lines.push_back({"a", {0, -k}, {0, -k - 1}});
    for (std::int64_t k = 0; k <= 2; ++k) z2_lines.push_back({"a", {2, -2 - k}, {2, -3 - k}});
    z2_lines.push_back({"a", {4, -4}, {4, -5}});
    z2_lines.push_back({"u", {0, 0}, {2, -2}});
    z2_lines.push_back({"u", {2, -2}, {4, -4}});
    z2_lines.push_back({"u", {-2, 2}, {0, 0}, 2});  // red line: hits twice the generator
    for (std::int64_t n = 2; n <= 4; ++n)
        z2_lines.push_back({"u", {-2 * n, 2 * n}, {-2 * n + 2, 2 * n - 2}});
    for (std::int64_t k = 0; k <= 4; ++k) z2_lines.push_back({"a", {-3, 4 + k}, {-3, 3 + k}});
    for (std::int64_t k = 0; k <= 2; ++k) z2_lines.push_back({"a", {-5, 6 + k}, {-5, 5 + k}});
    z2_lines.push_back({"a", {-7, 8}, {-7, 7}});
    for (std::int64_t n = 1; n <= 3; ++n)
        z2_lines.push_back({"u", {-3 - 2 * n, 3 + 2 * n}, {-1 - 2 * n, 1 + 2 * n}});
    return check_point_figure(PointRing::uZ2, -9, 6, -5, 9, z2_classes, z2_lines);
}

std::string criterion2() {
    for (std::int64_t p = -12; p <= 12; ++p)
        for (std::int64_t q = -12; q <= 12; ++q) {
            GroupPresentation f0 = mf2_group({p, q, 0}), z0 = mz2_group({p, q, 0});
            for (std::int64_t w = -6; w <= 6; ++w) {
                if (w > 0) {
                    if (!mf2_group({p, q, w}).zero() || !mz2_group({p, q, w}).zero())
                        return "nonzero in positive weight";
                } else {
                    if (!mf2_group({p, q, w}).same_shape(f0) ||
                        !mz2_group({p, q, w}).same_shape(z0))
                        return "weight dependence at w <= 0";
                }
            }
        }
    return "";
}

std::string criterion3() {
    TriDegree rho = named_element("rho").deg3, tau = named_element("tau").deg3;
    TriDegree ta = named_element("ta").deg3, a = named_element("a").deg3;
    TriDegree u = named_element("u").deg3;
    if (!(rho == ta + a)) return "rho != ta + a";
    if (!(tau == ta + u)) return "tau != ta + u";
    GroupPresentation g = mf2_group({1, -1, -1});
    if (g.summands.size() != 1 || g.summands[0].order != 2) return "wrong group at (1,-1,-1)";
    if (g.summands[0].generator != "ta*u") return "wrong generator at (1,-1,-1)";
    return "";
}

// series-convolution rank oracle, independent of the normal-form machinery
std::map<std::pair<int, int>, std::int64_t> monomial_counts(int cap) {
    std::map<std::pair<int, int>, std::int64_t> counts{{{0, 0}, 1}};
    auto mul_tau = [&](int P, int Q) {
        auto next = counts;
        for (auto& [pq, c] : counts) {
            int np = pq.first + P, nq = pq.second + Q;
            if (np + nq <= cap) next[{np, nq}] += c;
        }
        counts = next;
    };
    auto mul_xi = [&](int P, int Q) {
        std::map<std::pair<int, int>, std::int64_t> next = counts;
        for (auto it = next.begin(); it != next.end(); ++it) {
            int np = it->first.first + P, nq = it->first.second + Q;
            if (np + nq <= cap) next[{np, nq}] += it->second;
        }
        counts = next;
    };
    for (int i = 0;; ++i) {
        int P = 1 << i, Q = (1 << i) - 1;
        if (P + Q > cap) break;
        mul_tau(P, Q);
    }
    for (int i = 1;; ++i) {
        int P = (1 << i) - 1, Q = P;
        if (2 * P > cap) break;
        mul_xi(P, Q);
    }
    return counts;
}

std::int64_t oracle_rank(TriDegree d, const std::map<std::pair<int, int>, std::int64_t>& counts) {
    auto point_rank = [](std::int64_t p, std::int64_t q, std::int64_t w) -> std::int64_t {
        if (w > 0) return 0;
        if (p >= 0 && p + q <= 0) return 1;
        if (p <= -2 && p + q >= 0) return 1;
        return 0;
    };
    std::int64_t total = 0;
    for (auto& [pq, c] : counts)
        total += c * point_rank(d.p - pq.first, d.q - pq.second, d.w - pq.second);
    return total;
}

std::string criterion4() {
    for (int i = 0; i <= 4; ++i) {
        SteenrodMonomial sq;
        sq.eps[i] = 2;
        TriDegree lhs = degree(sq);
        for (const auto& term : normal_form(sq))
            if (!(degree(term) == lhs)) return "tau_" + std::to_string(i) + "^2 inhomogeneous";
    }
    auto counts = monomial_counts(24);
    for (std::int64_t p = -10; p <= 10; ++p)
        for (std::int64_t q = -10; q <= 10; ++q)
            for (std::int64_t w = -10; w <= 10; ++w)
                if (steenrod_rank({p, q, w}) != oracle_rank({p, q, w}, counts))
                    return "rank mismatch at (" + std::to_string(p) + "," + std::to_string(q) +
                           "," + std::to_string(w) + ")";
    return "";
}

std::string criterion5() {
    auto pres = build_presentation(3, 24);
    // (a) the differential squares to zero, exactly over the integers
    CobarComplex cx(pres, 6, 24);
    for (int s = 0; s + 1 <= 6; ++s)
        for (std::int64_t deg = 0; deg <= 24; deg += 2) {
            const auto& d0 = cx.differential(s, deg);
            const auto& d1 = cx.differential(s + 1, deg);
            for (const auto& col : d0) {
                std::map<std::size_t, Int> image;
                for (const auto& [row, v] : col)
                    if (row < d1.size())
                        for (const auto& [row2, v2] : d1[row]) image[row2] += v * v2;
                for (const auto& [row2, v2] : image)
                    if (v2 != 0) return "d^2 != 0 at s=" + std::to_string(s);
            }
        }
    auto z = ext(pres, ExtCoeffs::Z, 6, 24);
    auto f2 = ext(pres, ExtCoeffs::F2, 6, 24);
    // (b) unit and concentration region
    const GroupPresentation& unit = z.at(0, 0);
    if (unit.summands.size() != 1 || unit.summands[0].order != 0) return "Ext^{0,0} != Z2";
    for (const auto& [key, g] : z.groups)
        if (2 * key.first > key.second && !g.zero()) return "nonzero outside {0 <= s <= 2w}";
    for (const auto& [key, g] : f2.groups)
        if (2 * key.first > key.second && !g.zero()) return "nonzero outside {0 <= s <= 2w} (F2)";
    // (c) first line at degree 2, stable in the number of generators
    const GroupPresentation& e12 = z.at(1, 2);
    if (e12.summands.size() != 1 || e12.summands[0].order != 2) return "Ext^{1,2} != Z/2";
    auto small = ext(build_presentation(2, 6), ExtCoeffs::Z, 2, 6);
    if (!small.at(1, 2).same_shape(e12)) return "Ext^{1,2} differs between N=2 and N=3";
    // (d) long-exact-sequence rank accounting between Z and F2 coefficients
    for (int s = 0; s + 1 <= 6; ++s)
        for (std::int64_t deg = 0; deg <= 24; deg += 2) {
            std::size_t lhs = f2.at(s, deg).rank();
            std::size_t rhs = z.at(s, deg).free_rank() + z.at(s, deg).torsion_count() +
                              z.at(s + 1, deg).torsion_count();
            if (lhs != rhs) return "rank accounting fails at s=" + std::to_string(s);
        }
    return "";
}

struct CtaTables {
    ExtTable z, f2;
};

const CtaTables& cta_tables() {
    static const CtaTables t = [] {
        auto pres = build_presentation(3, 16);
        return CtaTables{ext(pres, ExtCoeffs::Z, 8, 16), ext(pres, ExtCoeffs::F2, 8, 16)};
    }();
    return t;
}

std::string criterion6() {
    const auto& t = cta_tables();  // the cached Ext input
    GroupPresentation unit = cta_group({0, 0, 0}, t.z, t.f2);
    if (unit.summands.size() != 1 || unit.summands[0].order != 0) return "cta(0,0,0) != Z2";
    std::map<TriDegree, GroupPresentation> table;
    for (std::int64_t p = -6; p <= 10; ++p)
        for (std::int64_t q = -8; q <= 8; ++q)
            for (std::int64_t w = -4; w <= 8; ++w) {
                GroupPresentation g = cta_group({p, q, w}, t.z, t.f2);
                if (w < 0 && !g.zero()) return "nonzero in negative weight";
                table[{p, q, w}] = std::move(g);
            }
    if (!validate(table, 2).empty()) return "entry outside region 2";
    return "";
}

std::string criterion7() {
    const auto& t = cta_tables();
    std::map<TriDegree, GroupPresentation> ca, ainv;
    for (std::int64_t p = -6; p <= 10; ++p)
        for (std::int64_t q = -8; q <= 8; ++q)
            for (std::int64_t w = -4; w <= 8; ++w) {
                TriDegree d{p, q, w};
                ca[d] = ca_cta_group(d, t.z);
                ainv[d] = cta_a_inverted_group(d, t.f2);
                if (!ca[d].same_shape(ca_cta_group({p + 1, q - 1, w}, t.z)))
                    return "ca_cta not (1,-1,0)-periodic";
                if (q > -8 && !ainv[d].same_shape(ainv[{p, q - 1, w}]))
                    return "a-inverted groups depend on q";
            }
    if (!validate(ca, 5).empty()) return "ca_cta entry outside region 5";
    if (!validate(ainv, 8).empty()) return "a-inverted entry outside region 8";
    return "";
}

std::string criterion8() {
    TriBox wide{{-20, -20, -20}, {20, 20, 20}};
    std::mt19937 rng(1789);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng() % 5;
        BocksteinInput in;
        TaComplex oracle;
        std::vector<int> role(n, 0);
        std::size_t pairs = (rng() % (n / 2)) + 1;
        std::size_t made = 0;
        for (std::size_t i = 0; i + 1 < n && made < pairs; i += 2, ++made) {
            role[i] = 1;
            role[i + 1] = 2;
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::string label = "g" + std::to_string(i);
            TriDegree d{std::int64_t(rng() % 7) - 3, std::int64_t(rng() % 7) - 3,
                        std::int64_t(rng() % 4)};
            if (role[i] == 2) {
                int order = 1 + int(rng() % 3);
                d = in.generators.back().degree + TriDegree{-1, 0, order};
                in.differentials.push_back(
                    {order, parse_bmono(in.generators.back().label), {parse_bmono(label)}});
                oracle.diff.push_back({in.generators.back().label, label, order});
            }
            in.generators.push_back({label, d, false});
            in.basis.push_back(parse_bmono(label));
            oracle.gens.push_back({label, d, false});
        }
        auto res = run(in, 4, wide);
        if (!abutment_check(res, oracle, wide)) return "abutment mismatch";
        std::map<std::pair<TriDegree, int>, std::size_t> prev;
        for (const auto& page : res.pages) {
            std::map<std::pair<TriDegree, int>, std::size_t> cur;
            for (const auto& c : page.cells) cur[{c.mdeg, c.k}] = c.group.rank();
            if (page.r > 1)
                for (const auto& [key, dim] : cur) {
                    auto it = prev.find(key);
                    if (it == prev.end() || it->second < dim) return "page rank increased";
                }
            prev = std::move(cur);
        }
    }
    std::ifstream f("data/kq_cta_bockstein.json");
    if (!f) f.open("../data/kq_cta_bockstein.json");
    if (!f) return "bundled dataset not found";
    nlohmann::json j;
    f >> j;
    auto in = load_bockstein_input(j);
    leibniz_close(in);  // degree-contract and Leibniz checks throw on failure
    auto res = run(in, 2, TriBox{{0, -4, 0}, {4, 4, 4}});
    for (const auto& page : res.pages) {
        std::vector<GroupTableRecord> records;
        for (const auto& c : page.cells)
            records.push_back({{c.mdeg.p, c.mdeg.q, c.mdeg.w - c.k}, c.group});
        ChartSpec spec;
        spec.plane = ChartPlane::QW;
        spec.fix_p = 2;
        spec.x_min = -4;
        spec.x_max = 4;
        spec.y_min = -4;
        spec.y_max = 4;
        std::string svg = render(records, spec);
        if (svg.rfind("<svg", 0) != 0 || svg.find("</svg>") == std::string::npos)
            return "page chart did not render";
    }
    return "";
}

std::string read_file(const std::string& name) {
    std::ifstream f(name, std::ios::binary);
    if (!f) f.open("../" + name, std::ios::binary);
    if (!f) return {};
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string criterion9() {
    auto table_of = [](PointRing ring, std::int64_t p0, std::int64_t p1, std::int64_t q0,
                       std::int64_t q1) {
        std::vector<GroupTableRecord> t;
        for (std::int64_t p = p0; p <= p1; ++p)
            for (std::int64_t q = q0; q <= q1; ++q) {
                GroupPresentation g = ring == PointRing::uF2 ? uf2_group(p, q) : uz2_group(p, q);
                if (!g.zero()) t.push_back({{p, q}, std::move(g)});
            }
        return t;
    };
    ChartSpec f2_spec;
    f2_spec.ring = PointRing::uF2;
    f2_spec.x_min = -6;
    f2_spec.x_max = 4;
    f2_spec.y_min = -4;
    f2_spec.y_max = 6;
    f2_spec.edges = {{"a", "#000000"}, {"u", "#888888"}};
    if (render(table_of(PointRing::uF2, -6, 4, -4, 6), f2_spec) !=
        read_file("tests/golden/uf2_point.svg"))
        return "uF2 chart differs from the golden snapshot";
    ChartSpec z2_spec;
    z2_spec.ring = PointRing::uZ2;
    z2_spec.x_min = -9;
    z2_spec.x_max = 6;
    z2_spec.y_min = -5;
    z2_spec.y_max = 9;
    z2_spec.edges = {{"a", "#000000"}, {"u", "#888888"}};
    if (render(table_of(PointRing::uZ2, -9, 6, -5, 9), z2_spec) !=
        read_file("tests/golden/uz2_point.svg"))
        return "uZ2 chart differs from the golden snapshot";

    std::mt19937 rng(271828);
    for (int it = 0; it < 100; ++it) {
        ChartSpec s;
        s.x_min = -3;
        s.x_max = 3;
        s.y_min = -3;
        s.y_max = 3;
        std::vector<GroupTableRecord> table;
        std::size_t squares = 0, circles = 0;
        std::set<std::pair<std::int64_t, std::int64_t>> used;
        for (int n = int(rng() % 12); n > 0; --n) {
            std::int64_t p = std::int64_t(rng() % 7) - 3, q = std::int64_t(rng() % 7) - 3;
            if (!used.insert({p, q}).second) continue;
            GroupTableRecord rec{{p, q}, {}};
            for (int k = int(rng() % 3) + 1; k > 0; --k) {
                std::int64_t order = (rng() % 2) ? 0 : (std::int64_t(1) << (1 + rng() % 3));
                (order == 0 ? squares : circles) += 1;
                rec.group.add(order, "g" + std::to_string(k));
            }
            table.push_back(std::move(rec));
        }
        std::string svg = render(table, s);
        std::size_t rects = 0, circ = 0;
        for (std::size_t pos = 0; (pos = svg.find("<rect x=", pos)) != std::string::npos; ++pos)
            ++rects;
        for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos)
            ++circ;
        if (rects != squares || circ != circles) return "glyph count mismatch";
    }
    return "";
}

}  // namespace

int main() {
    criterion(1, "bigraded point rings match the reference charts exactly", criterion1);
    criterion(2, "tri-graded point rings vanish for w > 0 and forget w for w <= 0", criterion2);
    criterion(3, "element registry relations and the ta*u class", criterion3);
    criterion(4, "Steenrod relation homogeneity and rank oracle agreement", criterion4);
    criterion(5, "Ext engine at N=3, s<=6, degree<=24: d^2, region, unit, accounting",
              criterion5);
    criterion(6, "cta assembly: weight vanishing, region 2, unit group", criterion6);
    criterion(7, "ca_cta periodicity/region and a-inverted q-independence/region", criterion7);
    criterion(8, "Bockstein engine: randomized abutment checks and bundled dataset", criterion8);
    criterion(9, "chart golden snapshots and glyph-count invariant", criterion9);
    return g_failures == 0 ? 0 : 1;
}
