#include <catch2/catch_amalgamated.hpp>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "trimot/chart.hpp"

using namespace trimot;

namespace {

std::vector<GroupTableRecord> uf2_table(std::int64_t p0, std::int64_t p1, std::int64_t q0,
                                        std::int64_t q1) {
    std::vector<GroupTableRecord> t;
    for (std::int64_t p = p0; p <= p1; ++p)
        for (std::int64_t q = q0; q <= q1; ++q) {
            GroupPresentation g = uf2_group(p, q);
            if (!g.zero()) t.push_back({{p, q}, std::move(g)});
        }
    return t;
}

std::vector<GroupTableRecord> uz2_table(std::int64_t p0, std::int64_t p1, std::int64_t q0,
                                        std::int64_t q1) {
    std::vector<GroupTableRecord> t;
    for (std::int64_t p = p0; p <= p1; ++p)
        for (std::int64_t q = q0; q <= q1; ++q) {
            GroupPresentation g = uz2_group(p, q);
            if (!g.zero()) t.push_back({{p, q}, std::move(g)});
        }
    return t;
}

ChartSpec uf2_spec() {
    ChartSpec s;
    s.ring = PointRing::uF2;
    s.x_min = -6; s.x_max = 4; s.y_min = -4; s.y_max = 6;
    s.edges = {{"a", "#000000"}, {"u", "#888888"}};
    return s;
}

ChartSpec uz2_spec() {
    ChartSpec s;
    s.ring = PointRing::uZ2;
    s.x_min = -9; s.x_max = 6; s.y_min = -5; s.y_max = 9;
    s.edges = {{"a", "#000000"}, {"u", "#888888"}};
    return s;
}

std::string read_file(const std::string& name) {
    std::ifstream f(name, std::ios::binary);
    if (!f) f.open("../" + name, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("render is deterministic") {
    auto table = uf2_table(-6, 4, -4, 6);
    CHECK(render(table, uf2_spec()) == render(table, uf2_spec()));
}

TEST_CASE("empty table still renders a grid") {
    ChartSpec s = uf2_spec();
    std::string svg = render({}, s);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<circle") == std::string::npos);
    CHECK(svg.find("<rect x=") == std::string::npos);
}

TEST_CASE("empty range is rejected") {
    ChartSpec s = uf2_spec();
    s.x_min = 3; s.x_max = 1;
    CHECK_THROWS_AS(render({}, s), EmptyRange);
}

TEST_CASE("glyph count equals summand count") {
    std::mt19937 rng(53);
    for (int it = 0; it < 100; ++it) {
        ChartSpec s;
        s.x_min = -3; s.x_max = 3; s.y_min = -3; s.y_max = 3;
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
        CHECK(rects == squares);
        CHECK(circ == circles);
    }
}

TEST_CASE("a-multiplication edges appear in the bigraded F2 chart") {
    // 1 -> a -> a^2 are adjacent down the q-axis
    auto table = uf2_table(-6, 4, -4, 6);
    ChartSpec s = uf2_spec();
    s.edges = {{"a", "#123456"}};
    std::string svg = render(table, s);
    CHECK(svg.find("stroke=\"#123456\"") != std::string::npos);
}

TEST_CASE("plane slicing of tri-graded tables") {
    std::vector<GroupTableRecord> table;
    table.push_back({{1, 2, 0}, {}});
    table.back().group.add(2, "x");
    table.push_back({{1, 2, 5}, {}});  // wrong slice, must not render
    table.back().group.add(2, "y");
    ChartSpec s;
    s.x_min = 0; s.x_max = 3; s.y_min = 0; s.y_max = 3;
    s.fix_w = 0;
    std::string svg = render(table, s);
    std::size_t circ = 0;
    for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos)
        ++circ;
    CHECK(circ == 1);
}

TEST_CASE("golden snapshot: bigraded F2 point chart") {
    auto svg = render(uf2_table(-6, 4, -4, 6), uf2_spec());
    CHECK(svg == read_file("tests/golden/uf2_point.svg"));
}

TEST_CASE("golden snapshot: bigraded 2-adic point chart") {
    auto svg = render(uz2_table(-9, 6, -5, 9), uz2_spec());
    CHECK(svg == read_file("tests/golden/uz2_point.svg"));
}
