#include <catch2/catch_amalgamated.hpp>

#include "trimot/grading.hpp"

using namespace trimot;

TEST_CASE("degree conversions on fixed values") {
    CHECK(betti_degree({0, 0, -1}) == RODegree{0, 0});
    CHECK(betti_degree({1, 1, 1}) == RODegree{1, 1});
    CHECK(betti_degree({5, -3, 2}) == RODegree{5, -3});

    CHECK(base_change_degree({1, 1, 1}) == std::pair<std::int64_t, std::int64_t>{2, 1});
    CHECK(base_change_degree({0, 0, 0}) == std::pair<std::int64_t, std::int64_t>{0, 0});
    CHECK(base_change_degree({0, -1, 0}) == std::pair<std::int64_t, std::int64_t>{-1, 0});

    CHECK(artin_embed({0, 0}) == TriDegree{0, 0, 0});
    CHECK(artin_embed({1, 1}) == TriDegree{1, 1, 0});
    CHECK(artin_embed({-2, 3}) == TriDegree{-2, 3, 0});
}

TEST_CASE("betti_degree is additive and splits artin_embed") {
    for (std::int64_t p = -10; p <= 10; p += 5)
        for (std::int64_t q = -10; q <= 10; q += 5)
            for (std::int64_t w = -10; w <= 10; w += 5) {
                TriDegree d1{p, q, w}, d2{q, w, p};
                CHECK(betti_degree(d1 + d2) == betti_degree(d1) + betti_degree(d2));
                CHECK(betti_degree(artin_embed({p, q})) == RODegree{p, q});
            }
}

TEST_CASE("registry entries") {
    CHECK(named_element("ta").deg3 == TriDegree{0, 0, -1});
    CHECK(named_element("ta").home == Home::Sphere2);
    CHECK(named_element("xi_2").deg3 == TriDegree{3, 3, 3});
    CHECK(named_element("rho").deg3 == TriDegree{0, -1, -1});
    CHECK(named_element("theta").deg2 == RODegree{-2, 2});
    CHECK_THROWS_AS(named_element("zeta"), UnknownName);
}

TEST_CASE("registry relations rho = ta*a and tau = ta*u") {
    CHECK(named_element("rho").deg3 == named_element("ta").deg3 + named_element("a").deg3);
    CHECK(named_element("tau").deg3 == named_element("ta").deg3 + named_element("u").deg3);
}

TEST_CASE("names are unique in the registry") {
    std::set<std::string> seen;
    for (const auto& e : element_registry()) CHECK(seen.insert(e.name).second);
}
