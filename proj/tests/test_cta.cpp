#include <catch2/catch_amalgamated.hpp>

#include "trimot/cta.hpp"
#include "trimot/regions.hpp"

using namespace trimot;

namespace {

struct Tables {
    ExtTable z, f2;
};

const Tables& tables() {
    static const Tables t = [] {
        auto pres = build_presentation(2, 12);
        return Tables{ext(pres, ExtCoeffs::Z, 6, 12), ext(pres, ExtCoeffs::F2, 6, 12)};
    }();
    return t;
}

}  // namespace

TEST_CASE("cta assembly fixed values") {
    CHECK(to_string(cta_group({0, 0, 0}, tables().z, tables().f2)) == "Z2{1 | s=0}");
    // a=0 coefficient F2{a_sigma}, Ext^{0,2}(A,A/2) = F2{v1}
    CHECK(cta_group({1, 0, 1}, tables().z, tables().f2).same_shape(uf2_group(0, -1)));
    CHECK(cta_group({1, 0, 1}, tables().z, tables().f2).summands[0].order == 2);
}

TEST_CASE("cta vanishes in negative weight") {
    for (std::int64_t p = -12; p <= 12; ++p)
        for (std::int64_t q = -12; q <= 12; ++q)
            for (std::int64_t w = -4; w < 0; ++w)
                CHECK(cta_group({p, q, w}, tables().z, tables().f2).zero());
}

TEST_CASE("cta lands in its concentration region") {
    std::map<TriDegree, GroupPresentation> table;
    for (std::int64_t p = -12; p <= 12; ++p)
        for (std::int64_t q = -12; q <= 12; ++q)
            for (std::int64_t w = -4; w <= 6; ++w)
                table[{p, q, w}] = cta_group({p, q, w}, tables().z, tables().f2);
    CHECK(validate(table, 2).empty());
}

TEST_CASE("ca_cta fixed values, region, and diagonal periodicity") {
    CHECK(to_string(ca_cta_group({0, 0, 0}, tables().z)) == "Z2{s=0 #0}");
    CHECK(ca_cta_group({0, 1, 1}, tables().z).same_shape(ca_cta_group({1, 0, 1}, tables().z)));
    CHECK(to_string(ca_cta_group({0, 1, 1}, tables().z)) == "Z/2{s=1 #0}");
    CHECK(ca_cta_group({1, 1, 1}, tables().z).zero());

    std::map<TriDegree, GroupPresentation> table;
    for (std::int64_t p = -12; p <= 12; ++p)
        for (std::int64_t q = -12; q <= 12; ++q)
            for (std::int64_t w = -4; w <= 6; ++w) {
                TriDegree d{p, q, w};
                table[d] = ca_cta_group(d, tables().z);
                if (p < 12)
                    CHECK(table[d].same_shape(ca_cta_group({p + 1, q - 1, w}, tables().z)));
            }
    CHECK(validate(table, 5).empty());
}

TEST_CASE("a-inverted fiber is q-independent and sits in its region") {
    std::map<TriDegree, GroupPresentation> table;
    for (std::int64_t p = -12; p <= 12; ++p)
        for (std::int64_t w = -4; w <= 6; ++w) {
            GroupPresentation ref = cta_a_inverted_group({p, 0, w}, tables().f2);
            for (std::int64_t q = -12; q <= 12; ++q) {
                TriDegree d{p, q, w};
                GroupPresentation g = cta_a_inverted_group(d, tables().f2);
                CHECK(g.same_shape(ref));
                table[d] = g;
            }
        }
    CHECK(validate(table, 8).empty());
    CHECK(to_string(cta_a_inverted_group({0, 0, 0}, tables().f2)) == "Z/2{u^0 | s=0 #0}");
}

TEST_CASE("missing table entries raise BoxExceeded") {
    CHECK_THROWS_AS(cta_group({0, 0, 8}, tables().z, tables().f2), BoxExceeded);
}
