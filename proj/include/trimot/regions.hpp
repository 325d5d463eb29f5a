#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "trimot/grading.hpp"
#include "trimot/group.hpp"

namespace trimot {

struct UnknownObject : std::runtime_error {
    explicit UnknownObject(int id)
        : std::runtime_error("no vanishing region for object " + std::to_string(id)) {}
};

// One half-space  cp*p + cq*q + cw*w >= c.
struct HalfSpace {
    std::int64_t cp = 0, cq = 0, cw = 0, c = 0;
    bool contains(TriDegree d) const { return cp * d.p + cq * d.q + cw * d.w >= c; }
};

// Union of half-space intersections, plus declared periodicity vectors
// (the clauses are invariant under them; the vectors are checkable metadata).
struct RegionSpec {
    int object_id = 0;
    const char* object_name = "";
    std::vector<std::vector<HalfSpace>> clauses;
    std::vector<TriDegree> periods;

    bool contains(TriDegree d) const {
        for (const auto& clause : clauses) {
            bool all = true;
            for (const auto& h : clause)
                if (!h.contains(d)) { all = false; break; }
            if (all) return true;
        }
        return false;
    }
};

// The nine concentration regions, encoded clause by clause.
inline const std::vector<RegionSpec>& region_table() {
    static const std::vector<RegionSpec> t = [] {
        // shorthands for the recurring half-spaces
        auto ge = [](std::int64_t cp, std::int64_t cq, std::int64_t cw, std::int64_t c) {
            return HalfSpace{cp, cq, cw, c};
        };
        std::vector<RegionSpec> r;
        // 1: sphere   {p+q >= w >= 0} u {p+q >= 0, w <= 0} u {p >= 0}
        r.push_back({1, "Sphere",
                     {{ge(1, 1, -1, 0), ge(0, 0, 1, 0)},
                      {ge(1, 1, 0, 0), ge(0, 0, -1, 0)},
                      {ge(1, 0, 0, 0)}},
                     {}});
        // 2: Cta   {0 <= p <= 2w-q, w >= 0} u {w-q <= p <= w-2, w >= 0}
        r.push_back({2, "Cta",
                     {{ge(1, 0, 0, 0), ge(-1, -1, 2, 0), ge(0, 0, 1, 0)},
                      {ge(1, 1, -1, 0), ge(-1, 0, 1, 2), ge(0, 0, 1, 0)}},
                     {}});
        // 3: ta-inverted sphere   w-periodic, {p >= 0} u {p+q >= 0}
        r.push_back({3, "SphereTaInv", {{ge(1, 0, 0, 0)}, {ge(1, 1, 0, 0)}}, {{0, 0, 1}}});
        // 4: Ca   (1,-1,0)-periodic, {0 <= w <= p+q} u {0 <= p+q, w <= 0}
        r.push_back({4, "Ca",
                     {{ge(0, 0, 1, 0), ge(1, 1, -1, 0)},
                      {ge(1, 1, 0, 0), ge(0, 0, -1, 0)}},
                     {{1, -1, 0}}});
        // 5: Ca(Cta)   (1,-1,0)-periodic, {w <= p+q <= 2w}
        r.push_back({5, "CaCta", {{ge(1, 1, -1, 0), ge(-1, -1, 2, 0)}}, {{1, -1, 0}}});
        // 6: Ca, ta-inverted   w- and (1,-1,0)-periodic, {p+q >= 0}
        r.push_back({6, "CaTaInv", {{ge(1, 1, 0, 0)}}, {{0, 0, 1}, {1, -1, 0}}});
        // 7: a-inverted sphere   q-periodic, {p >= 0}
        r.push_back({7, "SphereAInv", {{ge(1, 0, 0, 0)}}, {{0, 1, 0}}});
        // 8: a-inverted Cta   q-periodic, {p >= 0, w >= 0}
        r.push_back({8, "CtaAInv", {{ge(1, 0, 0, 0), ge(0, 0, 1, 0)}}, {{0, 1, 0}}});
        // 9: a- and ta-inverted sphere   q- and w-periodic, {p >= 0}
        r.push_back({9, "SphereATaInv", {{ge(1, 0, 0, 0)}}, {{0, 1, 0}, {0, 0, 1}}});
        return r;
    }();
    return t;
}

inline const RegionSpec& region_spec(int object_id) {
    for (const auto& r : region_table())
        if (r.object_id == object_id) return r;
    throw UnknownObject(object_id);
}

inline bool region_member(int object_id, TriDegree d) { return region_spec(object_id).contains(d); }

// Degrees carrying a nonzero group outside the region.
inline std::vector<TriDegree> validate(const std::map<TriDegree, GroupPresentation>& table,
                                       int object_id) {
    const RegionSpec& spec = region_spec(object_id);
    std::vector<TriDegree> bad;
    for (const auto& [d, g] : table)
        if (!g.zero() && !spec.contains(d)) bad.push_back(d);
    return bad;
}

}  // namespace trimot
