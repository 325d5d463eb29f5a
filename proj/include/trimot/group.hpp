#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace trimot {

// One cyclic summand of a finitely generated 2-local abelian group.
// order == 0 means a free rank-one summand over the 2-adics;
// order == n > 0 means Z/n.
struct Summand {
    std::int64_t order = 0;
    std::string generator;

    auto operator<=>(const Summand&) const = default;
};

inline std::string order_string(std::int64_t order) {
    if (order == 0) return "Z2";
    return "Z/" + std::to_string(order);
}

// A finitely generated abelian group as a sorted list of cyclic summands.
// The empty list is the zero group.
struct GroupPresentation {
    std::vector<Summand> summands;

    bool zero() const { return summands.empty(); }
    std::size_t rank() const { return summands.size(); }  // number of summands
    std::size_t free_rank() const {
        std::size_t n = 0;
        for (const auto& s : summands) n += (s.order == 0);
        return n;
    }
    std::size_t torsion_count() const { return summands.size() - free_rank(); }

    void add(std::int64_t order, std::string gen) {
        summands.push_back({order, std::move(gen)});
    }
    void normalize() {
        std::sort(summands.begin(), summands.end());
    }
    // Shape comparison ignoring generator labels.
    bool same_shape(const GroupPresentation& o) const {
        if (summands.size() != o.summands.size()) return false;
        for (std::size_t i = 0; i < summands.size(); ++i)
            if (summands[i].order != o.summands[i].order) return false;
        return true;
    }
    friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

inline std::string to_string(const GroupPresentation& g) {
    if (g.zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < g.summands.size(); ++i) {
        if (i) s += " + ";
        s += order_string(g.summands[i].order) + "{" + g.summands[i].generator + "}";
    }
    return s;
}

}  // namespace trimot
