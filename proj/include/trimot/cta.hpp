#pragma once

#include <cstdint>
#include <string>

#include "trimot/cobar.hpp"
#include "trimot/grading.hpp"
#include "trimot/group.hpp"
#include "trimot/point.hpp"

namespace trimot {

// pi_{p,q,w} of the special fiber:
//   (+)_{w+a-s=p} Ext^{s,2w}(A, A (x) pi^{C2}_{a+(q-w)sigma} Z_2)
// Z_2-shaped coefficients use Ext(A,A), 2-torsion ones Ext(A,A/2).
inline GroupPresentation cta_group(TriDegree d, const ExtTable& ext_z, const ExtTable& ext_f2) {
    GroupPresentation g;
    if (d.w < 0) return g;
    for (std::int64_t a = d.p - d.w; a <= d.p; ++a) {
        auto coeff = uz2_basis(a, d.q - d.w);
        if (!coeff) continue;
        int s = int(d.w + a - d.p);
        const ExtTable& tab = coeff->second == 0 ? ext_z : ext_f2;
        const GroupPresentation& e = tab.at(s, 2 * d.w);
        for (std::size_t k = 0; k < e.summands.size(); ++k) {
            std::string gen = label(coeff->first) + " | s=" + std::to_string(s);
            if (e.summands.size() > 1) gen += " #" + std::to_string(k);
            std::int64_t order = coeff->second == 0 ? e.summands[k].order : 2;
            g.add(order, std::move(gen));
        }
    }
    g.normalize();
    return g;
}

// pi_{p,q,w} of the joint special fiber: Ext^{2w-p-q,2w}(A, A).
inline GroupPresentation ca_cta_group(TriDegree d, const ExtTable& ext_z) {
    GroupPresentation g;
    std::int64_t s = 2 * d.w - d.p - d.q;
    if (s < 0 || s > INT32_MAX) return g;
    const GroupPresentation& e = ext_z.at(int(s), 2 * d.w);
    for (std::size_t k = 0; k < e.summands.size(); ++k)
        g.add(e.summands[k].order, "s=" + std::to_string(s) + " #" + std::to_string(k));
    return g;
}

// a-inverted fiber: (+)_{w+2a-s=p, a>=0} F2{u^{2a}} (x) Ext^{s,2w}(A, A/2);
// q-independent.  The geometric-fixed-points coefficient ring is polynomial
// on u_{2sigma}, so only a >= 0 contributes.
inline GroupPresentation cta_a_inverted_group(TriDegree d, const ExtTable& ext_f2) {
    GroupPresentation g;
    if (d.w < 0) return g;
    for (std::int64_t a = 0; 2 * a <= d.p; ++a) {
        std::int64_t s = d.w + 2 * a - d.p;
        if (s < 0 || s > d.w) continue;
        const GroupPresentation& e = ext_f2.at(int(s), 2 * d.w);
        for (std::size_t k = 0; k < e.summands.size(); ++k)
            g.add(2, "u^" + std::to_string(2 * a) + " | s=" + std::to_string(s) + " #" +
                         std::to_string(k));
    }
    g.normalize();
    return g;
}

}  // namespace trimot
