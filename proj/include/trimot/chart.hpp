#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimot/grading.hpp"
#include "trimot/group.hpp"
#include "trimot/point.hpp"
#include "trimot/table_io.hpp"

namespace trimot {

struct EmptyRange : std::runtime_error {
    EmptyRange() : std::runtime_error("chart range is empty") {}
};

enum class ChartPlane { PQ, QW };

struct ChartEdge {
    std::string element;  // a point-ring label, e.g. "a" or "u"
    std::string color = "#000000";
};

struct ChartSpec {
    ChartPlane plane = ChartPlane::PQ;
    PointRing ring = PointRing::uF2;  // ring used to parse labels for edges
    std::int64_t x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    // fixed values for the coordinates left out of the plane; tri-graded
    // records must match them, bigraded records ignore them
    std::int64_t fix_p = 0, fix_q = 0, fix_w = 0;
    std::vector<ChartEdge> edges;
    // summand order -> "circle" or "square"; default square for Z2, circle otherwise
    std::map<std::int64_t, std::string> glyphs;
};

namespace detail {

struct ChartCellKey {
    std::int64_t x = 0, y = 0;
    auto operator<=>(const ChartCellKey&) const = default;
};

inline std::optional<ChartCellKey> chart_cell(const ChartSpec& spec,
                                              const std::vector<std::int64_t>& degree) {
    std::int64_t p = degree[0], q = degree[1];
    if (degree.size() == 3) {
        std::int64_t w = degree[2];
        if (spec.plane == ChartPlane::PQ && w != spec.fix_w) return std::nullopt;
        if (spec.plane == ChartPlane::QW && p != spec.fix_p) return std::nullopt;
        if (spec.plane == ChartPlane::QW) return ChartCellKey{q, w};
    } else if (spec.plane == ChartPlane::QW) {
        return std::nullopt;  // bigraded records have no weight coordinate
    }
    return ChartCellKey{p, q};
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

}  // namespace detail

// Deterministic SVG: one glyph per cyclic summand (squares for 2-adic free
// summands, circles for torsion), stacked within a cell, plus an edge for
// every product by a styled element that lands on a plotted generator.
inline std::string render(const std::vector<GroupTableRecord>& table, const ChartSpec& spec) {
    if (spec.x_min > spec.x_max || spec.y_min > spec.y_max) throw EmptyRange();
    const std::int64_t cell = 40;
    const std::int64_t width = (spec.x_max - spec.x_min + 1) * cell + 40;
    const std::int64_t height = (spec.y_max - spec.y_min + 1) * cell + 40;
    auto cx = [&](std::int64_t x) { return double((x - spec.x_min) * cell) + 40.0; };
    auto cy = [&](std::int64_t y) { return double((spec.y_max - y) * cell) + 20.0; };

    // collect plotted summands per cell, in input order
    std::map<detail::ChartCellKey, std::vector<Summand>> cells;
    for (const auto& rec : table) {
        auto key = detail::chart_cell(spec, rec.degree);
        if (!key) continue;
        if (key->x < spec.x_min || key->x > spec.x_max || key->y < spec.y_min ||
            key->y > spec.y_max)
            continue;
        auto& v = cells[*key];
        v.insert(v.end(), rec.group.summands.begin(), rec.group.summands.end());
    }

    auto glyph_pos = [&](detail::ChartCellKey key, std::size_t index, std::size_t count) {
        double dx = (double(index) - double(count - 1) / 2.0) * 10.0;
        return std::pair<double, double>{cx(key.x) + dx, cy(key.y)};
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // grid and axis labels
    for (std::int64_t x = spec.x_min; x <= spec.x_max; ++x) {
        svg += "<line x1=\"" + detail::fmt(cx(x)) + "\" y1=\"" + detail::fmt(cy(spec.y_max)) +
               "\" x2=\"" + detail::fmt(cx(x)) + "\" y2=\"" + detail::fmt(cy(spec.y_min)) +
               "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + detail::fmt(cx(x)) + "\" y=\"" +
               detail::fmt(cy(spec.y_min) + 16.0) +
               "\" font-size=\"9\" text-anchor=\"middle\">" + std::to_string(x) + "</text>\n";
    }
    for (std::int64_t y = spec.y_min; y <= spec.y_max; ++y) {
        svg += "<line x1=\"" + detail::fmt(cx(spec.x_min)) + "\" y1=\"" + detail::fmt(cy(y)) +
               "\" x2=\"" + detail::fmt(cx(spec.x_max)) + "\" y2=\"" + detail::fmt(cy(y)) +
               "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + detail::fmt(cx(spec.x_min) - 16.0) + "\" y=\"" +
               detail::fmt(cy(y) + 3.0) + "\" font-size=\"9\" text-anchor=\"middle\">" +
               std::to_string(y) + "</text>\n";
    }

    // edges first so glyphs draw on top
    for (const auto& edge : spec.edges) {
        auto elem = parse_point_label(spec.ring, edge.element);
        if (!elem) continue;
        RODegree shift = degree(*elem);
        TriDegree tri_shift{};
        if (const auto* named = [&]() -> const NamedElement* {
                try {
                    return &named_element(edge.element);
                } catch (const UnknownName&) {
                    return nullptr;
                }
            }();
            named && named->tri)
            tri_shift = named->deg3;
        for (const auto& [key, summands] : cells) {
            detail::ChartCellKey tkey = key;
            if (spec.plane == ChartPlane::PQ) {
                tkey.x += shift.p;
                tkey.y += shift.q;
            } else {
                tkey.x += tri_shift.q;
                tkey.y += tri_shift.w;
            }
            auto tit = cells.find(tkey);
            if (tit == cells.end()) continue;
            for (std::size_t i = 0; i < summands.size(); ++i) {
                auto src = parse_point_label(spec.ring, summands[i].generator);
                if (!src) continue;
                for (const auto& term : point_multiply(spec.ring, *elem, *src)) {
                    if (term.coeff == 0) continue;
                    for (std::size_t j = 0; j < tit->second.size(); ++j) {
                        auto dst = parse_point_label(spec.ring, tit->second[j].generator);
                        if (!dst || !(*dst == term.elem)) continue;
                        if (tit->second[j].order != 0 && term.coeff % 2 == 0) continue;
                        auto [x1, y1] = glyph_pos(key, i, summands.size());
                        auto [x2, y2] = glyph_pos(tkey, j, tit->second.size());
                        svg += "<line x1=\"" + detail::fmt(x1) + "\" y1=\"" + detail::fmt(y1) +
                               "\" x2=\"" + detail::fmt(x2) + "\" y2=\"" + detail::fmt(y2) +
                               "\" stroke=\"" + edge.color + "\" stroke-width=\"1\"/>\n";
                    }
                }
            }
        }
    }

    // glyphs
    for (const auto& [key, summands] : cells) {
        for (std::size_t i = 0; i < summands.size(); ++i) {
            auto [x, y] = glyph_pos(key, i, summands.size());
            std::string shape = summands[i].order == 0 ? "square" : "circle";
            if (auto it = spec.glyphs.find(summands[i].order); it != spec.glyphs.end())
                shape = it->second;
            if (shape == "square") {
                svg += "<rect x=\"" + detail::fmt(x - 3.5) + "\" y=\"" + detail::fmt(y - 3.5) +
                       "\" width=\"7.0\" height=\"7.0\" fill=\"white\" stroke=\"black\"/>\n";
            } else {
                svg += "<circle cx=\"" + detail::fmt(x) + "\" cy=\"" + detail::fmt(y) +
                       "\" r=\"3.5\" fill=\"white\" stroke=\"black\"/>\n";
            }
            if (summands[i].order > 2)
                svg += "<text x=\"" + detail::fmt(x) + "\" y=\"" + detail::fmt(y - 6.0) +
                       "\" font-size=\"6\" text-anchor=\"middle\">" +
                       std::to_string(summands[i].order) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace trimot
