#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trimot/grading.hpp"
#include "trimot/group.hpp"

namespace trimot {

struct BadTableRecord : std::runtime_error {
    explicit BadTableRecord(const std::string& what) : std::runtime_error(what) {}
};

// One line of the table format: a degree (two coordinates for an RO(C2)
// table, three for a tri-graded one) with its group.
struct GroupTableRecord {
    std::vector<std::int64_t> degree;
    GroupPresentation group;

    friend bool operator==(const GroupTableRecord&, const GroupTableRecord&) = default;
};

inline std::int64_t parse_order(const std::string& s) {
    if (s == "Z2") return 0;
    if (s.rfind("Z/", 0) == 0) {
        std::int64_t n = std::stoll(s.substr(2));
        if (n > 1) return n;
    }
    throw BadTableRecord("bad summand order: " + s);
}

inline std::string to_json_line(const GroupTableRecord& rec) {
    nlohmann::json j;
    j["degree"] = rec.degree;
    auto& arr = j["summands"] = nlohmann::json::array();
    for (const auto& s : rec.group.summands)
        arr.push_back({order_string(s.order), s.generator});
    return j.dump();
}

inline GroupTableRecord from_json_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw BadTableRecord(e.what());
    }
    if (!j.is_object() || !j.contains("degree") || !j.contains("summands"))
        throw BadTableRecord("record needs degree and summands: " + line);
    GroupTableRecord rec;
    for (const auto& c : j["degree"]) {
        if (!c.is_number_integer()) throw BadTableRecord("non-integer degree: " + line);
        rec.degree.push_back(c.get<std::int64_t>());
    }
    if (rec.degree.size() != 2 && rec.degree.size() != 3)
        throw BadTableRecord("degree must have 2 or 3 coordinates: " + line);
    for (const auto& s : j["summands"]) {
        if (!s.is_array() || s.size() != 2 || !s[0].is_string() || !s[1].is_string())
            throw BadTableRecord("summand must be [order, generator]: " + line);
        rec.group.add(parse_order(s[0].get<std::string>()), s[1].get<std::string>());
    }
    return rec;
}

inline void write_table(std::ostream& os, const std::vector<GroupTableRecord>& records) {
    for (const auto& r : records) os << to_json_line(r) << '\n';
}

inline std::vector<GroupTableRecord> read_table(std::istream& is) {
    std::vector<GroupTableRecord> records;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        records.push_back(from_json_line(line));
    }
    return records;
}

// Tri-graded view used by the region validators and the charts.
inline std::map<TriDegree, GroupPresentation> as_tri_table(
    const std::vector<GroupTableRecord>& records) {
    std::map<TriDegree, GroupPresentation> table;
    for (const auto& r : records) {
        if (r.degree.size() != 3) throw BadTableRecord("expected a tri-graded record");
        TriDegree d{r.degree[0], r.degree[1], r.degree[2]};
        for (const auto& s : r.group.summands) table[d].add(s.order, s.generator);
    }
    return table;
}

}  // namespace trimot
