#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trimot/bockstein.hpp"
#include "trimot/chart.hpp"
#include "trimot/cobar.hpp"
#include "trimot/cta.hpp"
#include "trimot/grading.hpp"
#include "trimot/point.hpp"
#include "trimot/regions.hpp"
#include "trimot/steenrod.hpp"
#include "trimot/table_io.hpp"

namespace {

using namespace trimot;

struct ValidationFailure : std::runtime_error {
    explicit ValidationFailure(const std::string& what) : std::runtime_error(what) {}
};

std::vector<std::pair<std::int64_t, std::int64_t>> parse_box(const std::string& text,
                                                             std::size_t want) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw ValidationFailure("box range needs lo:hi, got " + part);
        out.push_back({std::stoll(part.substr(0, colon)), std::stoll(part.substr(colon + 1))});
    }
    if (out.size() != want)
        throw ValidationFailure("box needs " + std::to_string(want) + " ranges");
    return out;
}

std::vector<std::int64_t> parse_ints(const std::string& text, std::size_t want) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stoll(part));
    if (out.size() != want)
        throw ValidationFailure("expected " + std::to_string(want) + " comma-separated integers");
    return out;
}

// ----- Ext cache, keyed by (N, s_max, D, coeffs) under $TRIMOT_CACHE_DIR -----

std::string cache_path(int n, int s_max, std::int64_t d, ExtCoeffs coeffs) {
    const char* dir = std::getenv("TRIMOT_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/ext_N" + std::to_string(n) + "_s" + std::to_string(s_max) +
           "_D" + std::to_string(d) + (coeffs == ExtCoeffs::Z ? "_Z" : "_F2") + ".json";
}

std::optional<ExtTable> load_cached_ext(int n, int s_max, std::int64_t d, ExtCoeffs coeffs) {
    std::string path = cache_path(n, s_max, d, coeffs);
    if (path.empty()) return std::nullopt;
    std::ifstream f(path);
    if (!f) return std::nullopt;
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    ExtTable t;
    t.N = n;
    t.s_max = s_max;
    t.D = d;
    t.coeffs = coeffs;
    for (const auto& e : j.at("groups")) {
        GroupPresentation g;
        for (const auto& s : e.at("summands"))
            g.add(parse_order(s[0].get<std::string>()), s[1].get<std::string>());
        t.groups[{e.at("s").get<int>(), e.at("degree").get<std::int64_t>()}] = std::move(g);
    }
    return t;
}

void store_cached_ext(const ExtTable& t) {
    std::string path = cache_path(t.N, t.s_max, t.D, t.coeffs);
    if (path.empty()) return;
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& [key, g] : t.groups) {
        nlohmann::json e;
        e["s"] = key.first;
        e["degree"] = key.second;
        auto& arr = e["summands"] = nlohmann::json::array();
        for (const auto& s : g.summands) arr.push_back({order_string(s.order), s.generator});
        groups.push_back(std::move(e));
    }
    nlohmann::json j;
    j["groups"] = std::move(groups);
    std::ofstream(path) << j.dump();
}

ExtTable ext_with_cache(int n, int s_max, std::int64_t d, ExtCoeffs coeffs) {
    if (auto cached = load_cached_ext(n, s_max, d, coeffs)) return *cached;
    ExtTable t = ext(build_presentation(n, d), coeffs, s_max, d);
    store_cached_ext(t);
    return t;
}

void emit(const GroupTableRecord& rec) { std::cout << to_json_line(rec) << "\n"; }

// ----- subcommand bodies -----

int run_degree(const std::string& element, const std::string& betti, const std::string& base,
               const std::string& artin) {
    nlohmann::json j;
    if (!element.empty()) {
        const NamedElement& e = named_element(element);
        j["name"] = e.name;
        j["home"] = to_string(e.home);
        if (e.tri) j["degree"] = {e.deg3.p, e.deg3.q, e.deg3.w};
        else j["degree"] = {e.deg2.p, e.deg2.q};
    } else if (!betti.empty()) {
        auto v = parse_ints(betti, 3);
        RODegree r = betti_degree({v[0], v[1], v[2]});
        j["betti"] = {r.p, r.q};
    } else if (!base.empty()) {
        auto v = parse_ints(base, 3);
        auto [s, w] = base_change_degree({v[0], v[1], v[2]});
        j["base_change"] = {s, w};
    } else if (!artin.empty()) {
        auto v = parse_ints(artin, 2);
        TriDegree d = artin_embed({v[0], v[1]});
        j["artin_embed"] = {d.p, d.q, d.w};
    } else {
        throw ValidationFailure("degree: pass --element, --betti, --base-change, or --artin-embed");
    }
    std::cout << j.dump() << "\n";
    return 0;
}

int run_point(const std::string& ring, const std::string& box_text, std::int64_t prime) {
    if (ring == "uF2" || ring == "uZ2") {
        auto box = parse_box(box_text, 2);
        for (std::int64_t p = box[0].first; p <= box[0].second; ++p)
            for (std::int64_t q = box[1].first; q <= box[1].second; ++q) {
                GroupPresentation g = ring == "uF2" ? uf2_group(p, q) : uz2_group(p, q);
                if (!g.zero()) emit({{p, q}, std::move(g)});
            }
        return 0;
    }
    if (ring == "MF2" || ring == "MZ2" || ring == "MFp") {
        auto box = parse_box(box_text, 3);
        for (std::int64_t p = box[0].first; p <= box[0].second; ++p)
            for (std::int64_t q = box[1].first; q <= box[1].second; ++q)
                for (std::int64_t w = box[2].first; w <= box[2].second; ++w) {
                    TriDegree d{p, q, w};
                    GroupPresentation g = ring == "MF2"   ? mf2_group(d)
                                          : ring == "MZ2" ? mz2_group(d)
                                                          : mfp_group(prime, d);
                    if (!g.zero()) emit({{p, q, w}, std::move(g)});
                }
        return 0;
    }
    throw ValidationFailure("unknown ring: " + ring);
}

int run_steenrod_rank(const std::string& box_text) {
    auto box = parse_box(box_text, 3);
    for (std::int64_t p = box[0].first; p <= box[0].second; ++p)
        for (std::int64_t q = box[1].first; q <= box[1].second; ++q)
            for (std::int64_t w = box[2].first; w <= box[2].second; ++w) {
                std::int64_t r = steenrod_rank({p, q, w});
                if (r == 0) continue;
                nlohmann::json j;
                j["degree"] = {p, q, w};
                j["rank"] = r;
                std::cout << j.dump() << "\n";
            }
    return 0;
}

int run_steenrod_mul(const std::string& a, const std::string& b) {
    auto x = parse_steenrod_monomial(a);
    auto y = parse_steenrod_monomial(b);
    if (!x || !y) throw ValidationFailure("could not parse a Steenrod monomial");
    SteenrodSum product = steenrod_multiply({*x}, {*y});
    nlohmann::json j;
    j["product"] = to_string(product);
    std::cout << j.dump() << "\n";
    return 0;
}

int run_ext(int n, int s_max, std::int64_t d, const std::string& coeffs_text) {
    ExtCoeffs coeffs;
    if (coeffs_text == "Z") coeffs = ExtCoeffs::Z;
    else if (coeffs_text == "F2") coeffs = ExtCoeffs::F2;
    else throw ValidationFailure("coeffs must be Z or F2");
    ExtTable t = ext_with_cache(n, s_max, d, coeffs);
    for (int s = 0; s <= s_max; ++s)
        for (std::int64_t deg = 0; deg <= d; deg += 2) {
            const GroupPresentation& g = t.at(s, deg);
            if (!g.zero()) emit({{s, deg}, g});
        }
    return 0;
}

int run_cta(const std::string& object, const std::string& box_text) {
    auto box = parse_box(box_text, 3);
    std::int64_t w_max = std::max<std::int64_t>(box[2].second, 0);
    std::int64_t d = 2 * w_max;
    int s_max = int(w_max);
    int n = 1;
    while (!stable_range(n, s_max, d)) ++n;
    ExtTable ez = ext_with_cache(n, s_max, d, ExtCoeffs::Z);
    ExtTable ef = ext_with_cache(n, s_max, d, ExtCoeffs::F2);
    for (std::int64_t p = box[0].first; p <= box[0].second; ++p)
        for (std::int64_t q = box[1].first; q <= box[1].second; ++q)
            for (std::int64_t w = box[2].first; w <= box[2].second; ++w) {
                TriDegree deg{p, q, w};
                GroupPresentation g;
                if (object == "Cta") g = cta_group(deg, ez, ef);
                else if (object == "CaCta") g = ca_cta_group(deg, ez);
                else if (object == "CtaAinv") g = cta_a_inverted_group(deg, ef);
                else throw ValidationFailure("object must be Cta, CaCta, or CtaAinv");
                if (!g.zero()) emit({{p, q, w}, std::move(g)});
            }
    return 0;
}

int run_bockstein(const std::string& input_path, int pages, const std::string& box_text) {
    std::ifstream f(input_path);
    if (!f) throw ValidationFailure("cannot open " + input_path);
    nlohmann::json j;
    f >> j;
    BocksteinInput in = load_bockstein_input(j);
    auto box_ranges = parse_box(box_text, 3);
    TriBox box{{box_ranges[0].first, box_ranges[1].first, box_ranges[2].first},
               {box_ranges[0].second, box_ranges[1].second, box_ranges[2].second}};
    BocksteinResult res = run(in, pages, box);
    for (const auto& page : res.pages)
        for (const auto& cell : page.cells) {
            nlohmann::json rec;
            rec["page"] = page.r;
            rec["degree"] = {cell.mdeg.p, cell.mdeg.q, cell.mdeg.w};
            rec["k"] = cell.k;
            auto& arr = rec["summands"] = nlohmann::json::array();
            for (const auto& s : cell.group.summands)
                arr.push_back({order_string(s.order), s.generator});
            std::cout << rec.dump() << "\n";
        }
    for (const auto& e : res.summary) {
        nlohmann::json rec;
        rec["einf_degree"] = {e.degree.p, e.degree.q, e.degree.w};
        rec["ta_free"] = e.ta_free;
        auto& t = rec["ta_torsion"] = nlohmann::json::object();
        for (const auto& [order, count] : e.torsion) t[std::to_string(order)] = count;
        std::cout << rec.dump() << "\n";
    }
    for (const auto& note : res.notes) {
        nlohmann::json rec;
        rec["note"] = note;
        std::cout << rec.dump() << "\n";
    }
    return 0;
}

int run_regions(int object, const std::string& table_path) {
    std::ifstream f(table_path);
    if (!f) throw ValidationFailure("cannot open " + table_path);
    auto records = read_table(f);
    auto table = as_tri_table(records);
    auto violations = validate(table, object);
    for (const auto& d : violations) {
        nlohmann::json rec;
        rec["violation"] = {d.p, d.q, d.w};
        std::cout << rec.dump() << "\n";
    }
    return violations.empty() ? 0 : 2;
}

int run_chart(const std::string& table_path, const std::string& plane, const std::string& ring,
              const std::vector<std::string>& fixes, const std::string& range_text,
              const std::string& edges_text, const std::string& out_path) {
    std::ifstream f(table_path);
    if (!f) throw ValidationFailure("cannot open " + table_path);
    auto records = read_table(f);
    ChartSpec spec;
    if (plane == "pq") spec.plane = ChartPlane::PQ;
    else if (plane == "qw") spec.plane = ChartPlane::QW;
    else throw ValidationFailure("plane must be pq or qw");
    if (ring == "uF2") spec.ring = PointRing::uF2;
    else if (ring == "uZ2") spec.ring = PointRing::uZ2;
    else throw ValidationFailure("ring must be uF2 or uZ2");
    for (const auto& fix : fixes) {
        auto eq = fix.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationFailure("fix needs coord=value");
        std::int64_t v = std::stoll(fix.substr(eq + 1));
        char c = fix[0];
        if (c == 'p') spec.fix_p = v;
        else if (c == 'q') spec.fix_q = v;
        else if (c == 'w') spec.fix_w = v;
        else throw ValidationFailure("fix coordinate must be p, q, or w");
    }
    auto range = parse_box(range_text, 2);
    spec.x_min = range[0].first;
    spec.x_max = range[0].second;
    spec.y_min = range[1].first;
    spec.y_max = range[1].second;
    if (!edges_text.empty()) {
        std::stringstream ss(edges_text);
        std::string e;
        while (std::getline(ss, e, ',')) spec.edges.push_back({e, "#000000"});
    }
    std::string svg = render(records, spec);
    if (out_path.empty()) std::cout << svg;
    else std::ofstream(out_path, std::ios::binary) << svg;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with tri-graded point rings, Ext charts, and "
                 "Bockstein pages"};
    app.require_subcommand(1);

    // degree
    auto* degree_cmd = app.add_subcommand("degree", "degree arithmetic and the element registry");
    std::string el, betti, base, artin;
    degree_cmd->add_option("--element", el, "look up a named element");
    degree_cmd->add_option("--betti", betti, "p,q,w -> underlying RO(C2)-degree");
    degree_cmd->add_option("--base-change", base, "p,q,w -> complex (stem, weight)");
    degree_cmd->add_option("--artin-embed", artin, "p,q -> (p,q,0)");

    // point
    auto* point_cmd = app.add_subcommand("point", "point-ring group tables");
    std::string ring = "uF2", point_box = "-5:3,-3:6";
    std::int64_t prime = 3;
    point_cmd->add_option("--ring", ring, "uF2, uZ2, MF2, MZ2, or MFp");
    point_cmd->add_option("--box", point_box, "p0:p1,q0:q1 (add w0:w1 for tri-graded rings)");
    point_cmd->add_option("--prime", prime, "odd prime for MFp");

    // steenrod
    auto* st_cmd = app.add_subcommand("steenrod", "dual Steenrod algebra ranks and products");
    auto* st_rank = st_cmd->add_subcommand("rank", "ranks over a tri-degree box");
    std::string st_box = "-5:5,-5:5,-5:5";
    st_rank->add_option("--box", st_box, "p0:p1,q0:q1,w0:w1");
    auto* st_mul = st_cmd->add_subcommand("mul", "normalized product of two monomials");
    std::string st_a, st_b;
    st_mul->add_option("a", st_a, "first monomial")->required();
    st_mul->add_option("b", st_b, "second monomial")->required();

    // ext
    auto* ext_cmd = app.add_subcommand("ext", "cobar Ext groups");
    int ext_n = 2, ext_smax = 4;
    std::int64_t ext_d = 12;
    std::string ext_coeffs = "Z";
    ext_cmd->add_option("--generators", ext_n, "number of polynomial generators");
    ext_cmd->add_option("--smax", ext_smax, "maximal cohomological degree");
    ext_cmd->add_option("--degree", ext_d, "maximal internal degree");
    ext_cmd->add_option("--coeffs", ext_coeffs, "Z or F2");

    // cta
    auto* cta_cmd = app.add_subcommand("cta", "homotopy of the special fibers");
    std::string cta_object = "Cta", cta_box = "0:6,-4:4,0:4";
    cta_cmd->add_option("--object", cta_object, "Cta, CaCta, or CtaAinv");
    cta_cmd->add_option("--box", cta_box, "p0:p1,q0:q1,w0:w1");

    // bockstein
    auto* bock_cmd = app.add_subcommand("bockstein", "ta-Bockstein spectral sequence");
    auto* bock_run = bock_cmd->add_subcommand("run", "run the engine on an input file");
    std::string bock_input, bock_box = "-8:8,-8:8,-8:8";
    int bock_pages = 2;
    bock_run->add_option("--input", bock_input, "JSON input file")->required();
    bock_run->add_option("--pages", bock_pages, "last page to compute");
    bock_run->add_option("--box", bock_box, "p0:p1,q0:q1,w0:w1");

    // regions
    auto* reg_cmd = app.add_subcommand("regions", "concentration-region checks");
    auto* reg_check = reg_cmd->add_subcommand("check", "validate a table against a region");
    int reg_object = 1;
    std::string reg_table;
    reg_check->add_option("--object", reg_object, "region id 1..9")->required();
    reg_check->add_option("--table", reg_table, "group table file (JSON lines)")->required();

    // chart
    auto* chart_cmd = app.add_subcommand("chart", "render a group table as SVG");
    std::string chart_table, chart_plane = "pq", chart_ring = "uF2", chart_range = "-5:3,-3:6";
    std::string chart_edges, chart_out;
    std::vector<std::string> chart_fixes;
    chart_cmd->add_option("--table", chart_table, "group table file")->required();
    chart_cmd->add_option("--plane", chart_plane, "pq or qw");
    chart_cmd->add_option("--ring", chart_ring, "uF2 or uZ2 (for edge products)");
    chart_cmd->add_option("--fix", chart_fixes, "fixed off-plane coordinate, e.g. w=0");
    chart_cmd->add_option("--range", chart_range, "x0:x1,y0:y1");
    chart_cmd->add_option("--edges", chart_edges, "comma-separated element names");
    chart_cmd->add_option("--out", chart_out, "output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (degree_cmd->parsed()) return run_degree(el, betti, base, artin);
        if (point_cmd->parsed()) return run_point(ring, point_box, prime);
        if (st_cmd->parsed()) {
            if (st_rank->parsed()) return run_steenrod_rank(st_box);
            if (st_mul->parsed()) return run_steenrod_mul(st_a, st_b);
            std::cerr << "error: steenrod needs a subcommand (rank or mul)\n";
            return 1;
        }
        if (ext_cmd->parsed()) return run_ext(ext_n, ext_smax, ext_d, ext_coeffs);
        if (cta_cmd->parsed()) return run_cta(cta_object, cta_box);
        if (bock_cmd->parsed()) {
            if (bock_run->parsed()) return run_bockstein(bock_input, bock_pages, bock_box);
            std::cerr << "error: bockstein needs the run subcommand\n";
            return 1;
        }
        if (reg_cmd->parsed()) {
            if (reg_check->parsed()) return run_regions(reg_object, reg_table);
            std::cerr << "error: regions needs the check subcommand\n";
            return 1;
        }
        if (chart_cmd->parsed())
            return run_chart(chart_table, chart_plane, chart_ring, chart_fixes, chart_range,
                             chart_edges, chart_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
