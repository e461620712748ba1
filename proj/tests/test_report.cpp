#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "geodiscover/engine.hpp"
#include "geodiscover/parser.hpp"
#include "geodiscover/report.hpp"

using namespace gd;

namespace {

Construction from_file(const std::string& name) {
    std::ifstream in(std::string(GD_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::get<Construction>(parse(ss.str()));
}

int count_lines_with(const std::string& text, const std::string& needle) {
    int n = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (line.find(needle) != std::string::npos) ++n;
    return n;
}

}  // namespace

TEST_CASE("midline text report matches the published output shape") {
    DiscoveryReport r = discover(from_file("midline.gd"), "D");
    std::string text = render_text(r);
    CHECK(text.find("Parallel: DE, AB") != std::string::npos);
    CHECK(text.find("Congruent: BD, CD") != std::string::npos);
    // the defining collinearity is suppressed by default ...
    CHECK(text.find("Collinear") == std::string::npos);
    // ... and shown with a TRIVIAL prefix on request
    std::string verbose = render_text(r, true);
    CHECK(verbose.find("TRIVIAL Collinear: B, C, D") != std::string::npos);
}

TEST_CASE("hexagon report counts classes, not statements") {
    DiscoveryReport r = discover(from_file("hexagon.gd"), "F");
    std::string text = render_text(r);
    CHECK(count_lines_with(text, "Parallel:") == 5);
    CHECK(count_lines_with(text, "Congruent:") == 3);
    CHECK(count_lines_with(text, "Concyclic:") == 1);
}

TEST_CASE("empty reports say so") {
    Construction c = std::get<Construction>(parse(
        "point A = free(0, 0)\npoint B = free(4, 1)\npoint C = free(-2, 7)\ndiscover C\n"));
    DiscoveryReport r = discover(c, "C");
    std::string text = render_text(r);
    CHECK(text.find("No non-trivial findings for C.") != std::string::npos);
}

TEST_CASE("normalization is noted in the text report") {
    Options opts;
    opts.normalize_coordinates = true;
    DiscoveryReport r = discover(from_file("euler.gd"), "P", opts);
    std::string text = render_text(r);
    CHECK(text.find("normalized") != std::string::npos);
    CHECK(text.find("Identical: P, Q, R") != std::string::npos);
}

TEST_CASE("json report is valid and carries the same findings as the text") {
    for (const char* fixture : {"midline.gd", "parallelogram.gd"}) {
        CAPTURE(fixture);
        Construction c = from_file(fixture);
        DiscoveryReport r = discover(c, c.targets.at(0));
        auto j = nlohmann::json::parse(render_json(r));
        CHECK(j.at("format") == 1);
        CHECK(j.at("target") == c.targets.at(0));
        CHECK(j.at("aborted") == false);
        CHECK(j.contains("pool_summary"));
        CHECK(j.at("timings").contains("total_ms"));

        // field-by-field: every theorem line of the text appears in the JSON
        std::string text = render_text(r, true);
        std::set<std::string> json_lines;
        for (const auto& t : j.at("theorems")) json_lines.insert(t.get<std::string>());
        for (const auto& t : j.at("trivial")) json_lines.insert("TRIVIAL " + t.get<std::string>());
        int matched = 0;
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line))
            if (json_lines.count(line)) ++matched;
        CHECK(matched == (int)json_lines.size());
    }
}

TEST_CASE("aborted runs render an empty finding set") {
    Options opts;
    opts.per_check_timeout = std::chrono::milliseconds(1);
    DiscoveryReport r = discover(from_file("euler.gd"), "P", opts);
    REQUIRE(r.aborted);
    CHECK(render_text(r).find("aborted") != std::string::npos);
    auto j = nlohmann::json::parse(render_json(r));
    CHECK(j.at("aborted") == true);
    CHECK(j.at("theorems").empty());
}

TEST_CASE("svg output is well-formed and colors classes consistently") {
    Construction c = from_file("hexagon.gd");
    DiscoveryReport r = discover(c, "F");
    Instance inst = instantiate(c, 0);
    std::string svg = render_svg(c, inst, r);

    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg.find("viewBox") != std::string::npos);

    // 5 direction classes + 3 congruence classes -> 8 distinct palette colors
    std::set<std::string> used;
    std::size_t pos = 0;
    while ((pos = svg.find("stroke=\"#", pos)) != std::string::npos) {
        used.insert(svg.substr(pos + 8, 9));
        pos += 9;
    }
    // black base + gray circle + 8 class colors
    CHECK(used.size() == 10);

    // deterministic output
    CHECK(render_svg(c, inst, r) == svg);
}

TEST_CASE("midline svg gives DE/AB one color and BD/CD another") {
    Construction c = from_file("midline.gd");
    DiscoveryReport r = discover(c, "D");
    REQUIRE(r.pool.directions.size() == 1);
    REQUIRE(r.pool.congruences.size() == 1);
    std::string svg = render_svg(c, instantiate(c, 0), r);
    // two class colors in use (plus black)
    std::set<std::string> used;
    std::size_t pos = 0;
    while ((pos = svg.find("stroke=\"#", pos)) != std::string::npos) {
        used.insert(svg.substr(pos + 8, 9));
        pos += 9;
    }
    CHECK(used.size() == 3);
}
