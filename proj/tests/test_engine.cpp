#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "geodiscover/engine.hpp"
#include "geodiscover/parser.hpp"

using namespace gd;

namespace {

Construction from_file(const std::string& name) {
    std::ifstream in(std::string(GD_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::get<Construction>(parse(ss.str()));
}

// Order-insensitive comparison helpers for two-segment statements.
using Seg = std::pair<std::string, std::string>;
std::pair<Seg, Seg> seg_pair(const Predicate& p) {
    auto norm = [](std::string a, std::string b) {
        if (b < a) std::swap(a, b);
        return Seg{a, b};
    };
    Seg u = norm(p.pts[0], p.pts[1]), v = norm(p.pts[2], p.pts[3]);
    if (v < u) std::swap(u, v);
    return {u, v};
}

bool has_statement(const std::vector<Finding>& fs, const Predicate& want) {
    for (const auto& f : fs) {
        if (f.statement.kind != want.kind) continue;
        if (want.kind == Predicate::Kind::Parallel || want.kind == Predicate::Kind::Congruent) {
            if (seg_pair(f.statement) == seg_pair(want)) return true;
        } else {
            std::vector<std::string> a = f.statement.pts, b = want.pts;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a == b) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("midline discovery finds exactly the two non-trivial target theorems") {
    DiscoveryReport r = discover(from_file("midline.gd"), "D");
    CHECK(!r.aborted);
    auto theorems = r.theorems();
    REQUIRE(theorems.size() == 2);
    CHECK(has_statement(theorems, Predicate::parallel("D", "E", "A", "B")));
    CHECK(has_statement(theorems, Predicate::congruent("B", "D", "C", "D")));
    // the defining collinearity is found but trivial
    CHECK(has_statement(r.trivia(), Predicate::collinear("B", "C", "D")));
    CHECK(!has_statement(theorems, Predicate::collinear("B", "C", "D")));
    // one direction class through the target (DE with AB)
    CHECK(r.pool.directions.size() == 1);
    CHECK(r.pool.identical_group.empty());
}

TEST_CASE("parallelogram discovery merges the diagonal midpoints") {
    DiscoveryReport r = discover(from_file("parallelogram.gd"), "P5");
    CHECK(!r.aborted);
    CHECK(has_statement(r.theorems(), Predicate::identical("P5", "P6")));
    // both diagonal collinearities are entailed by single steps once the
    // midpoints coincide
    CHECK(has_statement(r.trivia(), Predicate::collinear("P2", "P4", "P5")));
    CHECK(has_statement(r.trivia(), Predicate::collinear("P1", "P3", "P5")));
    std::vector<std::string> group = r.pool.identical_group;
    std::sort(group.begin(), group.end());
    CHECK(group == std::vector<std::string>{"P5", "P6"});
}

TEST_CASE("hexagon discovery produces the published class counts") {
    DiscoveryReport r = discover(from_file("hexagon.gd"), "F");
    CHECK(!r.aborted);
    // the three long-diagonal intersections coincide
    std::vector<std::string> merged;
    for (const auto& f : r.findings)
        if (f.statement.kind == Predicate::Kind::Identical)
            merged.insert(merged.end(), f.statement.pts.begin(), f.statement.pts.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    CHECK(merged == std::vector<std::string>{"G", "H", "I"});

    REQUIRE(r.pool.circles.size() == 1);
    CHECK(r.pool.circles[0].size() == 6);
    CHECK(r.pool.directions.size() == 5);
    CHECK(r.pool.congruences.size() == 3);
}

TEST_CASE("numeric filter dispatches far fewer candidates than it enumerates") {
    DiscoveryReport r = discover(from_file("midline.gd"), "D");
    int enumerated = 0, dispatched = 0;
    for (const auto& [ph, n] : r.enumerated) enumerated += n;
    for (const auto& [ph, n] : r.dispatched) dispatched += n;
    CHECK(enumerated > 3 * dispatched);
    // exactly the two midpoint collinearities pass the numeric filter
    CHECK(r.dispatched[Phase::Collinear] == 2);
}

TEST_CASE("trivial statement detection") {
    Construction c = from_file("midline.gd");
    Pool pool(c);
    CHECK(is_trivial(Predicate::collinear("B", "C", "D"), pool, c));
    CHECK(is_trivial(Predicate::collinear("A", "C", "E"), pool, c));
    CHECK(!is_trivial(Predicate::collinear("A", "B", "C"), pool, c));
    // congruences are never trivial, even the defining half-segments
    CHECK(!is_trivial(Predicate::congruent("B", "D", "C", "D"), pool, c));
    CHECK(!is_trivial(Predicate::parallel("D", "E", "A", "B"), pool, c));
    // identity is trivial only for definitionally equal points
    CHECK(!is_trivial(Predicate::identical("D", "E"), pool, c));

    // collinearity through a merged class member
    Construction pg = from_file("parallelogram.gd");
    Pool pp(pg);
    CHECK(!is_trivial(Predicate::collinear("P2", "P4", "P5"), pp, pg));
    pp.merge_points("P5", "P6");
    CHECK(is_trivial(Predicate::collinear("P2", "P4", "P5"), pp, pg));
}

TEST_CASE("identity timeout aborts discovery with empty findings") {
    Options opts;
    opts.per_check_timeout = std::chrono::milliseconds(1);
    DiscoveryReport r = discover(from_file("euler.gd"), "P", opts);
    CHECK(r.aborted);
    CHECK(r.findings.empty());
    CHECK(r.theorems().empty());
}

TEST_CASE("degenerate constructions raise instead of reporting junk") {
    Construction c = std::get<Construction>(parse(
        "point A = free(0, 0)\npoint B = free(1, 0)\n"
        "point X = intersect(line(A, B), parallel_at(A, A, B))\ndiscover X\n"));
    CHECK_THROWS_AS(discover(c, "X"), DegenerateInstance);
}
