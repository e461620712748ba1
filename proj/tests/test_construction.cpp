#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geodiscover/construction.hpp"

using namespace gd;

namespace {

Construction triangle() {
    Construction c;
    REQUIRE(!add_step(c, {{"A"}, FreeDef{Rat(0), Rat(0)}}));
    REQUIRE(!add_step(c, {{"B"}, FreeDef{Rat(4), Rat(0)}}));
    REQUIRE(!add_step(c, {{"C"}, FreeDef{Rat(1), Rat(3)}}));
    return c;
}

}  // namespace

TEST_CASE("add_step accepts a midpoint over defined points") {
    Construction c = triangle();
    CHECK(!add_step(c, {{"D"}, MidpointDef{"B", "C"}}));
    CHECK(c.steps.size() == 4);
}

TEST_CASE("add_step rejects unknown references") {
    Construction c = triangle();
    auto err = add_step(c, {{"D"}, MidpointDef{"B", "Z"}});
    REQUIRE(err.has_value());
    CHECK(err->kind == StepError::Kind::UnknownReference);
    CHECK(err->name == "Z");
    CHECK(c.steps.size() == 3);
}

TEST_CASE("add_step rejects duplicate names") {
    Construction c = triangle();
    REQUIRE(!add_step(c, {{"D"}, MidpointDef{"B", "C"}}));
    auto err = add_step(c, {{"D"}, MidpointDef{"A", "C"}});
    REQUIRE(err.has_value());
    CHECK(err->kind == StepError::Kind::DuplicateName);
}

TEST_CASE("add_step rejects unsupported polygons") {
    Construction c = triangle();
    auto err = add_step(c, {{"X", "Y", "Z", "W", "V"}, RegularDef{7, "A", "B"}});
    REQUIRE(err.has_value());
    CHECK(err->kind == StepError::Kind::UnsupportedPolygon);
}

TEST_CASE("validate agrees with add_step") {
    Construction c = triangle();
    REQUIRE(!add_step(c, {{"D"}, MidpointDef{"B", "C"}}));
    REQUIRE(!add_step(c, {{"E"}, MidpointDef{"A", "C"}}));
    c.targets = {"D"};
    CHECK(validate(c).empty());
}

TEST_CASE("validate flags missing free point and unknown target") {
    Construction empty;
    auto v = validate(empty);
    REQUIRE(v.size() == 1);
    CHECK(v[0].message == "no free point");

    Construction c = triangle();
    c.targets = {"Z"};
    auto v2 = validate(c);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].message == "unknown target Z");
}

TEST_CASE("nondegeneracy witnesses per step kind") {
    CHECK(nondegeneracy_witnesses({{"D"}, MidpointDef{"B", "C"}}).empty());

    Step x{{"X"},
           IntersectLinesDef{LineRef{LineRef::Kind::Through, {"A", "B"}},
                             LineRef{LineRef::Kind::Through, {"C", "D"}}}};
    auto w = nondegeneracy_witnesses(x);
    REQUIRE(w.size() == 1);
    CHECK(std::holds_alternative<NotParallel>(w[0]));

    Step f{{"F"}, FootDef{"P", "A", "B"}};
    auto wf = nondegeneracy_witnesses(f);
    REQUIRE(wf.size() == 1);
    auto* d = std::get_if<DistinctPoints>(&wf[0]);
    REQUIRE(d);
    CHECK(d->a == "A");
    CHECK(d->b == "B");
}

TEST_CASE("step order preserved and re-adding reproduces equal construction") {
    Construction c = triangle();
    REQUIRE(!add_step(c, {{"D"}, MidpointDef{"B", "C"}}));
    Construction c2;
    for (const auto& s : c.steps) REQUIRE(!add_step(c2, s));
    c2.targets = c.targets;
    CHECK(c == c2);
}
