#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvedepth/io.hpp"
#include "support.hpp"

using namespace curvedepth;
using namespace curvedepth::testing;

TEST_CASE("parse_curve_set: well-formed input") {
    const auto curves =
        parse_curve_set(R"({"curves":[{"id":"a","points":[[0,0],[1,0]]}]})");
    REQUIRE(curves.size() == 1);
    CHECK(curves[0].id == "a");
    CHECK(curves[0].curve.size() == 2);
}

TEST_CASE("parse_curve_set: repeated consecutive points collapse with a warning") {
    std::vector<std::string> warnings;
    const auto curves = parse_curve_set(
        R"({"curves":[{"id":"a","points":[[0,0],[0,0],[1,0]]}]})", &warnings);
    CHECK(curves[0].curve.size() == 2);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("collapsed") != std::string::npos);
}

TEST_CASE("parse_curve_set: degenerate point curve accepted") {
    const auto curves = parse_curve_set(R"({"curves":[{"id":"p","points":[[0,0]]}]})");
    CHECK(curves[0].curve.size() == 1);
}

TEST_CASE("parse_curve_set: errors name the offending entry") {
    CHECK_THROWS_AS(parse_curve_set("not json"), ParseError);
    CHECK_THROWS_AS(parse_curve_set(R"({"no_curves":[]})"), ParseError);
    CHECK_THROWS_AS(parse_curve_set(R"({"curves":[{"id":"a","points":[]}]})"), ParseError);
    CHECK_THROWS_AS(
        parse_curve_set(R"({"curves":[{"id":"a","points":[[0,0],[1,"x"]]}]})"), ParseError);
    CHECK_THROWS_AS(parse_curve_set(
                        R"({"curves":[{"id":"a","points":[[0,0],[1,0]]},{"id":"a","points":[[2,2]]}]})"),
                    ParseError);
    CHECK_THROWS_WITH_AS(parse_curve_set(R"({"curves":[{"id":"b","points":[[0,0],[1,0]]},
                                                       {"id":"a","points":"zzz"}]})"),
                         doctest::Contains("curves[1]"), ParseError);
}

TEST_CASE("serialize/parse round trip is semantically identical") {
    std::vector<NamedCurve> curves;
    curves.push_back({"a", Polyline({{0, 0}, {1.5, -2.25}, {3, 0.125}})});
    curves.push_back({"b", Polyline({{-1, -1}})});
    const std::string text = serialize_curve_set(curves);
    const auto parsed = parse_curve_set(text);
    REQUIRE(parsed.size() == curves.size());
    for (std::size_t i = 0; i < curves.size(); ++i) {
        CHECK(parsed[i].id == curves[i].id);
        CHECK(parsed[i].curve.vertices() == curves[i].curve.vertices());
    }
}

TEST_CASE("depth report JSON carries all fields") {
    DepthResult r;
    r.raw = 1.5;
    r.depth = 0.25;
    r.normalized = 0.125;
    r.length = 2.0;
    r.per_interval.resize(3);
    const std::string text = to_json(make_report("q", 2, r));
    CHECK(text.find("\"query\": \"q\"") != std::string::npos);
    CHECK(text.find("\"n\": 2") != std::string::npos);
    CHECK(text.find("\"method\": \"exact\"") != std::string::npos);
    CHECK(text.find("\"intervals\": 3") != std::string::npos);
    CHECK(text.find("\"seed\"") == std::string::npos);  // absent for exact runs
}

TEST_CASE("field CSV header carries bbox and resolution") {
    DepthField f;
    f.bbox = {0, 0, 1, 1};
    f.nx = 2;
    f.ny = 2;
    f.values = {0.0, 0.25, 0.5, 1.0};
    const std::string csv = field_csv(f);
    CHECK(csv.find("# bbox,0,0,1,1") != std::string::npos);
    CHECK(csv.find("# res,2,2") != std::string::npos);
    CHECK(csv.find("0,0.25") != std::string::npos);
    CHECK(csv.find("0.5,1") != std::string::npos);
}
