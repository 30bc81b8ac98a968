#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tsc/csv.hpp"
#include "tsc/report.hpp"
#include "tsc/util.hpp"

using namespace tsc;
using namespace tsc::report;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(bool(out));
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A unit square with its lower-left corner at (x, y); enough geometry to give
// every test state one ring.
StateShape box(const std::string& state, double x, double y) {
  StateShape s;
  s.state = state;
  s.rings.push_back({{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}});
  return s;
}

// Fill color of a state's path element, e.g. "#eff6fc".
std::string fill_of(const std::string& svg, const std::string& state) {
  std::string key = "id=\"state-" + state + "\" fill=\"";
  auto pos = svg.find(key);
  REQUIRE(pos != std::string::npos);
  return svg.substr(pos + key.size(), 7);
}

int channel(const std::string& fill, int i) {
  REQUIRE(fill.size() == 7);
  return std::stoi(fill.substr(1 + 2 * size_t(i), 2), nullptr, 16);
}

size_t count_of(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("load_geometry reads polygons and multipolygons, outer rings only") {
  const std::string path = tmp_path("tsc_report_geo.json");
  write_file(path, R"({
    "type": "FeatureCollection",
    "features": [
      {"type": "Feature",
       "properties": {"state": "CA", "name": "California"},
       "geometry": {"type": "Polygon",
                    "coordinates": [
                      [[0,0],[10,0],[10,10],[0,10]],
                      [[4,4],[6,4],[6,6],[4,6]]]}},
      {"type": "Feature",
       "properties": {"state": "TX"},
       "geometry": {"type": "MultiPolygon",
                    "coordinates": [
                      [[[20,0],[30,0],[25,8]]],
                      [[[32,2],[36,2],[36,6],[32,6]]]]}},
      {"type": "Feature",
       "properties": {"state": "FL"},
       "geometry": {"type": "Polygon",
                    "coordinates": [[[40,0],[50,0],[45,5]]]}}
    ]
  })");

  auto shapes = load_geometry(path);
  REQUIRE(shapes.size() == 3);

  CHECK(shapes[0].state == "CA");
  // The interior (hole) ring is dropped; only the outer boundary survives.
  REQUIRE(shapes[0].rings.size() == 1);
  REQUIRE(shapes[0].rings[0].size() == 4);
  CHECK(shapes[0].rings[0][0] == std::pair<double, double>(0.0, 0.0));
  CHECK(shapes[0].rings[0][2] == std::pair<double, double>(10.0, 10.0));

  CHECK(shapes[1].state == "TX");
  REQUIRE(shapes[1].rings.size() == 2);  // one ring per member polygon
  CHECK(shapes[1].rings[0].size() == 3);
  CHECK(shapes[1].rings[1].size() == 4);
  CHECK(shapes[1].rings[1][0] == std::pair<double, double>(32.0, 2.0));

  CHECK(shapes[2].state == "FL");
  REQUIRE(shapes[2].rings.size() == 1);
  CHECK(shapes[2].rings[0].size() == 3);

  std::filesystem::remove(path);
}

TEST_CASE("load_geometry rejects malformed inputs") {
  const std::string path = tmp_path("tsc_report_geo_bad.json");

  CHECK_THROWS_AS(load_geometry(tmp_path("tsc_report_no_such_file.json")),
                  ConfigError);

  auto expect_parse_error = [&](const std::string& body) {
    write_file(path, body);
    CHECK_THROWS_AS(load_geometry(path), ParseError);
  };

  expect_parse_error("this is not json {{{");
  expect_parse_error(R"({"type": "Feature"})");
  expect_parse_error(R"({"type": "FeatureCollection", "features": []})");

  // Feature without a state property.
  expect_parse_error(R"({"type":"FeatureCollection","features":[
    {"type":"Feature","properties":{"name":"x"},
     "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1]]]}}]})");

  // state present but not a string.
  expect_parse_error(R"({"type":"FeatureCollection","features":[
    {"type":"Feature","properties":{"state":7},
     "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1]]]}}]})");

  // Unknown state code.
  expect_parse_error(R"({"type":"FeatureCollection","features":[
    {"type":"Feature","properties":{"state":"ZZ"},
     "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1]]]}}]})");

  // Unsupported geometry type.
  expect_parse_error(R"({"type":"FeatureCollection","features":[
    {"type":"Feature","properties":{"state":"CA"},
     "geometry":{"type":"Point","coordinates":[0,0]}}]})");

  // A point that is not a [lon, lat] pair.
  expect_parse_error(R"({"type":"FeatureCollection","features":[
    {"type":"Feature","properties":{"state":"CA"},
     "geometry":{"type":"Polygon","coordinates":[[[0],[1,0],[1,1]]]}}]})");

  std::filesystem::remove(path);
}

TEST_CASE("choropleth fills are linear in value between observed min and max") {
  std::vector<StateShape> shapes = {box("AL", 0, 0), box("TX", 2, 0), box("FL", 4, 0)};

  // AL carries the observed min (0), FL the max (0.5); TX sits exactly
  // halfway up the ramp.
  std::map<std::string, double> values = {{"AL", 0.0}, {"TX", 0.25}, {"FL", 0.5}};
  std::string svg = render_choropleth(values, shapes, "Linear ramp");

  CHECK(fill_of(svg, "AL") == "#eff6fc");  // ramp start (lightest)
  CHECK(fill_of(svg, "FL") == "#08519c");  // ramp end (most saturated)
  // Halfway mix of 0xef/0xf6/0xfc and 0x08/0x51/0x9c, rounded per channel.
  CHECK(fill_of(svg, "TX") == "#7ca4cc");

  // Legend shows the observed extremes.
  CHECK(svg.find(">0.0000<") != std::string::npos);
  CHECK(svg.find(">0.5000<") != std::string::npos);
}

TEST_CASE("choropleth extreme and degenerate value maps") {
  std::vector<StateShape> shapes = {box("AL", 0, 0), box("AZ", 2, 0), box("CA", 4, 0)};

  SUBCASE("one state at max, rest at min: exactly one fully saturated state") {
    std::map<std::string, double> values = {{"AL", 0.0}, {"AZ", 0.0}, {"CA", 1.0}};
    std::string svg = render_choropleth(values, shapes, "Extremes");
    CHECK(fill_of(svg, "CA") == "#08519c");
    CHECK(fill_of(svg, "AL") == "#eff6fc");
    CHECK(fill_of(svg, "AZ") == "#eff6fc");
    // The saturated color appears as a path fill exactly once (the gradient
    // stops use stop-color, not fill, so they do not inflate the count).
    CHECK(count_of(svg, "fill=\"#08519c\"") == 1);
  }

  SUBCASE("all states equal: uniform fill, degenerate legend without div by zero") {
    std::map<std::string, double> values = {{"AL", 0.3}, {"AZ", 0.3}, {"CA", 0.3}};
    std::string svg = render_choropleth(values, shapes, "Uniform");
    std::string f = fill_of(svg, "AL");
    CHECK(fill_of(svg, "AZ") == f);
    CHECK(fill_of(svg, "CA") == f);
    for (int i = 0; i < 3; ++i) CHECK(std::isfinite(double(channel(f, i))));
    // min == max in the legend.
    CHECK(count_of(svg, ">0.3000<") == 2);
  }

  SUBCASE("empty value map: every state neutral") {
    std::string svg = render_choropleth({}, shapes, "Empty");
    CHECK(fill_of(svg, "AL") == "#d9d9d9");
    CHECK(fill_of(svg, "AZ") == "#d9d9d9");
    CHECK(fill_of(svg, "CA") == "#d9d9d9");
  }
}

TEST_CASE("choropleth ramp intensity is monotone in value") {
  const std::vector<std::string> states = {"AL", "AZ", "AR", "CA", "CO", "CT", "DE", "FL"};
  std::vector<StateShape> shapes;
  std::map<std::string, double> values;
  for (size_t i = 0; i < states.size(); ++i) {
    shapes.push_back(box(states[i], 2.0 * double(i), 0));
    values[states[i]] = 0.1 * double(i);  // strictly increasing
  }
  std::string svg = render_choropleth(values, shapes, "Monotone");

  // The ramp darkens from #eff6fc toward #08519c, so every channel must be
  // non-increasing as the value grows.
  for (size_t i = 1; i < states.size(); ++i) {
    std::string lo = fill_of(svg, states[i - 1]);
    std::string hi = fill_of(svg, states[i]);
    for (int c = 0; c < 3; ++c) CHECK(channel(hi, c) <= channel(lo, c));
  }
  CHECK(fill_of(svg, states.front()) == "#eff6fc");
  CHECK(fill_of(svg, states.back()) == "#08519c");
}

TEST_CASE("choropleth handles missing geometry and unknown states") {
  std::vector<StateShape> shapes = {box("CA", 0, 0)};

  SUBCASE("state without a value renders in the neutral fill") {
    std::vector<StateShape> two = {box("CA", 0, 0), box("NV", 2, 0)};
    std::string svg = render_choropleth({{"CA", 1.0}}, two, "Partial");
    CHECK(fill_of(svg, "CA") == "#08519c");
    CHECK(fill_of(svg, "NV") == "#d9d9d9");
  }

  SUBCASE("value for a state absent from the geometry warns and is skipped") {
    std::ostringstream captured;
    auto* old = std::cerr.rdbuf(captured.rdbuf());
    std::string svg = render_choropleth({{"CA", 1.0}, {"WA", 0.5}}, shapes, "Gap");
    std::cerr.rdbuf(old);
    CHECK(captured.str().find("geometry missing state WA") != std::string::npos);
    CHECK(svg.find("id=\"state-WA\"") == std::string::npos);
    CHECK(fill_of(svg, "CA") == "#08519c");  // WA still contributes to the scale
  }

  SUBCASE("value keyed by an invalid state code is rejected") {
    CHECK_THROWS_AS(render_choropleth({{"XX", 1.0}}, shapes, "Bad"), ConfigError);
  }
}

TEST_CASE("choropleth svg structure: header, title, path data, legend") {
  // Single unit-square-like state spanning (0,0)-(10,10). With an 800x500
  // canvas, 16px padding, and 70px reserved for title+legend, the limiting
  // scale is (430-32)/10 = 39.8 px per degree, so the square lands on
  // x in [16, 414] and y in [56, 454].
  StateShape ca;
  ca.state = "CA";
  ca.rings.push_back({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
  std::string svg =
      render_choropleth({{"CA", 1.0}}, {ca}, "Vaccine <talk> & \"quotes\"");

  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
  CHECK(svg.find("width=\"800.00\" height=\"500.00\"") != std::string::npos);
  CHECK(svg.substr(svg.size() - 7) == "</svg>\n");

  // Title is centered and XML-escaped.
  CHECK(svg.find("<text x=\"400.00\" y=\"26\"") != std::string::npos);
  CHECK(svg.find("Vaccine &lt;talk&gt; &amp; &quot;quotes&quot;") != std::string::npos);
  CHECK(svg.find("<talk>") == std::string::npos);

  // Exact projected outline of the square.
  CHECK(svg.find("d=\"M16.00 454.00L414.00 454.00L414.00 56.00L16.00 56.00Z\"") !=
        std::string::npos);

  // Legend gradient bar and its extreme labels.
  CHECK(svg.find("fill=\"url(#ramp)\"") != std::string::npos);
  CHECK(count_of(svg, ">1.0000<") == 2);  // single value: min == max == 1
}

TEST_CASE("choropleth rendering is deterministic and written byte-for-byte") {
  std::vector<StateShape> shapes = {box("CA", 0, 0), box("TX", 2, 0), box("NY", 4, 0)};
  std::map<std::string, double> values = {{"CA", 0.7}, {"TX", 0.2}, {"NY", 0.4}};

  std::string once = render_choropleth(values, shapes, "Same");
  std::string twice = render_choropleth(values, shapes, "Same");
  CHECK(once == twice);

  const std::string path = tmp_path("tsc_report_map.svg");
  write_choropleth(path, values, shapes, "Same");
  CHECK(read_file(path) == once);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(
      write_choropleth("/nonexistent-dir/map.svg", values, shapes, "Same"), Error);
}

TEST_CASE("wordcloud sizes are proportional to probability with max 1") {
  SUBCASE("probabilities 0.2 and 0.1 give sizes 1.0 and 0.5") {
    auto cloud = render_wordcloud_data({{"vaccine", 0.2}, {"hpv", 0.1}});
    REQUIRE(cloud.size() == 2);
    CHECK(cloud[0].word == "vaccine");
    CHECK(cloud[0].probability == 0.2);
    CHECK(cloud[0].size == 1.0);
    CHECK(cloud[1].word == "hpv");
    CHECK(cloud[1].probability == 0.1);
    CHECK(cloud[1].size == 0.5);
  }

  SUBCASE("single word gets size 1.0") {
    auto cloud = render_wordcloud_data({{"only", 0.03}});
    REQUIRE(cloud.size() == 1);
    CHECK(cloud[0].size == 1.0);
  }

  SUBCASE("equal probabilities give equal sizes") {
    auto cloud = render_wordcloud_data({{"a", 0.04}, {"b", 0.04}, {"c", 0.04}});
    REQUIRE(cloud.size() == 3);
    for (const auto& w : cloud) CHECK(w.size == 1.0);
  }

  SUBCASE("input order is preserved even when unsorted") {
    // Power-of-two probabilities make the normalized ratio exact.
    auto cloud = render_wordcloud_data({{"small", 0.015625}, {"big", 0.0625}});
    CHECK(cloud[0].word == "small");
    CHECK(cloud[0].size == 0.25);
    CHECK(cloud[1].word == "big");
    CHECK(cloud[1].size == 1.0);
  }

  SUBCASE("empty input and non-positive probabilities are rejected") {
    CHECK_THROWS_AS(render_wordcloud_data({}), ConfigError);
    CHECK_THROWS_AS(render_wordcloud_data({{"a", 0.0}, {"b", 0.0}}), ConfigError);
  }
}

TEST_CASE("wordcloud csv format and lossless probability round-trip") {
  const std::string path = tmp_path("tsc_report_cloud.csv");

  SUBCASE("exact bytes for binary-exact probabilities") {
    auto cloud = render_wordcloud_data({{"alpha", 0.25}, {"beta", 0.125}});
    write_wordcloud_csv(path, cloud);
    CHECK(read_file(path) ==
          "word,probability,size\n"
          "alpha,0.25,1.000000\n"
          "beta,0.125,0.500000\n");
  }

  SUBCASE("probabilities survive the file round trip bit-for-bit") {
    auto cloud = render_wordcloud_data({{"vaccine", 0.2}, {"hpv", 0.1}});
    write_wordcloud_csv(path, cloud);

    auto csv = read_csv(path);
    REQUIRE(csv.header == std::vector<std::string>{"word", "probability", "size"});
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.rows[0][0] == "vaccine");
    CHECK(parse_double(csv.rows[0][1]) == 0.2);
    CHECK(csv.rows[0][2] == "1.000000");
    CHECK(csv.rows[1][0] == "hpv");
    CHECK(parse_double(csv.rows[1][1]) == 0.1);
    CHECK(csv.rows[1][2] == "0.500000");
  }

  std::filesystem::remove(path);
}
