#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "tsc/geocode.hpp"
#include "tsc/record.hpp"
#include "tsc/util.hpp"

using namespace tsc;

namespace {

const std::string kFixtures = std::string(TSC_SOURCE_DIR) + "/tests/fixtures";

geocode::Gazetteer& fixture_gazetteer() {
  static geocode::Gazetteer gaz =
      geocode::Gazetteer::load(kFixtures + "/gazetteer_us.tsv");
  return gaz;
}

struct Case {
  std::string id;
  std::optional<double> lat, lon;
  std::optional<std::string> place_name, user_location;
  std::string expected_state;  // empty = unresolved
  std::string expected_tier;
};

std::vector<Case> load_cases() {
  std::ifstream in(kFixtures + "/geocode_cases.tsv");
  REQUIRE(in.good());
  std::vector<Case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    REQUIRE(f.size() == 7);
    Case c;
    c.id = std::string(f[0]);
    if (!f[1].empty()) c.lat = *parse_double(f[1]);
    if (!f[2].empty()) c.lon = *parse_double(f[2]);
    if (!f[3].empty()) c.place_name = std::string(f[3]);
    if (!f[4].empty()) c.user_location = std::string(f[4]);
    c.expected_state = std::string(f[5]);
    c.expected_tier = std::string(f[6]);
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace

TEST_CASE("hand-labeled resolution fixture resolves with full agreement") {
  const auto& gaz = fixture_gazetteer();
  auto cases = load_cases();
  REQUIRE(cases.size() >= 50);
  for (const auto& c : cases) {
    CAPTURE(c.id);
    CleanMessage msg;
    msg.id = c.id;
    msg.latitude = c.lat;
    msg.longitude = c.lon;
    msg.place_name = c.place_name;
    msg.user_location = c.user_location;
    auto res = geocode::resolve(gaz, msg, 100.0);
    if (c.expected_state.empty()) {
      CHECK_FALSE(res.state.has_value());
    } else {
      REQUIRE_MESSAGE(res.state.has_value(), c.id << ": expected " << c.expected_state);
      CHECK(*res.state == c.expected_state);
    }
    CHECK(geocode::tier_name(res.tier) == c.expected_tier);
  }
}

TEST_CASE("grid index equals brute-force scan on 10,000 random points") {
  const auto& gaz = fixture_gazetteer();
  std::mt19937_64 rng(20260816);
  std::uniform_real_distribution<double> lat_d(18.0, 72.0);
  std::uniform_real_distribution<double> lon_d(-170.0, -65.0);
  const double radii[] = {25.0, 100.0, 300.0};
  for (int i = 0; i < 10000; ++i) {
    double lat = lat_d(rng), lon = lon_d(rng);
    double radius = radii[i % 3];
    const auto* a = gaz.nearest(lat, lon, radius);
    const auto* b = gaz.nearest_scan(lat, lon, radius);
    CAPTURE(lat);
    CAPTURE(lon);
    CAPTURE(radius);
    REQUIRE((a == nullptr) == (b == nullptr));
    if (a) {
      CHECK(a->name == b->name);
      CHECK(a->state == b->state);
    }
  }
}

TEST_CASE("haversine distance sanity") {
  // New York City to Los Angeles, great-circle, about 3936 km.
  double d = geocode::haversine_km(40.7128, -74.0060, 34.0522, -118.2437);
  CHECK(d == doctest::Approx(3936.0).epsilon(0.01));
  CHECK(geocode::haversine_km(10.0, 20.0, 10.0, 20.0) == doctest::Approx(0.0));
  double ab = geocode::haversine_km(29.0, -82.0, 30.0, -83.0);
  double ba = geocode::haversine_km(30.0, -83.0, 29.0, -82.0);
  CHECK(ab == doctest::Approx(ba));
  // One degree of latitude is about 111.2 km everywhere.
  CHECK(geocode::haversine_km(0.0, 0.0, 1.0, 0.0) == doctest::Approx(111.195).epsilon(0.001));
}

TEST_CASE("nearest tie-breaking prefers population, then state, then name") {
  std::vector<geocode::Place> places = {
      {"alpha", "TX", 30.0, -95.0, 100},
      {"beta", "TX", 30.0, -95.0, 500},   // same spot, larger population
      {"gamma", "AZ", 31.0, -95.0, 500},
  };
  auto gaz = geocode::Gazetteer::from_places(places);
  const auto* p = gaz.nearest(30.0, -95.0, 50.0);
  REQUIRE(p != nullptr);
  CHECK(p->name == "beta");

  // Equal population and distance: lexicographically smaller state first.
  std::vector<geocode::Place> places2 = {
      {"same", "TX", 30.0, -95.0, 100},
      {"same", "AZ", 30.0, -95.0, 100},
  };
  auto gaz2 = geocode::Gazetteer::from_places(places2);
  const auto* p2 = gaz2.nearest(30.0, -95.0, 50.0);
  REQUIRE(p2 != nullptr);
  CHECK(p2->state == "AZ");
}

TEST_CASE("gazetteer loading validates input") {
  const auto& gaz = fixture_gazetteer();
  CHECK(gaz.places().size() >= 130);
  CHECK(gaz.city_in_state("gainesville", "FL"));
  CHECK(gaz.city_in_state("gainesville", "GA"));
  CHECK_FALSE(gaz.city_in_state("gainesville", "TX"));
  CHECK(gaz.cities_named("springfield").size() == 4);  // IL MA MO OR
  CHECK(gaz.cities_named("miami").size() == 1);
  CHECK(gaz.cities_named("no such town").empty());

  auto tmp = std::filesystem::temp_directory_path();
  {
    std::ofstream f(tmp / "bad_state.tsv");
    f << "Nowhere\tZZ\t10.0\t10.0\t5\n";
  }
  CHECK_THROWS_AS(geocode::Gazetteer::load((tmp / "bad_state.tsv").string()),
                  ParseError);
  {
    std::ofstream f(tmp / "bad_coord.tsv");
    f << "Nowhere\tTX\t95.0\t10.0\t5\n";
  }
  CHECK_THROWS_AS(geocode::Gazetteer::load((tmp / "bad_coord.tsv").string()),
                  ParseError);
}

TEST_CASE("geocode_corpus fills states and tier counts") {
  const auto& gaz = fixture_gazetteer();
  std::vector<ingest::CorpusRow> rows(4);
  rows[0].msg.id = "0";
  rows[0].msg.latitude = 29.6516;
  rows[0].msg.longitude = -82.3248;
  rows[1].msg.id = "1";
  rows[1].msg.place_name = "Austin, TX";
  rows[2].msg.id = "2";
  rows[2].msg.user_location = "somewhere in Maine";
  rows[3].msg.id = "3";
  rows[3].msg.user_location = "the moon";

  auto stats = geocode::geocode_corpus(rows, gaz, 100.0);
  CHECK(stats.total == 4);
  CHECK(stats.by_coordinates == 1);
  CHECK(stats.by_place_name == 1);
  CHECK(stats.by_user_location == 1);
  CHECK(stats.unresolved == 1);
  REQUIRE(rows[0].state);
  CHECK(*rows[0].state == "FL");
  REQUIRE(rows[1].state);
  CHECK(*rows[1].state == "TX");
  REQUIRE(rows[2].state);
  CHECK(*rows[2].state == "ME");
  CHECK_FALSE(rows[3].state.has_value());
  CHECK(stats.per_state.at("FL") == 1);
}
