#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsc/ingest.hpp"

namespace tsc::geocode {

struct Place {
  std::string name;   // folded city name
  std::string state;  // two-letter code
  double lat = 0.0;
  double lon = 0.0;
  int64_t population = 0;
};

double haversine_km(double lat1, double lon1, double lat2, double lon2);

// City index over a TSV gazetteer (name, state, lat, lon, population).
// Nearest-place queries run against a one-degree grid; `nearest_scan` is the
// plain linear version kept as a cross-check.
class Gazetteer {
 public:
  static Gazetteer load(const std::string& path);
  static Gazetteer from_places(std::vector<Place> places);

  const std::vector<Place>& places() const { return places_; }

  const Place* nearest(double lat, double lon, double radius_km) const;
  const Place* nearest_scan(double lat, double lon, double radius_km) const;

  // All places whose folded name matches; empty when unknown.
  std::vector<const Place*> cities_named(std::string_view folded) const;
  bool city_in_state(std::string_view folded, std::string_view state) const;

 private:
  void build_indexes();
  std::vector<Place> places_;
  std::unordered_map<int64_t, std::vector<int32_t>> grid_;
  std::unordered_map<std::string, std::vector<int32_t>> by_name_;
};

enum class Tier {
  kNone = 0,
  kCoordinates = 1,
  kPlaceName = 2,
  kUserLocation = 3,
};

const char* tier_name(Tier tier);

struct Resolution {
  std::optional<std::string> state;
  Tier tier = Tier::kNone;
};

// Free-text resolution: "City, State" forms, bare state names or
// abbreviations, or an unambiguous bare city name.
std::optional<std::string> resolve_text(const Gazetteer& gaz, std::string_view text);

Resolution resolve(const Gazetteer& gaz, const CleanMessage& msg,
                   double radius_km = 100.0);

struct GeoStats {
  size_t total = 0;
  size_t by_coordinates = 0;
  size_t by_place_name = 0;
  size_t by_user_location = 0;
  size_t unresolved = 0;
  std::unordered_map<std::string, size_t> per_state;
};

GeoStats geocode_corpus(std::vector<ingest::CorpusRow>& rows, const Gazetteer& gaz,
                        double radius_km = 100.0);

}  // namespace tsc::geocode
