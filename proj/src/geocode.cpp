#include "tsc/geocode.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "tsc/states.hpp"
#include "tsc/util.hpp"

namespace tsc::geocode {

namespace {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kPi = 3.14159265358979323846;
constexpr double kKmPerDegLat = 110.574;
constexpr double kKmPerDegLonEquator = 111.320;

double deg2rad(double d) { return d * (kPi / 180.0); }

// Pack one-degree cells into a map key; longitude wraps.
int64_t cell_key(int lat_cell, int lon_cell) {
  lat_cell = std::clamp(lat_cell, -90, 89);
  lon_cell = ((lon_cell + 180) % 360 + 360) % 360 - 180;
  return int64_t(lat_cell + 90) * 360 + int64_t(lon_cell + 180);
}

int cell_of(double deg) { return int(std::floor(deg)); }

// Strict order over (distance, population desc, state, name, index) so the
// winner never depends on scan order.
struct Candidate {
  const Place* place = nullptr;
  double distance = 0.0;
  int32_t index = 0;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  if (a.place->population != b.place->population)
    return a.place->population > b.place->population;
  if (a.place->state != b.place->state) return a.place->state < b.place->state;
  if (a.place->name != b.place->name) return a.place->name < b.place->name;
  return a.index < b.index;
}

std::string join_words(const std::vector<std::string>& words, size_t from, size_t to) {
  std::string out;
  for (size_t i = from; i < to; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += words[i];
  }
  return out;
}

bool is_country_token(const std::string& folded_segment) {
  return folded_segment.empty() || folded_segment == "usa" ||
         folded_segment == "us" || folded_segment == "united states" ||
         folded_segment == "united states of america" || folded_segment == "america";
}

// State names as word sequences, longest first, with the capital-district
// spellings folded in; bare "washington" stays the state.
struct NameEntry {
  std::vector<std::string> words;
  std::string code;
};

const std::vector<NameEntry>& state_name_entries() {
  static const std::vector<NameEntry> entries = [] {
    std::vector<NameEntry> out;
    for (const auto& s : kStates) out.push_back({words_of(s.name), s.code});
    out.push_back({{"washington", "dc"}, "DC"});
    out.push_back({{"washington", "d", "c"}, "DC"});
    std::stable_sort(out.begin(), out.end(), [](const NameEntry& a, const NameEntry& b) {
      return a.words.size() > b.words.size();
    });
    return out;
  }();
  return entries;
}

// A comma segment like "FL" or "FL 32601" or "Florida".
std::optional<std::string> segment_as_state(const std::string& segment) {
  auto words = words_of(segment);
  if (words.empty()) return std::nullopt;
  std::string joined = join_words(words, 0, words.size());
  if (auto code = state_by_name_folded(joined)) return code;
  if (words[0].size() == 2) {
    bool rest_numeric = true;
    for (size_t i = 1; i < words.size(); ++i) {
      for (char c : words[i])
        if (c < '0' || c > '9') rest_numeric = false;
    }
    if (rest_numeric) {
      if (auto code = state_by_code_folded(words[0])) return code;
    }
  }
  return std::nullopt;
}

}  // namespace

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  double phi1 = deg2rad(lat1), phi2 = deg2rad(lat2);
  double dphi = deg2rad(lat2 - lat1), dlambda = deg2rad(lon2 - lon1);
  double sp = std::sin(dphi / 2.0), sl = std::sin(dlambda / 2.0);
  double a = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  double c = 2.0 * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));
  return kEarthRadiusKm * c;
}

Gazetteer Gazetteer::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open gazetteer: " + path);
  std::vector<Place> places;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    auto cols = split(sv, '\t');
    if (lineno == 1 && cols.size() >= 2 && fold(trim(cols[0])) == "name") continue;
    if (cols.size() < 4)
      throw ParseError("gazetteer line " + std::to_string(lineno) + ": expected name, state, lat, lon[, population]");
    Place p;
    p.name = fold(trim(cols[0]));
    p.state = std::string(trim(cols[1]));
    for (auto& c : p.state) c = char(std::toupper(static_cast<unsigned char>(c)));
    if (!valid_state_code(p.state))
      throw ParseError("gazetteer line " + std::to_string(lineno) + ": unknown state " + p.state);
    auto lat = parse_double(cols[2]);
    auto lon = parse_double(cols[3]);
    if (!lat || !lon || *lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0)
      throw ParseError("gazetteer line " + std::to_string(lineno) + ": bad coordinates");
    p.lat = *lat;
    p.lon = *lon;
    if (cols.size() >= 5) {
      auto pop = parse_int(cols[4]);
      if (!pop || *pop < 0)
        throw ParseError("gazetteer line " + std::to_string(lineno) + ": bad population");
      p.population = *pop;
    }
    places.push_back(std::move(p));
  }
  if (places.empty()) throw ConfigError("gazetteer is empty: " + path);
  return from_places(std::move(places));
}

Gazetteer Gazetteer::from_places(std::vector<Place> places) {
  Gazetteer gaz;
  gaz.places_ = std::move(places);
  gaz.build_indexes();
  return gaz;
}

void Gazetteer::build_indexes() {
  grid_.clear();
  by_name_.clear();
  for (size_t i = 0; i < places_.size(); ++i) {
    const Place& p = places_[i];
    grid_[cell_key(cell_of(p.lat), cell_of(p.lon))].push_back(int32_t(i));
    by_name_[p.name].push_back(int32_t(i));
  }
}

const Place* Gazetteer::nearest(double lat, double lon, double radius_km) const {
  // Conservative one-degree-cell cover of the search disc. Longitude degrees
  // shrink toward the poles, so size that span by the worst latitude in the
  // band; a band touching a pole covers every longitude.
  double dlat = radius_km / kKmPerDegLat;
  double lat_lo = lat - dlat, lat_hi = lat + dlat;
  double worst_abs_lat = std::max(std::fabs(lat_lo), std::fabs(lat_hi));
  double dlon;
  if (worst_abs_lat >= 89.9) {
    dlon = 180.0;
  } else {
    double km_per_deg = kKmPerDegLonEquator * std::cos(deg2rad(worst_abs_lat));
    dlon = std::min(180.0, radius_km / km_per_deg);
  }

  int lat_cell_lo = std::max(-90, cell_of(lat_lo));
  int lat_cell_hi = std::min(89, cell_of(lat_hi));
  int lon_cell_lo, lon_cell_hi;
  if (dlon >= 180.0) {
    lon_cell_lo = -180;
    lon_cell_hi = 179;
  } else {
    lon_cell_lo = cell_of(lon - dlon);
    lon_cell_hi = cell_of(lon + dlon);
    if (lon_cell_hi - lon_cell_lo >= 360) {
      lon_cell_lo = -180;
      lon_cell_hi = 179;
    }
  }

  Candidate best;
  for (int lt = lat_cell_lo; lt <= lat_cell_hi; ++lt) {
    for (int ln = lon_cell_lo; ln <= lon_cell_hi; ++ln) {
      auto it = grid_.find(cell_key(lt, ln));
      if (it == grid_.end()) continue;
      for (int32_t idx : it->second) {
        const Place& p = places_[size_t(idx)];
        double d = haversine_km(lat, lon, p.lat, p.lon);
        if (d > radius_km) continue;
        Candidate c{&p, d, idx};
        if (!best.place || better(c, best)) best = c;
      }
    }
  }
  return best.place;
}

const Place* Gazetteer::nearest_scan(double lat, double lon, double radius_km) const {
  Candidate best;
  for (size_t i = 0; i < places_.size(); ++i) {
    const Place& p = places_[i];
    double d = haversine_km(lat, lon, p.lat, p.lon);
    if (d > radius_km) continue;
    Candidate c{&p, d, int32_t(i)};
    if (!best.place || better(c, best)) best = c;
  }
  return best.place;
}

std::vector<const Place*> Gazetteer::cities_named(std::string_view folded) const {
  std::vector<const Place*> out;
  auto it = by_name_.find(std::string(folded));
  if (it == by_name_.end()) return out;
  for (int32_t idx : it->second) out.push_back(&places_[size_t(idx)]);
  return out;
}

bool Gazetteer::city_in_state(std::string_view folded, std::string_view state) const {
  for (const Place* p : cities_named(folded))
    if (p->state == state) return true;
  return false;
}

const char* tier_name(Tier tier) {
  switch (tier) {
    case Tier::kCoordinates: return "coordinates";
    case Tier::kPlaceName: return "place_name";
    case Tier::kUserLocation: return "user_location";
    case Tier::kNone: break;
  }
  return "none";
}

std::optional<std::string> resolve_text(const Gazetteer& gaz, std::string_view text) {
  std::string trimmed(trim(text));
  if (trimmed.empty()) return std::nullopt;

  // "City, State[, country]" — the strongest signal when it checks out
  // against the gazetteer.
  if (trimmed.find(',') != std::string::npos) {
    auto raw_segments = split(trimmed, ',');
    std::vector<std::string> segments;
    for (const auto& seg : raw_segments) {
      auto words = words_of(seg);
      segments.push_back(join_words(words, 0, words.size()));
    }
    while (!segments.empty() && is_country_token(segments.back())) segments.pop_back();
    if (segments.size() >= 2) {
      if (auto state = segment_as_state(raw_segments[segments.size() - 1])) {
        const std::string& city = segments[segments.size() - 2];
        if (gaz.city_in_state(city, *state)) return state;
      }
    }
  }

  // Bare state names anywhere in the text, longest names first so
  // "west virginia" never reads as "virginia".
  auto words = words_of(trimmed);
  for (size_t i = 0; i < words.size(); ++i) {
    for (const auto& entry : state_name_entries()) {
      size_t n = entry.words.size();
      if (i + n > words.size()) continue;
      bool match = true;
      for (size_t k = 0; k < n; ++k) {
        if (words[i + k] != entry.words[k]) {
          match = false;
          break;
        }
      }
      if (match) return entry.code;
    }
  }

  // Two-letter abbreviations: accept them uppercase ("Miami FL"), or any
  // case when the preceding words name a city in that state.
  {
    std::vector<std::string> raw_tokens;
    std::string cur;
    for (char c : trimmed) {
      if (is_alnum(c) || static_cast<unsigned char>(c) >= 0x80) {
        cur.push_back(c);
      } else if (!cur.empty()) {
        raw_tokens.push_back(std::move(cur));
        cur.clear();
      }
    }
    if (!cur.empty()) raw_tokens.push_back(std::move(cur));

    for (size_t i = 0; i < raw_tokens.size(); ++i) {
      const std::string& tok = raw_tokens[i];
      if (tok.size() != 2) continue;
      auto code = state_by_code_folded(fold(tok));
      if (!code) continue;
      bool uppercase = tok[0] >= 'A' && tok[0] <= 'Z' && tok[1] >= 'A' && tok[1] <= 'Z';
      if (uppercase) return code;
      for (size_t j = 0; j < i; ++j) {
        if (gaz.city_in_state(join_words(words, j, i), *code)) return code;
      }
    }
  }

  // Whole string as a city name, accepted only when every gazetteer city by
  // that name sits in one state.
  std::string city = join_words(words, 0, words.size());
  std::optional<std::string> only_state;
  for (const Place* p : gaz.cities_named(city)) {
    if (only_state && *only_state != p->state) return std::nullopt;
    only_state = p->state;
  }
  return only_state;
}

Resolution resolve(const Gazetteer& gaz, const CleanMessage& msg, double radius_km) {
  if (msg.latitude && msg.longitude) {
    if (const Place* p = gaz.nearest(*msg.latitude, *msg.longitude, radius_km))
      return {p->state, Tier::kCoordinates};
  }
  if (msg.place_name) {
    if (auto state = resolve_text(gaz, *msg.place_name))
      return {state, Tier::kPlaceName};
  }
  if (msg.user_location) {
    if (auto state = resolve_text(gaz, *msg.user_location))
      return {state, Tier::kUserLocation};
  }
  return {std::nullopt, Tier::kNone};
}

GeoStats geocode_corpus(std::vector<ingest::CorpusRow>& rows, const Gazetteer& gaz,
                        double radius_km) {
  GeoStats stats;
  stats.total = rows.size();
  for (auto& row : rows) {
    Resolution res = resolve(gaz, row.msg, radius_km);
    row.state = res.state;
    switch (res.tier) {
      case Tier::kCoordinates: ++stats.by_coordinates; break;
      case Tier::kPlaceName: ++stats.by_place_name; break;
      case Tier::kUserLocation: ++stats.by_user_location; break;
      case Tier::kNone: ++stats.unresolved; break;
    }
    if (res.state) ++stats.per_state[*res.state];
  }
  return stats;
}

}  // namespace tsc::geocode
