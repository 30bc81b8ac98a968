#pragma once

#include <map>
#include <string>
#include <vector>

namespace tsc::report {

// Minimal GeoJSON FeatureCollection reader: polygons/multipolygons with a
// "state" property. Rings keep only the outer boundary's points.
struct StateShape {
  std::string state;
  std::vector<std::vector<std::pair<double, double>>> rings;  // (lon, lat)
};

std::vector<StateShape> load_geometry(const std::string& path);

// Linear single-hue ramp between the observed min and max; everything else
// (missing states) renders neutral. Deterministic output: fixed decimal
// formatting everywhere.
std::string render_choropleth(const std::map<std::string, double>& values,
                              const std::vector<StateShape>& shapes,
                              const std::string& title);

void write_choropleth(const std::string& path,
                      const std::map<std::string, double>& values,
                      const std::vector<StateShape>& shapes,
                      const std::string& title);

// (word, probability) -> (word, probability, size), max size 1.
struct CloudWord {
  std::string word;
  double probability = 0.0;
  double size = 0.0;
};

std::vector<CloudWord> render_wordcloud_data(
    const std::vector<std::pair<std::string, double>>& top_words);

void write_wordcloud_csv(const std::string& path, const std::vector<CloudWord>& words);

}  // namespace tsc::report
