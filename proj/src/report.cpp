#include "tsc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "tsc/csv.hpp"
#include "tsc/states.hpp"
#include "tsc/util.hpp"

namespace tsc::report {

using nlohmann::json;

namespace {

// Single-hue blue ramp, light to saturated.
constexpr int kRampLow[3] = {0xef, 0xf6, 0xfc};
constexpr int kRampHigh[3] = {0x08, 0x51, 0x9c};
constexpr const char* kNeutralFill = "#d9d9d9";

std::string ramp_color(double t) {
  char buf[8];
  int rgb[3];
  for (int i = 0; i < 3; ++i) {
    double mixed = double(kRampLow[i]) + t * (double(kRampHigh[i]) - double(kRampLow[i]));
    rgb[i] = int(std::lround(mixed));
  }
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void read_ring(const json& coords, std::vector<std::pair<double, double>>& ring) {
  for (const auto& pt : coords) {
    if (!pt.is_array() || pt.size() < 2)
      throw ParseError("geometry point must be [lon, lat]");
    ring.emplace_back(pt[0].get<double>(), pt[1].get<double>());
  }
}

}  // namespace

std::vector<StateShape> load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open geometry file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || j.value("type", "") != "FeatureCollection")
    throw ParseError("geometry must be a GeoJSON FeatureCollection: " + path);

  std::vector<StateShape> out;
  for (const auto& feature : j.at("features")) {
    StateShape shape;
    const auto& props = feature.at("properties");
    if (!props.contains("state") || !props["state"].is_string())
      throw ParseError("feature without a state property");
    shape.state = props["state"].get<std::string>();
    if (!valid_state_code(shape.state))
      throw ParseError("geometry has unknown state: " + shape.state);

    const auto& geom = feature.at("geometry");
    std::string type = geom.value("type", "");
    const auto& coords = geom.at("coordinates");
    if (type == "Polygon") {
      // Outer ring only; holes don't matter at choropleth scale.
      std::vector<std::pair<double, double>> ring;
      read_ring(coords.at(0), ring);
      shape.rings.push_back(std::move(ring));
    } else if (type == "MultiPolygon") {
      for (const auto& poly : coords) {
        std::vector<std::pair<double, double>> ring;
        read_ring(poly.at(0), ring);
        shape.rings.push_back(std::move(ring));
      }
    } else {
      throw ParseError("unsupported geometry type: " + type);
    }
    out.push_back(std::move(shape));
  }
  if (out.empty()) throw ParseError("geometry file has no features: " + path);
  return out;
}

std::string render_choropleth(const std::map<std::string, double>& values,
                              const std::vector<StateShape>& shapes,
                              const std::string& title) {
  for (const auto& [state, value] : values) {
    (void)value;
    if (!valid_state_code(state))
      throw ConfigError("choropleth value for unknown state: " + state);
  }

  std::map<std::string, const StateShape*> by_state;
  for (const auto& s : shapes) by_state[s.state] = &s;
  for (const auto& [state, value] : values) {
    (void)value;
    if (!by_state.count(state))
      std::cerr << "warning: geometry missing state " << state << "; skipped\n";
  }

  double vmin = 0.0, vmax = 0.0;
  if (!values.empty()) {
    vmin = values.begin()->second;
    vmax = vmin;
    for (const auto& [state, v] : values) {
      (void)state;
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  }

  double lon_lo = 1e300, lon_hi = -1e300, lat_lo = 1e300, lat_hi = -1e300;
  for (const auto& s : shapes) {
    for (const auto& ring : s.rings) {
      for (const auto& [lon, lat] : ring) {
        lon_lo = std::min(lon_lo, lon);
        lon_hi = std::max(lon_hi, lon);
        lat_lo = std::min(lat_lo, lat);
        lat_hi = std::max(lat_hi, lat);
      }
    }
  }

  const double width = 800.0, height = 500.0, pad = 16.0;
  const double map_h = height - 70.0;  // room for title and legend
  double lon_span = std::max(lon_hi - lon_lo, 1e-9);
  double lat_span = std::max(lat_hi - lat_lo, 1e-9);
  double scale = std::min((width - 2 * pad) / lon_span, (map_h - 2 * pad) / lat_span);
  auto px = [&](double lon) { return pad + (lon - lon_lo) * scale; };
  auto py = [&](double lat) { return 40.0 + pad + (lat_hi - lat) * scale; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(width) +
         "\" height=\"" + fixed2(height) + "\" viewBox=\"0 0 " + fixed2(width) +
         " " + fixed2(height) + "\">\n";
  svg += "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">"
         "<stop offset=\"0\" stop-color=\"" + ramp_color(0.0) + "\"/>"
         "<stop offset=\"1\" stop-color=\"" + ramp_color(1.0) + "\"/>"
         "</linearGradient></defs>\n";
  svg += "<rect width=\"" + fixed2(width) + "\" height=\"" + fixed2(height) +
         "\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + fixed2(width / 2) +
         "\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"18\">" + xml_escape(title) + "</text>\n";

  for (const auto& s : shapes) {
    std::string fill = kNeutralFill;
    if (auto it = values.find(s.state); it != values.end()) {
      double t = vmax > vmin ? (it->second - vmin) / (vmax - vmin) : 1.0;
      fill = ramp_color(t);
    }
    svg += "<path id=\"state-" + s.state + "\" fill=\"" + fill +
           "\" stroke=\"#666666\" stroke-width=\"0.5\" d=\"";
    for (const auto& ring : s.rings) {
      for (size_t i = 0; i < ring.size(); ++i) {
        svg += (i == 0 ? "M" : "L");
        svg += fixed2(px(ring[i].first)) + " " + fixed2(py(ring[i].second));
      }
      svg += "Z";
    }
    svg += "\"/>\n";
  }

  // Legend: gradient bar with the observed extremes.
  double legend_y = height - 34.0;
  svg += "<rect x=\"" + fixed2(pad) + "\" y=\"" + fixed2(legend_y) +
         "\" width=\"200\" height=\"12\" fill=\"url(#ramp)\" stroke=\"#666666\" "
         "stroke-width=\"0.5\"/>\n";
  svg += "<text x=\"" + fixed2(pad) + "\" y=\"" + fixed2(legend_y + 26.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + fixed4(vmin) +
         "</text>\n";
  svg += "<text x=\"" + fixed2(pad + 200.0) + "\" y=\"" + fixed2(legend_y + 26.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         fixed4(vmax) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

void write_choropleth(const std::string& path,
                      const std::map<std::string, double>& values,
                      const std::vector<StateShape>& shapes,
                      const std::string& title) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write choropleth: " + path);
  out << render_choropleth(values, shapes, title);
  if (!out) throw Error("short write: " + path);
}

std::vector<CloudWord> render_wordcloud_data(
    const std::vector<std::pair<std::string, double>>& top_words) {
  if (top_words.empty()) throw ConfigError("word cloud needs at least one word");
  double max_p = 0.0;
  for (const auto& [word, p] : top_words) {
    (void)word;
    max_p = std::max(max_p, p);
  }
  if (max_p <= 0.0) throw ConfigError("word probabilities must be positive");
  std::vector<CloudWord> out;
  out.reserve(top_words.size());
  for (const auto& [word, p] : top_words) out.push_back({word, p, p / max_p});
  return out;
}

void write_wordcloud_csv(const std::string& path, const std::vector<CloudWord>& words) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write word-cloud data: " + path);
  out << "word,probability,size\n";
  char buf[40];
  for (const auto& w : words) {
    std::string prob, size;
    std::snprintf(buf, sizeof(buf), "%.17g", w.probability);
    prob = buf;
    std::snprintf(buf, sizeof(buf), "%.6f", w.size);
    size = buf;
    out << csv_row({w.word, prob, size});
  }
}

}  // namespace tsc::report
