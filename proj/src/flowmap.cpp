// Copyright 2026 The odflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "odflow/flowmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string_view>

#include <fmt/format.h>
#include "json.hpp"

#include "odflow/error.hpp"

namespace odflow::flowmap {
namespace {

constexpr std::array<std::string_view, 5> kFiveClassColors = {"#7f2704", "#a63603", "#d94801",
                                                               "#f16913", "#fdae6b"};
constexpr std::array<double, 5> kFiveClassWidths = {0.6, 1.2, 2.2, 3.6, 5.6};
constexpr std::string_view kBackground = "#1b1f24";
constexpr std::string_view kNodeFill = "#9ecae1";

// Fixed three-decimal rendering; never prints "-0.000".
std::string num3(double v) {
  if (std::fabs(v) < 0.0005) v = 0.0;
  return fmt::format("{:.3f}", v);
}

// Three decimals with trailing zeros trimmed, for legend text.
std::string label_number(double v) {
  std::string s = num3(v);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string xml_escape(std::string_view s) {
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

struct Rgb {
  int r, g, b;
};

Rgb parse_hex(std::string_view hex) {
  return {std::stoi(std::string(hex.substr(1, 2)), nullptr, 16),
          std::stoi(std::string(hex.substr(3, 2)), nullptr, 16),
          std::stoi(std::string(hex.substr(5, 2)), nullptr, 16)};
}

// Zone record for every matrix row, looked up by code.
std::vector<const Zone*> rows_to_zones(const ODMatrix& m, std::span<const Zone> zones) {
  std::map<std::string_view, const Zone*> by_code;
  for (const Zone& z : zones) by_code.emplace(z.code, &z);
  std::vector<const Zone*> out;
  for (const std::string& code : m.zone_codes) {
    const auto it = by_code.find(code);
    if (it == by_code.end()) {
      throw ValidationError(fmt::format("zone '{}' has no coordinate in the zone table", code));
    }
    out.push_back(it->second);
  }
  return out;
}

std::int64_t rounded(double v) { return static_cast<std::int64_t>(std::round(v)); }

struct Projection {
  double lon_mid = 0.0;
  double lat_mid = 0.0;
  double scale = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  double x(const geo::Coordinate& c) const { return cx + (c.lon - lon_mid) * scale; }
  double y(const geo::Coordinate& c) const { return cy - (c.lat - lat_mid) * scale; }
};

// Plate carree fit of the zone bounding box into the padded canvas.
Projection fit_projection(std::span<const Zone> zones, const RenderSpec& spec) {
  Projection p;
  p.cx = spec.canvas_width / 2.0;
  p.cy = spec.canvas_height / 2.0;
  if (zones.empty()) return p;
  double lon_lo = zones[0].coord.lon, lon_hi = lon_lo;
  double lat_lo = zones[0].coord.lat, lat_hi = lat_lo;
  for (const Zone& z : zones) {
    lon_lo = std::min(lon_lo, z.coord.lon);
    lon_hi = std::max(lon_hi, z.coord.lon);
    lat_lo = std::min(lat_lo, z.coord.lat);
    lat_hi = std::max(lat_hi, z.coord.lat);
  }
  constexpr double kMinSpanDeg = 1e-3;
  const double lon_span = std::max(lon_hi - lon_lo, kMinSpanDeg);
  const double lat_span = std::max(lat_hi - lat_lo, kMinSpanDeg);
  const double inner_w = spec.canvas_width * (1.0 - 2.0 * spec.padding);
  const double inner_h = spec.canvas_height * (1.0 - 2.0 * spec.padding);
  p.lon_mid = (lon_lo + lon_hi) / 2.0;
  p.lat_mid = (lat_lo + lat_hi) / 2.0;
  p.scale = std::min(inner_w / lon_span, inner_h / lat_span);
  return p;
}

std::vector<double> attracted_volumes(const ODMatrix& m) {
  std::vector<double> in(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) in[j] += static_cast<double>(rounded(m.values(i, j)));
  }
  return in;
}

std::vector<double> node_breaks_for(const RenderSpec& spec, double max_volume) {
  if (!spec.node_breaks.empty()) return spec.node_breaks;
  std::vector<double> out;
  for (int c = 0; c < kNodeClassCount; ++c) out.push_back(max_volume * c / kNodeClassCount);
  return out;
}

int node_class(double volume, std::span<const double> bounds) {
  int c = 0;
  for (std::size_t k = 1; k < bounds.size(); ++k) {
    if (bounds[k] > bounds[0] && volume >= bounds[k]) c = static_cast<int>(k);
  }
  return c;
}

}  // namespace

ClassRamp class_ramp(int classes) {
  if (classes < 1) throw ConfigError(fmt::format("class count {} must be >= 1", classes));
  ClassRamp ramp;
  if (classes == 5) {
    for (std::string_view c : kFiveClassColors) ramp.colors.emplace_back(c);
    ramp.widths.assign(kFiveClassWidths.begin(), kFiveClassWidths.end());
    return ramp;
  }
  const Rgb lo = parse_hex(kFiveClassColors.front());
  const Rgb hi = parse_hex(kFiveClassColors.back());
  for (int k = 0; k < classes; ++k) {
    const double t = classes == 1 ? 1.0 : static_cast<double>(k) / (classes - 1);
    const auto mix = [t](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
    ramp.colors.push_back(fmt::format("#{:02x}{:02x}{:02x}", mix(lo.r, hi.r), mix(lo.g, hi.g), mix(lo.b, hi.b)));
    ramp.widths.push_back(kFiveClassWidths.front() +
                          (kFiveClassWidths.back() - kFiveClassWidths.front()) * t);
  }
  return ramp;
}

RenderSpec RenderSpec::with_breaks(std::vector<double> breaks) {
  RenderSpec spec;
  ClassRamp ramp = class_ramp(static_cast<int>(breaks.size()) + 1);
  spec.breaks = std::move(breaks);
  spec.flow_colors = std::move(ramp.colors);
  spec.widths = std::move(ramp.widths);
  return spec;
}

void RenderSpec::validate() const {
  validate_breaks(breaks);
  if (flow_colors.size() != breaks.size() + 1 || widths.size() != breaks.size() + 1) {
    throw ConfigError(fmt::format("{} flow classes need {} colors and widths, got {} and {}",
                                  breaks.size() + 1, breaks.size() + 1, flow_colors.size(),
                                  widths.size()));
  }
  if (!(min_flow >= 0.0)) throw ConfigError(fmt::format("min_flow = {} must be >= 0", min_flow));
  for (std::size_t k = 1; k < widths.size(); ++k) {
    if (!(widths[k] > widths[k - 1])) throw ConfigError("flow widths must increase with class");
  }
  if (!node_breaks.empty()) {
    if (node_breaks.size() != kNodeClassCount) {
      throw ConfigError(fmt::format("node_breaks needs {} values, got {}", kNodeClassCount, node_breaks.size()));
    }
    validate_breaks(node_breaks);
  }
  for (std::size_t k = 1; k < node_radii.size(); ++k) {
    if (!(node_radii[k] > node_radii[k - 1])) throw ConfigError("node radii must increase with class");
  }
  if (canvas_width <= 0 || canvas_height <= 0) throw ConfigError("canvas size must be positive");
  if (!(padding >= 0.0 && padding < 0.5)) throw ConfigError("padding must lie in [0, 0.5)");
}

void validate_breaks(std::span<const double> breaks) {
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    if (!std::isfinite(breaks[k])) throw ConfigError("class breaks must be finite");
    if (k > 0 && !(breaks[k] > breaks[k - 1])) {
      throw ConfigError(fmt::format("class breaks must be strictly ascending ({} after {})", breaks[k],
                                    breaks[k - 1]));
    }
  }
}

std::vector<int> classify_flows(std::span<const double> values, std::span<const double> breaks,
                                double min_flow) {
  validate_breaks(breaks);
  std::vector<int> out;
  out.reserve(values.size());
  for (double v : values) {
    if (v < min_flow) {
      out.push_back(-1);
      continue;
    }
    out.push_back(static_cast<int>(std::upper_bound(breaks.begin(), breaks.end(), v) - breaks.begin()));
  }
  return out;
}

std::vector<double> default_breaks(const ODMatrix& without, const ODMatrix& with, int classes) {
  if (classes < 2) throw ConfigError(fmt::format("class count {} must be >= 2", classes));
  double max = 0.0;
  for (double v : without.values.values()) max = std::max(max, v);
  for (double v : with.values.values()) max = std::max(max, v);
  if (!(max > 0.0)) throw ConfigError("cannot derive class breaks: both matrices are all zero");
  std::vector<double> out;
  for (int k = 1; k < classes; ++k) out.push_back(max * k / classes);
  return out;
}

std::vector<VisibleFlow> visible_flows(const ODMatrix& m, const RenderSpec& spec) {
  std::vector<VisibleFlow> flows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      const double v = static_cast<double>(rounded(m.values(i, j)));
      if (v <= 0.0 || v < spec.min_flow) continue;
      flows.push_back({i, j, v, 0});
    }
  }
  std::vector<double> trips;
  trips.reserve(flows.size());
  for (const VisibleFlow& f : flows) trips.push_back(f.trips);
  const std::vector<int> classes = classify_flows(trips, spec.breaks);
  for (std::size_t k = 0; k < flows.size(); ++k) flows[k].flow_class = classes[k];

  std::stable_sort(flows.begin(), flows.end(),
                   [](const VisibleFlow& a, const VisibleFlow& b) { return a.trips > b.trips; });
  return flows;
}

std::string render_svg(const ODMatrix& m, std::span<const Zone> zones, const RenderSpec& spec) {
  spec.validate();
  const std::vector<const Zone*> row_zones = rows_to_zones(m, zones);
  const Projection proj = fit_projection(zones, spec);
  const std::vector<VisibleFlow> flows = visible_flows(m, spec);

  std::vector<std::vector<bool>> visible(m.size(), std::vector<bool>(m.size(), false));
  for (const VisibleFlow& f : flows) visible[f.origin][f.dest] = true;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      spec.canvas_width, spec.canvas_height, spec.canvas_width, spec.canvas_height);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", spec.canvas_width,
                     spec.canvas_height, kBackground);

  // Largest first so smaller flows paint on top.
  out += "<g id=\"flows\" stroke-linecap=\"round\" fill=\"none\">\n";
  for (const VisibleFlow& f : flows) {
    double x1 = proj.x(row_zones[f.origin]->coord), y1 = proj.y(row_zones[f.origin]->coord);
    double x2 = proj.x(row_zones[f.dest]->coord), y2 = proj.y(row_zones[f.dest]->coord);
    const double len = std::hypot(x2 - x1, y2 - y1);
    if (visible[f.dest][f.origin] && len > 0.0) {
      // Shift to the right-hand side of travel so the opposing flow stays visible.
      const double nx = -(y2 - y1) / len * kBidirectionalOffsetPx;
      const double ny = (x2 - x1) / len * kBidirectionalOffsetPx;
      x1 += nx;
      y1 += ny;
      x2 += nx;
      y2 += ny;
    }
    const auto k = static_cast<std::size_t>(f.flow_class);
    out += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\" "
        "data-origin=\"{}\" data-dest=\"{}\" data-trips=\"{}\" data-class=\"{}\"/>\n",
        num3(x1), num3(y1), num3(x2), num3(y2), spec.flow_colors[k], num3(spec.widths[k]),
        xml_escape(m.zone_codes[f.origin]), xml_escape(m.zone_codes[f.dest]), rounded(f.trips), f.flow_class);
  }
  out += "</g>\n";

  std::map<std::string_view, double> volume_by_code;
  const std::vector<double> attracted = attracted_volumes(m);
  for (std::size_t j = 0; j < m.size(); ++j) volume_by_code[m.zone_codes[j]] = attracted[j];
  double max_volume = 0.0;
  for (double v : attracted) max_volume = std::max(max_volume, v);
  const std::vector<double> bounds = node_breaks_for(spec, max_volume);

  out += fmt::format("<g id=\"nodes\" fill=\"{}\" fill-opacity=\"0.85\" stroke=\"#ffffff\" stroke-width=\"0.5\">\n",
                     kNodeFill);
  for (const Zone& z : zones) {
    const auto it = volume_by_code.find(z.code);
    const double volume = it == volume_by_code.end() ? 0.0 : it->second;
    const int c = node_class(volume, bounds);
    out += fmt::format(
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" data-code=\"{}\" data-attracted=\"{}\" data-class=\"{}\">"
        "<title>{} {}: {} trips attracted</title></circle>\n",
        num3(proj.x(z.coord)), num3(proj.y(z.coord)), num3(spec.node_radii[static_cast<std::size_t>(c)]),
        xml_escape(z.code), rounded(volume), c, xml_escape(z.code), xml_escape(z.name), rounded(volume));
  }
  out += "</g>\n";

  out += "<g id=\"labels\" fill=\"#e6e6e6\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (const Zone& z : zones) {
    out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", num3(proj.x(z.coord) + 6.0),
                       num3(proj.y(z.coord) - 6.0), xml_escape(z.code));
  }
  out += "</g>\n";

  out += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#e6e6e6\">\n";
  out += "<text x=\"12\" y=\"20\">Trips per year</text>\n";
  const std::size_t classes = spec.breaks.size() + 1;
  for (std::size_t k = 0; k < classes; ++k) {
    const double lo = k == 0 ? std::max(spec.min_flow, 1.0) : spec.breaks[k - 1];
    const std::string label = k + 1 < classes
                                  ? fmt::format("{} - {}", label_number(lo), label_number(spec.breaks[k]))
                                  : fmt::format("&gt;= {}", label_number(lo));
    const double y = 34.0 + 16.0 * static_cast<double>(k);
    out += fmt::format(
        "<rect x=\"12\" y=\"{}\" width=\"24\" height=\"{}\" fill=\"{}\"/><text x=\"42\" y=\"{}\">{}</text>\n",
        num3(y - spec.widths[k] / 2.0), num3(spec.widths[k]), spec.flow_colors[k], num3(y + 4.0), label);
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

std::string render_geojson(const ODMatrix& m, std::span<const Zone> zones, const RenderSpec& spec) {
  spec.validate();
  const std::vector<const Zone*> row_zones = rows_to_zones(m, zones);
  std::vector<VisibleFlow> flows = visible_flows(m, spec);
  std::sort(flows.begin(), flows.end(), [](const VisibleFlow& a, const VisibleFlow& b) {
    return std::tie(a.origin, a.dest) < std::tie(b.origin, b.dest);
  });

  using Json = nlohmann::ordered_json;
  Json features = Json::array();
  for (const VisibleFlow& f : flows) {
    const geo::Coordinate& a = row_zones[f.origin]->coord;
    const geo::Coordinate& b = row_zones[f.dest]->coord;
    Json feature;
    feature["type"] = "Feature";
    feature["geometry"] = {{"type", "LineString"}, {"coordinates", {{a.lon, a.lat}, {b.lon, b.lat}}}};
    feature["properties"] = {{"origin", m.zone_codes[f.origin]},
                             {"dest", m.zone_codes[f.dest]},
                             {"trips", rounded(f.trips)},
                             {"class", f.flow_class}};
    features.push_back(std::move(feature));
  }

  std::map<std::string_view, std::size_t> row_of;
  for (std::size_t i = 0; i < m.size(); ++i) row_of[m.zone_codes[i]] = i;
  for (const Zone& z : zones) {
    std::int64_t total_in = 0;
    std::int64_t total_out = 0;
    if (const auto it = row_of.find(z.code); it != row_of.end()) {
      const std::size_t r = it->second;
      for (std::size_t k = 0; k < m.size(); ++k) {
        total_out += rounded(m.values(r, k));
        total_in += rounded(m.values(k, r));
      }
    }
    Json feature;
    feature["type"] = "Feature";
    feature["geometry"] = {{"type", "Point"}, {"coordinates", {z.coord.lon, z.coord.lat}}};
    feature["properties"] = {
        {"code", z.code}, {"name", z.name}, {"total_in", total_in}, {"total_out", total_out}};
    features.push_back(std::move(feature));
  }

  Json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = std::move(features);
  return doc.dump(2) + "\n";
}

}  // namespace odflow::flowmap
