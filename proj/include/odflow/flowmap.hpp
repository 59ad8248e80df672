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

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "odflow/demand.hpp"
#include "odflow/gravity.hpp"

namespace odflow::flowmap {

inline constexpr int kDefaultClassCount = 5;
inline constexpr int kNodeClassCount = 5;
inline constexpr double kBidirectionalOffsetPx = 2.0;

// Visual encoding of a flow map. Flow class k covers [breaks[k-1], breaks[k])
// and is drawn with flow_colors[k] and widths[k]; brighter and wider means
// more trips.
struct RenderSpec {
  std::vector<double> breaks;
  double min_flow = 1.0;
  std::vector<std::string> flow_colors;
  std::vector<double> widths;
  // Node circles: class c applies from node_breaks[c] upward. An empty
  // node_breaks splits [0, max attracted volume] into equal intervals.
  std::array<double, kNodeClassCount> node_radii = {3.0, 5.0, 8.0, 12.0, 17.0};
  std::vector<double> node_breaks;
  int canvas_width = 1000;
  int canvas_height = 800;
  double padding = 0.08;

  // Colors and widths sized to breaks.size() + 1 classes from the default ramp.
  static RenderSpec with_breaks(std::vector<double> breaks);

  void validate() const;
};

struct ClassRamp {
  std::vector<std::string> colors;
  std::vector<double> widths;
};

// Single-hue ramp with brightness and width increasing by class. The five
// class ramp is a fixed table; other counts interpolate between its ends.
ClassRamp class_ramp(int classes);

// Throws ConfigError unless strictly ascending.
void validate_breaks(std::span<const double> breaks);

// Class index = number of breaks <= v; values below min_flow get -1.
std::vector<int> classify_flows(std::span<const double> values, std::span<const double> breaks,
                                double min_flow = 0.0);

// classes - 1 equal-interval breaks over (0, max positive cell of either
// matrix], so two scenarios can share one legend.
std::vector<double> default_breaks(const ODMatrix& without, const ODMatrix& with, int classes);

struct VisibleFlow {
  std::size_t origin = 0;
  std::size_t dest = 0;
  double trips = 0.0;  // rounded cell
  int flow_class = 0;
};

// Off-diagonal cells whose rounded value is positive and >= min_flow, in
// draw order: descending trips, ties by (origin, dest).
std::vector<VisibleFlow> visible_flows(const ODMatrix& m, const RenderSpec& spec);

// SVG 1.1 document. Byte-identical for identical inputs.
std::string render_svg(const ODMatrix& m, std::span<const Zone> zones, const RenderSpec& spec);

// RFC 7946 FeatureCollection: LineStrings for visible flows (origin-major),
// then one Point per zone.
std::string render_geojson(const ODMatrix& m, std::span<const Zone> zones, const RenderSpec& spec);

}  // namespace odflow::flowmap
