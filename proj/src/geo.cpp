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

#include "odflow/geo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <regex>
#include <string>

#include <fmt/format.h>

#include "odflow/error.hpp"

namespace odflow::geo {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_decimal(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

Coordinate make_coordinate(double lat, double lon) {
  if (!(lat >= -90.0 && lat <= 90.0)) {
    throw RangeError(fmt::format("latitude {} outside [-90, 90]", lat));
  }
  if (!(lon >= -180.0 && lon <= 180.0)) {
    throw RangeError(fmt::format("longitude {} outside [-180, 180]", lon));
  }
  return {lat, lon};
}

ParsedAngle parse_angle(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty coordinate");

  double decimal = 0.0;
  if (parse_decimal(s, decimal)) return {decimal, Axis::kUnspecified};

  // Degree sign may be the UTF-8 '°' or a plain 'd'; the minute mark is ' or
  // the typographic prime.
  static const std::regex kDm(
      R"(^(\d+)\s*(?:\xC2\xB0|d)\s*(\d+(?:\.\d+)?)\s*(?:'|\xE2\x80\xB2)\s*([NSEWnsew])$)");
  std::cmatch match;
  if (!std::regex_match(s.data(), s.data() + s.size(), match, kDm)) {
    throw ParseError(fmt::format("malformed coordinate '{}'", s));
  }

  double degrees = 0.0;
  double minutes = 0.0;
  if (!parse_decimal(std::string_view(match[1].first, match[1].length()), degrees)) {
    throw ParseError(fmt::format("malformed degrees '{}' in '{}'", match[1].str(), s));
  }
  if (!parse_decimal(std::string_view(match[2].first, match[2].length()), minutes)) {
    throw ParseError(fmt::format("malformed minutes '{}' in '{}'", match[2].str(), s));
  }
  if (minutes >= 60.0) {
    throw RangeError(fmt::format("minutes {} must be below 60 in '{}'", match[2].str(), s));
  }

  const char hemisphere = static_cast<char>(std::toupper(static_cast<unsigned char>(*match[3].first)));
  const double sign = (hemisphere == 'S' || hemisphere == 'W') ? -1.0 : 1.0;
  const Axis axis = (hemisphere == 'N' || hemisphere == 'S') ? Axis::kLatitude : Axis::kLongitude;
  return {sign * (degrees + minutes / 60.0), axis};
}

Coordinate parse_dm(std::string_view lat_text, std::string_view lon_text) {
  const ParsedAngle lat = parse_angle(lat_text);
  const ParsedAngle lon = parse_angle(lon_text);
  if (lat.axis == Axis::kLongitude) {
    throw ParseError(fmt::format("latitude '{}' carries an E/W hemisphere", trim(lat_text)));
  }
  if (lon.axis == Axis::kLatitude) {
    throw ParseError(fmt::format("longitude '{}' carries an N/S hemisphere", trim(lon_text)));
  }
  return make_coordinate(lat.degrees, lon.degrees);
}

double distance_km(const Coordinate& a, const Coordinate& b) {
  // Evaluate in a canonical argument order so d(a, b) == d(b, a) bit for bit.
  const bool swap = (b.lat < a.lat) || (b.lat == a.lat && b.lon < a.lon);
  const Coordinate& p = swap ? b : a;
  const Coordinate& q = swap ? a : b;

  const double phi1 = to_radians(p.lat);
  const double phi2 = to_radians(q.lat);
  const double dphi = phi2 - phi1;
  const double dlambda = to_radians(q.lon - p.lon);

  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

double intra_zonal_distance(std::size_t i, std::span<const Coordinate> coords,
                            double min_distance_km) {
  if (coords.size() < 2) {
    throw ConfigError("intra-zonal distance needs at least two zones");
  }
  if (i >= coords.size()) {
    throw ContractError(fmt::format("zone index {} out of range for {} zones", i, coords.size()));
  }
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (j == i) continue;
    nearest = std::min(nearest, distance_km(coords[i], coords[j]));
  }
  return std::max(nearest / 2.0, min_distance_km);
}

}  // namespace odflow::geo
