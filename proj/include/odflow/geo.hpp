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

#include <cstddef>
#include <span>
#include <string_view>

namespace odflow::geo {

inline constexpr double kEarthRadiusKm = 6371.0088;
inline constexpr double kDefaultMinDistanceKm = 0.1;

// WGS84 position in decimal degrees.
struct Coordinate {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

// Throws RangeError unless lat is in [-90, 90] and lon in [-180, 180].
Coordinate make_coordinate(double lat, double lon);

enum class Axis { kUnspecified, kLatitude, kLongitude };

struct ParsedAngle {
  double degrees = 0.0;
  // Latitude for N/S suffixes, longitude for E/W, unspecified for bare decimals.
  Axis axis = Axis::kUnspecified;
};

// Parses "D° M.MMM' H" (H one of N, S, E, W) into signed decimal degrees.
// A plain signed decimal such as "-14.25" passes through unchanged.
ParsedAngle parse_angle(std::string_view text);

// Parses a latitude/longitude pair, each in either accepted form. A hemisphere
// letter on the wrong axis is a ParseError.
Coordinate parse_dm(std::string_view lat_text, std::string_view lon_text);

// Haversine great-circle distance. Exactly symmetric in its arguments.
double distance_km(const Coordinate& a, const Coordinate& b);

// Half the distance from zone i to its nearest other zone, floored at
// min_distance_km. Requires at least two zones.
double intra_zonal_distance(std::size_t i, std::span<const Coordinate> coords,
                            double min_distance_km = kDefaultMinDistanceKm);

}  // namespace odflow::geo
