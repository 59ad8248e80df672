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

#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "odflow/error.hpp"
#include "test_support.hpp"

namespace odflow::geo {
namespace {

// Longitude offset on the equator that spans km kilometres.
double equator_lon(double km) { return km / kEarthRadiusKm * 180.0 / std::numbers::pi; }

TEST(ParseAngle, DegreesMinutes) {
  const ParsedAngle a = parse_angle("13° 30.000' N");
  EXPECT_DOUBLE_EQ(a.degrees, 13.5);
  EXPECT_EQ(a.axis, Axis::kLatitude);

  const ParsedAngle b = parse_angle("0° 0.000' W");
  EXPECT_EQ(b.degrees, 0.0);
  EXPECT_EQ(b.axis, Axis::kLongitude);

  EXPECT_NEAR(parse_angle("12° 45.300' S").degrees, -(12.0 + 45.3 / 60.0), 1e-12);
  EXPECT_NEAR(parse_angle("12° 45.300' S").degrees, -12.755, 1e-12);
  EXPECT_NEAR(parse_angle("14°15'W").degrees, -14.25, 1e-12);
}

TEST(ParseAngle, DecimalPassesThrough) {
  const ParsedAngle a = parse_angle(" -14.2517 ");
  EXPECT_EQ(a.degrees, -14.2517);
  EXPECT_EQ(a.axis, Axis::kUnspecified);
}

TEST(ParseAngle, MalformedNamesToken) {
  try {
    parse_angle("13° 3x' N");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("13° 3x' N"), std::string::npos);
  }
  EXPECT_THROW(parse_angle(""), ParseError);
  EXPECT_THROW(parse_angle("13° 30' Q"), ParseError);
}

TEST(ParseAngle, MinutesOutOfRange) {
  EXPECT_THROW(parse_angle("13° 60.000' N"), RangeError);
  EXPECT_NO_THROW(parse_angle("13° 59.999' N"));
}

TEST(ParseDm, PairChecksAxesAndRange) {
  const Coordinate c = parse_dm("12° 40.080' N", "14° 9.480' W");
  EXPECT_NEAR(c.lat, 12.668, 1e-12);
  EXPECT_NEAR(c.lon, -14.158, 1e-12);
  EXPECT_THROW(parse_dm("14° 9.480' W", "12° 40.080' N"), ParseError);
  EXPECT_THROW(parse_dm("91", "0"), RangeError);
  EXPECT_THROW(parse_dm("0", "-180.5"), RangeError);
}

TEST(MakeCoordinate, Bounds) {
  EXPECT_NO_THROW(make_coordinate(-90.0, 180.0));
  EXPECT_THROW(make_coordinate(90.01, 0.0), RangeError);
  EXPECT_THROW(make_coordinate(0.0, std::nan("")), RangeError);
}

TEST(DistanceKm, Examples) {
  const Coordinate a{13.0, -14.0};
  EXPECT_EQ(distance_km(a, a), 0.0);
  // Quarter great circle is pi * R / 2 for the fixed mean radius.
  EXPECT_NEAR(distance_km({0.0, 0.0}, {90.0, 0.0}), std::numbers::pi * kEarthRadiusKm / 2.0, 1e-9);
  EXPECT_NEAR(distance_km({0.0, 0.0}, {90.0, 0.0}), 10007.557, 0.001);
  // Frozen from the vector-angle oracle in test_support.hpp.
  EXPECT_NEAR(distance_km({13.0, -14.0}, {13.1, -14.2}), 24.3516, 24.3516 * 0.005);
  EXPECT_NEAR(distance_km({13.0, -14.0}, {13.1, -14.2}),
              odflow::testing::oracle_distance_km({13.0, -14.0}, {13.1, -14.2}), 1e-9);
}

TEST(DistanceKm, SymmetricTriangleAndOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-89.0, 89.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  for (int k = 0; k < 2000; ++k) {
    const Coordinate a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)}, c{lat(rng), lon(rng)};
    const double ab = distance_km(a, b);
    EXPECT_EQ(ab, distance_km(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, distance_km(a, c) + distance_km(c, b) + 1e-9 * (ab + 1.0));
    EXPECT_NEAR(ab, odflow::testing::oracle_distance_km(a, b), 1e-6);
  }
}

TEST(IntraZonal, Examples) {
  const std::vector<Coordinate> pair = {{0.0, 0.0}, {0.0, equator_lon(10.0)}};
  EXPECT_NEAR(intra_zonal_distance(0, pair), 5.0, 1e-9);
  EXPECT_NEAR(intra_zonal_distance(1, pair), 5.0, 1e-9);

  const std::vector<Coordinate> colocated = {{12.5, -14.0}, {12.5, -14.0}};
  EXPECT_EQ(intra_zonal_distance(0, colocated), 0.1);

  const std::vector<Coordinate> line = {{0.0, 0.0}, {0.0, equator_lon(4.0)}, {0.0, equator_lon(10.0)}};
  EXPECT_NEAR(intra_zonal_distance(1, line), 2.0, 1e-9);
  EXPECT_NEAR(intra_zonal_distance(2, line), 3.0, 1e-9);
}

TEST(IntraZonal, Errors) {
  const std::vector<Coordinate> one = {{0.0, 0.0}};
  EXPECT_THROW(intra_zonal_distance(0, one), ConfigError);
  const std::vector<Coordinate> two = {{0.0, 0.0}, {1.0, 1.0}};
  EXPECT_THROW(intra_zonal_distance(2, two), ContractError);
}

TEST(IntraZonal, NeverExceedsDistanceToOtherZones) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lat(12.0, 13.5);
  std::uniform_real_distribution<double> lon(-15.0, -13.5);
  std::uniform_int_distribution<int> count(2, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Coordinate> coords(static_cast<std::size_t>(count(rng)));
    for (Coordinate& c : coords) c = {lat(rng), lon(rng)};
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const double intra = intra_zonal_distance(i, coords);
      for (std::size_t j = 0; j < coords.size(); ++j) {
        if (j != i) EXPECT_LE(intra, distance_km(coords[i], coords[j]));
      }
    }
  }
}

}  // namespace
}  // namespace odflow::geo
