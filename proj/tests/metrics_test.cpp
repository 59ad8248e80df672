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

#include "odflow/metrics.hpp"

#include <random>

#include <gtest/gtest.h>

#include "odflow/error.hpp"
#include "odflow/io.hpp"
#include "test_support.hpp"

namespace odflow {
namespace {

std::vector<Zone> line_zones(std::vector<geo::Coordinate> coords, std::vector<std::string> countries) {
  std::vector<Zone> zones;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Zone z;
    z.code = std::string(1, static_cast<char>('A' + i));
    z.coord = coords[i];
    z.country = countries[i];
    zones.push_back(z);
  }
  return zones;
}

ODMatrix matrix_for(const std::vector<Zone>& zones) {
  ODMatrix m;
  for (const Zone& z : zones) m.zone_codes.push_back(z.code);
  m.purpose = "aggregate";
  m.values = SquareMatrix(zones.size());
  return m;
}

TEST(TotalTrips, ZeroAndFixtures) {
  EXPECT_EQ(total_trips(ODMatrix{{"A"}, "aggregate", "", SquareMatrix(1)}), 0.0);
  const ODMatrix without = io::read_od_csv(odflow::testing::data_path("od_without.csv"));
  const ODMatrix with = io::read_od_csv(odflow::testing::data_path("od_with.csv"));
  EXPECT_NEAR(total_trips(without), 1371283.0, 1371283.0 * 0.001);
  EXPECT_NEAR(total_trips(with), 1657493.0, 1657493.0 * 0.001);
}

TEST(ScenarioDelta, Examples) {
  const ODMatrix without = io::read_od_csv(odflow::testing::data_path("od_without.csv"));
  const ODMatrix with = io::read_od_csv(odflow::testing::data_path("od_with.csv"));

  const ScenarioComparison same = scenario_delta(without, without);
  EXPECT_EQ(same.delta, 0.0);
  EXPECT_EQ(same.increase_vs_with, 0.0);
  EXPECT_EQ(same.increase_vs_without, 0.0);

  const ScenarioComparison cmp = scenario_delta(without, with);
  EXPECT_EQ(cmp.delta, 286210.0);
  EXPECT_NEAR(cmp.increase_vs_with, 0.1727, 5e-5);
  EXPECT_NEAR(cmp.increase_vs_without, 0.2087, 5e-5);
  EXPECT_DOUBLE_EQ(cmp.delta, cmp.total_with - cmp.total_without);
  ASSERT_EQ(cmp.per_zone_row_deltas.size(), 26u);
  EXPECT_EQ(cmp.per_zone_row_deltas[0], 0.0);  // row A conserved across scenarios

  ODMatrix doubled = without;
  for (double& v : doubled.values.values()) v *= 2.0;
  EXPECT_DOUBLE_EQ(scenario_delta(without, doubled).increase_vs_without, 1.0);
}

TEST(ScenarioDelta, OrderingMismatch) {
  const ODMatrix a{{"A", "B"}, "aggregate", "", SquareMatrix(2)};
  const ODMatrix b{{"B", "A"}, "aggregate", "", SquareMatrix(2)};
  EXPECT_THROW(scenario_delta(a, b), ContractError);
}

TEST(CrossBorderShare, Examples) {
  const auto one_country = line_zones({{12.0, -14.0}, {12.5, -14.0}}, {"SN", "SN"});
  ODMatrix m = matrix_for(one_country);
  m.values(0, 1) = 10;
  m.values(1, 1) = 5;
  EXPECT_EQ(cross_border_share(m, one_country), 0.0);

  const auto two = line_zones({{12.0, -14.0}, {12.5, -14.0}}, {"SN", "GW"});
  EXPECT_EQ(cross_border_share(m, two), 10.0 / 15.0);
  EXPECT_EQ(cross_border_share(m, two, /*include_intrazonal=*/false), 1.0);
  m.values(1, 1) = 0;
  EXPECT_EQ(cross_border_share(m, two), 1.0);

  const auto unlabeled = line_zones({{12.0, -14.0}, {12.5, -14.0}}, {"SN", ""});
  EXPECT_THROW(cross_border_share(m, unlabeled), ConfigError);
}

TEST(CrossBorderShare, ZeroUnderCountryBarrier) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<Zone> zones = odflow::testing::random_zones(rng, 3 + trial % 8);
    const ScenarioRun run =
        run_scenario(zones, DemographicRates{}, GravityConfig{}, {ScenarioMode::kBarrier, "country"});
    EXPECT_EQ(cross_border_share(run.aggregate, zones), 0.0);
    const ScenarioRun open = run_scenario(zones, DemographicRates{}, GravityConfig{}, ScenarioSpec{});
    const double s = cross_border_share(open.aggregate, zones);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(DirectionalShares, Examples) {
  const auto zones = line_zones({{12.0, -14.0}, {12.0, -13.0}}, {"x", "x"});
  ODMatrix m = matrix_for(zones);
  m.values(0, 1) = 40;
  m.values(0, 0) = 1000;  // intra-zonal, ignored
  DirectionalShares d = directional_shares(m, zones);
  EXPECT_EQ(d.west_to_east, 1.0);
  EXPECT_EQ(d.east_to_west, 0.0);
  EXPECT_EQ(d.north_south_trips, 0.0);
  EXPECT_EQ(d.south_to_north + d.north_to_south, 0.0);

  m.values(1, 0) = 40;
  d = directional_shares(m, zones);
  EXPECT_EQ(d.west_to_east, 0.5);
  EXPECT_EQ(d.east_to_west, 0.5);

  const auto diagonal = line_zones({{12.0, -14.0}, {13.0, -13.0}}, {"x", "x"});
  ODMatrix n = matrix_for(diagonal);
  n.values(1, 0) = 7;
  d = directional_shares(n, diagonal);
  EXPECT_EQ(d.east_to_west, 1.0);
  EXPECT_EQ(d.north_to_south, 1.0);
}

TEST(DirectionalShares, AxesSumToOne) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<Zone> zones = odflow::testing::random_zones(rng, 3 + trial % 8);
    const ScenarioRun run = run_scenario(zones, DemographicRates{}, GravityConfig{}, ScenarioSpec{});
    const DirectionalShares d = directional_shares(run.aggregate, zones);
    if (d.east_west_trips > 0) EXPECT_NEAR(d.west_to_east + d.east_to_west, 1.0, 1e-12);
    if (d.north_south_trips > 0) EXPECT_NEAR(d.north_to_south + d.south_to_north, 1.0, 1e-12);
  }
}

TEST(TotalTrips, PermutationInvariant) {
  std::mt19937_64 rng(13);
  const std::vector<Zone> zones = odflow::testing::random_zones(rng, 9);
  const ScenarioRun run = run_scenario(zones, DemographicRates{}, GravityConfig{}, ScenarioSpec{});
  std::vector<Zone> reversed(zones.rbegin(), zones.rend());
  const ScenarioRun rev = run_scenario(reversed, DemographicRates{}, GravityConfig{}, ScenarioSpec{});
  EXPECT_LE(odflow::testing::rel_diff(total_trips(run.aggregate), total_trips(rev.aggregate)), 1e-12);
}

TEST(Metrics, UnknownZoneIsContractError) {
  const auto zones = line_zones({{12.0, -14.0}}, {"x"});
  const ODMatrix m{{"Q"}, "aggregate", "", SquareMatrix(1)};
  EXPECT_THROW(directional_shares(m, zones), ContractError);
}

}  // namespace
}  // namespace odflow
