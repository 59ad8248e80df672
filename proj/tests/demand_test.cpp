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

#include "odflow/demand.hpp"

#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "odflow/error.hpp"
#include "test_support.hpp"

namespace odflow {
namespace {

Zone zone(std::string code, std::int64_t female, std::int64_t male) {
  Zone z;
  z.code = std::move(code);
  z.pop_female = female;
  z.pop_male = male;
  return z;
}

TEST(SchoolProductions, Kindergarten) {
  const std::vector<Zone> zones = {zone("A", 1000, 1000)};
  DemographicRates rates;
  rates.school_days = 1.0;
  EXPECT_NEAR(school_productions(zones, rates, SchoolLevel::kKindergarten).values[0], 172.0, 1e-9);
  const ProductionVector yearly = school_productions(zones, DemographicRates{}, SchoolLevel::kKindergarten);
  EXPECT_EQ(yearly.purpose, Purpose::kKindergarten);
  EXPECT_NEAR(yearly.values[0], 34400.0, 1e-9);
}

TEST(SchoolProductions, ZeroPopulationAndSecondary) {
  const std::vector<Zone> zones = {zone("A", 0, 0), zone("B", 300, 250)};
  for (SchoolLevel level : {SchoolLevel::kKindergarten, SchoolLevel::kPrimary, SchoolLevel::kSecondary}) {
    EXPECT_EQ(school_productions(zones, DemographicRates{}, level).values[0], 0.0);
  }
  EXPECT_NEAR(school_productions(zones, DemographicRates{}, SchoolLevel::kSecondary).values[1], 12470.0, 1e-9);
  // 200 * (0.071 * 300 + 0.073 * 250)
  EXPECT_NEAR(school_productions(zones, DemographicRates{}, SchoolLevel::kPrimary).values[1], 7910.0, 1e-9);
}

TEST(HospitalProductions, Examples) {
  EXPECT_NEAR(DemographicRates{}.hospital_per_capita(), 0.240534, 1e-9);
  const std::vector<Zone> zones = {zone("A", 5000, 5000), zone("B", 0, 0), zone("C", 600, 637)};
  const ProductionVector p = hospital_productions(zones, DemographicRates{});
  EXPECT_EQ(p.purpose, Purpose::kHospital);
  EXPECT_NEAR(p.values[0], 2405.34, 1e-9);
  EXPECT_EQ(p.values[1], 0.0);
  EXPECT_NEAR(p.values[2], 297.54, 0.01);
}

TEST(MarketProductions, Examples) {
  const std::vector<Zone> zones = {zone("A", 200, 200), zone("B", 0, 0), zone("C", 500, 500)};
  const ProductionVector p = market_productions(zones, DemographicRates{});
  EXPECT_NEAR(p.values[0], 5200.0, 1e-9);
  EXPECT_EQ(p.values[1], 0.0);
  DemographicRates once;
  once.market_days = 1.0;
  EXPECT_NEAR(market_productions(zones, once).values[2], 250.0, 1e-9);
}

TEST(Productions, LinearInPopulation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Zone> zones = odflow::testing::random_zones(rng, 6);
    std::vector<Zone> doubled = zones;
    for (Zone& z : doubled) {
      z.pop_female *= 2;
      z.pop_male *= 2;
    }
    for (Purpose p : kAllPurposes) {
      const auto base = productions(zones, DemographicRates{}, p).values;
      const auto twice = productions(doubled, DemographicRates{}, p).values;
      for (std::size_t i = 0; i < base.size(); ++i) EXPECT_DOUBLE_EQ(twice[i], 2.0 * base[i]);
    }
  }
}

TEST(AttractionVector, Examples) {
  std::vector<Zone> zones(4);
  for (std::size_t i = 0; i < zones.size(); ++i) {
    zones[i].code = std::string(1, static_cast<char>('A' + i));
    zones[i].facility_count(Purpose::kHospital) = 1;
  }
  EXPECT_EQ(attraction_vector(zones, Purpose::kHospital).values, (std::vector<double>{0.25, 0.25, 0.25, 0.25}));

  for (Zone& z : zones) z.facility_count(Purpose::kHospital) = 0;
  zones[1].facility_count(Purpose::kHospital) = 1;
  EXPECT_EQ(attraction_vector(zones, Purpose::kHospital).values, (std::vector<double>{0, 1, 0, 0}));

  std::vector<Zone> three(3);
  three[0].facility_count(Purpose::kMarket) = 2;
  three[1].facility_count(Purpose::kMarket) = 1;
  const AttractionVector a = attraction_vector(three, Purpose::kMarket);
  EXPECT_EQ(a.purpose, Purpose::kMarket);
  EXPECT_DOUBLE_EQ(a.values[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(a.values[1], 1.0 / 3.0);
  EXPECT_EQ(a.values[2], 0.0);

  EXPECT_EQ(attraction_vector(three, Purpose::kHospital).values, (std::vector<double>{0, 0, 0}));
}

TEST(AttractionVector, SumsToOne) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Zone> zones = odflow::testing::random_zones(rng, 3 + trial % 8);
    for (Purpose p : kAllPurposes) {
      const auto a = attraction_vector(zones, p).values;
      EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), 1.0, 1e-12);
    }
  }
}

TEST(DemographicRates, Validation) {
  EXPECT_NO_THROW(DemographicRates{}.validate());
  DemographicRates r;
  r.market_share = 1.5;
  EXPECT_THROW(r.validate(), RangeError);
  r = {};
  r.school_days = 0.0;
  EXPECT_THROW(r.validate(), RangeError);
  r = {};
  r.market_days = 367.0;
  EXPECT_THROW(r.validate(), RangeError);
  r = {};
  r.visits_per_pregnancy = -1.0;
  EXPECT_THROW(r.validate(), RangeError);
}

TEST(Zones, Validation) {
  std::vector<Zone> zones = {zone("A", 1, 1), zone("A", 2, 2)};
  EXPECT_THROW(validate_zones(zones), ValidationError);
  zones[1].code = "B";
  EXPECT_NO_THROW(validate_zones(zones));
  zones[1].facility_count(Purpose::kMarket) = -1;
  EXPECT_THROW(validate_zones(zones), ValidationError);
}

TEST(Purpose, NamesRoundTrip) {
  for (Purpose p : kAllPurposes) EXPECT_EQ(purpose_from_name(purpose_name(p)), p);
  EXPECT_FALSE(purpose_from_name("aggregate").has_value());
}

}  // namespace
}  // namespace odflow
