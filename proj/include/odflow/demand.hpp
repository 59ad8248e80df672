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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odflow/geo.hpp"

namespace odflow {

// Trip purposes, one per facility type. School levels are distinct purposes.
enum class Purpose { kKindergarten, kPrimarySchool, kSecondarySchool, kHospital, kMarket };

inline constexpr std::array<Purpose, 5> kAllPurposes = {
    Purpose::kKindergarten, Purpose::kPrimarySchool, Purpose::kSecondarySchool,
    Purpose::kHospital, Purpose::kMarket};

// Stable lowercase tag, also the zone-table column name.
std::string_view purpose_name(Purpose p);
std::optional<Purpose> purpose_from_name(std::string_view name);

enum class SchoolLevel { kKindergarten, kPrimary, kSecondary };

struct Zone {
  std::string code;
  std::string name;
  std::string country;
  std::string subregion;
  geo::Coordinate coord;
  std::int64_t pop_female = 0;
  std::int64_t pop_male = 0;
  // Facility count per purpose, indexed by static_cast<size_t>(Purpose).
  std::array<std::int64_t, kAllPurposes.size()> facilities{};

  std::int64_t population() const { return pop_female + pop_male; }
  std::int64_t facility_count(Purpose p) const { return facilities[static_cast<std::size_t>(p)]; }
  std::int64_t& facility_count(Purpose p) { return facilities[static_cast<std::size_t>(p)]; }
};

// Throws ValidationError on duplicate codes, empty codes or negative counts.
void validate_zones(std::span<const Zone> zones);

// Production coefficients. Defaults are the study-area values: school-age
// population fractions by sex, WHO health-service rates, and the market share.
struct DemographicRates {
  double kindergarten_f = 0.085;
  double kindergarten_m = 0.087;
  double primary_f = 0.071;
  double primary_m = 0.073;
  double secondary_f = 0.112;
  double secondary_m = 0.115;
  double school_days = 200.0;

  double pregnancy_rate = 0.0378;
  double visits_per_pregnancy = 4.0;
  double pregnancy_attendance = 0.5;
  double skilled_birth_share = 0.51;
  double under5_share = 0.172;
  double child_visit_coverage = 0.84;
  double tb_rate = 0.0014;
  double tb_attendance = 0.84;

  double market_share = 0.25;
  double market_days = 52.0;

  // Yearly hospital visits per inhabitant.
  double hospital_per_capita() const;

  // Throws RangeError if a rate leaves [0, 1], a day count leaves [1, 366],
  // or visits_per_pregnancy is negative.
  void validate() const;
};

struct ProductionVector {
  Purpose purpose = Purpose::kKindergarten;
  std::vector<double> values;  // yearly trips P_i per zone
};

struct AttractionVector {
  Purpose purpose = Purpose::kKindergarten;
  std::vector<double> values;  // A_j, sums to 1 or all zero
};

ProductionVector school_productions(std::span<const Zone> zones, const DemographicRates& rates,
                                    SchoolLevel level);
ProductionVector hospital_productions(std::span<const Zone> zones, const DemographicRates& rates);
ProductionVector market_productions(std::span<const Zone> zones, const DemographicRates& rates);

// Dispatches to the purpose's production formula.
ProductionVector productions(std::span<const Zone> zones, const DemographicRates& rates,
                             Purpose purpose);

// A_i = count_i / total count of the purpose; all zeros when no zone has one.
AttractionVector attraction_vector(std::span<const Zone> zones, Purpose purpose);

}  // namespace odflow
