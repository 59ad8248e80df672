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

#include <set>

#include <fmt/format.h>

#include "odflow/error.hpp"

namespace odflow {

std::string_view purpose_name(Purpose p) {
  switch (p) {
    case Purpose::kKindergarten: return "kindergarten";
    case Purpose::kPrimarySchool: return "primary_school";
    case Purpose::kSecondarySchool: return "secondary_school";
    case Purpose::kHospital: return "hospital";
    case Purpose::kMarket: return "market";
  }
  return "unknown";
}

std::optional<Purpose> purpose_from_name(std::string_view name) {
  for (Purpose p : kAllPurposes) {
    if (purpose_name(p) == name) return p;
  }
  return std::nullopt;
}

void validate_zones(std::span<const Zone> zones) {
  std::set<std::string_view> seen;
  for (const Zone& z : zones) {
    if (z.code.empty()) throw ValidationError("zone with empty code");
    if (!seen.insert(z.code).second) {
      throw ValidationError(fmt::format("duplicate zone code '{}'", z.code));
    }
    if (z.pop_female < 0 || z.pop_male < 0) {
      throw ValidationError(fmt::format("zone '{}' has a negative population", z.code));
    }
    for (Purpose p : kAllPurposes) {
      if (z.facility_count(p) < 0) {
        throw ValidationError(
            fmt::format("zone '{}' has a negative {} count", z.code, purpose_name(p)));
      }
    }
  }
}

double DemographicRates::hospital_per_capita() const {
  return pregnancy_rate * (visits_per_pregnancy * pregnancy_attendance + skilled_birth_share) +
         child_visit_coverage * under5_share + tb_rate * tb_attendance;
}

void DemographicRates::validate() const {
  const auto check_rate = [](double v, std::string_view name) {
    if (!(v >= 0.0 && v <= 1.0)) throw RangeError(fmt::format("rate {} = {} outside [0, 1]", name, v));
  };
  const auto check_days = [](double v, std::string_view name) {
    if (!(v >= 1.0 && v <= 366.0)) throw RangeError(fmt::format("{} = {} outside [1, 366]", name, v));
  };
  check_rate(kindergarten_f, "kindergarten_f");
  check_rate(kindergarten_m, "kindergarten_m");
  check_rate(primary_f, "primary_f");
  check_rate(primary_m, "primary_m");
  check_rate(secondary_f, "secondary_f");
  check_rate(secondary_m, "secondary_m");
  check_rate(pregnancy_rate, "pregnancy_rate");
  check_rate(pregnancy_attendance, "pregnancy_attendance");
  check_rate(skilled_birth_share, "skilled_birth_share");
  check_rate(under5_share, "under5_share");
  check_rate(child_visit_coverage, "child_visit_coverage");
  check_rate(tb_rate, "tb_rate");
  check_rate(tb_attendance, "tb_attendance");
  check_rate(market_share, "market_share");
  check_days(school_days, "school_days");
  check_days(market_days, "market_days");
  if (!(visits_per_pregnancy >= 0.0)) {
    throw RangeError(fmt::format("visits_per_pregnancy = {} is negative", visits_per_pregnancy));
  }
}

ProductionVector school_productions(std::span<const Zone> zones, const DemographicRates& rates,
                                    SchoolLevel level) {
  double rate_f = 0.0;
  double rate_m = 0.0;
  Purpose purpose = Purpose::kKindergarten;
  switch (level) {
    case SchoolLevel::kKindergarten:
      rate_f = rates.kindergarten_f;
      rate_m = rates.kindergarten_m;
      purpose = Purpose::kKindergarten;
      break;
    case SchoolLevel::kPrimary:
      rate_f = rates.primary_f;
      rate_m = rates.primary_m;
      purpose = Purpose::kPrimarySchool;
      break;
    case SchoolLevel::kSecondary:
      rate_f = rates.secondary_f;
      rate_m = rates.secondary_m;
      purpose = Purpose::kSecondarySchool;
      break;
  }
  ProductionVector out{purpose, {}};
  out.values.reserve(zones.size());
  for (const Zone& z : zones) {
    const double daily = rate_f * static_cast<double>(z.pop_female) +
                         rate_m * static_cast<double>(z.pop_male);
    out.values.push_back(daily * rates.school_days);
  }
  return out;
}

ProductionVector hospital_productions(std::span<const Zone> zones, const DemographicRates& rates) {
  const double per_capita = rates.hospital_per_capita();
  ProductionVector out{Purpose::kHospital, {}};
  out.values.reserve(zones.size());
  for (const Zone& z : zones) out.values.push_back(per_capita * static_cast<double>(z.population()));
  return out;
}

ProductionVector market_productions(std::span<const Zone> zones, const DemographicRates& rates) {
  ProductionVector out{Purpose::kMarket, {}};
  out.values.reserve(zones.size());
  for (const Zone& z : zones) {
    out.values.push_back(rates.market_share * static_cast<double>(z.population()) * rates.market_days);
  }
  return out;
}

ProductionVector productions(std::span<const Zone> zones, const DemographicRates& rates,
                             Purpose purpose) {
  switch (purpose) {
    case Purpose::kKindergarten: return school_productions(zones, rates, SchoolLevel::kKindergarten);
    case Purpose::kPrimarySchool: return school_productions(zones, rates, SchoolLevel::kPrimary);
    case Purpose::kSecondarySchool: return school_productions(zones, rates, SchoolLevel::kSecondary);
    case Purpose::kHospital: return hospital_productions(zones, rates);
    case Purpose::kMarket: return market_productions(zones, rates);
  }
  throw ContractError("unknown purpose");
}

AttractionVector attraction_vector(std::span<const Zone> zones, Purpose purpose) {
  std::int64_t total = 0;
  for (const Zone& z : zones) total += z.facility_count(purpose);

  AttractionVector out{purpose, std::vector<double>(zones.size(), 0.0)};
  if (total == 0) return out;
  for (std::size_t i = 0; i < zones.size(); ++i) {
    out.values[i] = static_cast<double>(zones[i].facility_count(purpose)) / static_cast<double>(total);
  }
  return out;
}

}  // namespace odflow
