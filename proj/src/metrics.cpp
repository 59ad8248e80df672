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

#include <cmath>
#include <limits>
#include <map>
#include <string_view>

#include <fmt/format.h>

#include "odflow/error.hpp"

namespace odflow {
namespace {

std::vector<const Zone*> zones_for(const ODMatrix& m, std::span<const Zone> zones) {
  std::map<std::string_view, const Zone*> by_code;
  for (const Zone& z : zones) by_code.emplace(z.code, &z);
  std::vector<const Zone*> out;
  out.reserve(m.size());
  for (const std::string& code : m.zone_codes) {
    const auto it = by_code.find(code);
    if (it == by_code.end()) {
      throw ContractError(fmt::format("matrix zone '{}' is not in the zone table", code));
    }
    out.push_back(it->second);
  }
  return out;
}

double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

double row_sum(const ODMatrix& m, std::size_t i) {
  double s = 0.0;
  for (double v : m.values.row(i)) s += v;
  return s;
}

}  // namespace

double total_trips(const ODMatrix& m) {
  double s = 0.0;
  for (double v : m.values.values()) s += v;
  return s;
}

ScenarioComparison scenario_delta(const ODMatrix& without, const ODMatrix& with) {
  if (without.zone_codes != with.zone_codes) {
    throw ContractError("scenario matrices have different zone orderings");
  }
  ScenarioComparison out;
  out.total_without = total_trips(without);
  out.total_with = total_trips(with);
  out.delta = out.total_with - out.total_without;
  out.increase_vs_without = ratio(out.delta, out.total_without);
  out.increase_vs_with = ratio(out.delta, out.total_with);
  out.per_zone_row_deltas.reserve(with.size());
  for (std::size_t i = 0; i < with.size(); ++i) {
    out.per_zone_row_deltas.push_back(row_sum(with, i) - row_sum(without, i));
  }
  return out;
}

double cross_border_share(const ODMatrix& m, std::span<const Zone> zones, bool include_intrazonal) {
  const auto rows = zones_for(m, zones);
  for (const Zone* z : rows) {
    if (z->country.empty()) throw ConfigError(fmt::format("zone '{}' has no country label", z->code));
  }
  double cross = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j && !include_intrazonal) continue;
      const double v = m.values(i, j);
      total += v;
      if (rows[i]->country != rows[j]->country) cross += v;
    }
  }
  return total > 0.0 ? cross / total : 0.0;
}

DirectionalShares directional_shares(const ODMatrix& m, std::span<const Zone> zones) {
  const auto rows = zones_for(m, zones);
  double east = 0.0, west = 0.0, north = 0.0, south = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      const double v = m.values(i, j);
      if (v == 0.0) continue;
      const double dlon = rows[j]->coord.lon - rows[i]->coord.lon;
      const double dlat = rows[j]->coord.lat - rows[i]->coord.lat;
      if (dlon > kDirectionDeadBandDeg) east += v;
      else if (dlon < -kDirectionDeadBandDeg) west += v;
      if (dlat > kDirectionDeadBandDeg) north += v;
      else if (dlat < -kDirectionDeadBandDeg) south += v;
    }
  }
  DirectionalShares out;
  out.east_west_trips = east + west;
  out.north_south_trips = north + south;
  if (out.east_west_trips > 0.0) {
    out.west_to_east = east / out.east_west_trips;
    out.east_to_west = west / out.east_west_trips;
  }
  if (out.north_south_trips > 0.0) {
    out.south_to_north = north / out.north_south_trips;
    out.north_to_south = south / out.north_south_trips;
  }
  return out;
}

}  // namespace odflow
