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

#include <span>
#include <vector>

#include "odflow/demand.hpp"
#include "odflow/gravity.hpp"

namespace odflow {

struct ScenarioComparison {
  double total_without = 0.0;
  double total_with = 0.0;
  double delta = 0.0;
  double increase_vs_without = 0.0;  // delta / total_without
  double increase_vs_with = 0.0;     // delta / total_with
  std::vector<double> per_zone_row_deltas;
};

// Sum of every cell, diagonal included.
double total_trips(const ODMatrix& m);

// A zero denominator yields 0 when delta is 0 and +inf otherwise.
ScenarioComparison scenario_delta(const ODMatrix& without, const ODMatrix& with);

// Share of trips whose origin and destination countries differ. Zones are
// matched to matrix rows by code.
double cross_border_share(const ODMatrix& m, std::span<const Zone> zones,
                          bool include_intrazonal = true);

struct DirectionalShares {
  double west_to_east = 0.0;
  double east_to_west = 0.0;
  double north_to_south = 0.0;
  double south_to_north = 0.0;
  // Trips that moved along each axis; the shares on an axis are fractions of these.
  double east_west_trips = 0.0;
  double north_south_trips = 0.0;
};

inline constexpr double kDirectionDeadBandDeg = 1e-9;

DirectionalShares directional_shares(const ODMatrix& m, std::span<const Zone> zones);

}  // namespace odflow
