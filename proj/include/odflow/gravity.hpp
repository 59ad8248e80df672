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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odflow/demand.hpp"
#include "odflow/matrix.hpp"

namespace odflow {

// Distance-decay settings. The proportionality constant of the unconstrained
// gravity form cancels under per-origin normalization and is not represented.
struct GravityConfig {
  double beta = 2.0;
  double min_distance_km = geo::kDefaultMinDistanceKm;

  void validate() const;
};

// Commonly cited plausible range for the decay exponent.
inline constexpr double kBetaRangeLo = 0.5;
inline constexpr double kBetaRangeHi = 3.0;

enum class ScenarioMode { kBarrier, kConnected };

// Barrier confines trips to zones sharing the partition value; connected
// allows every pair.
struct ScenarioSpec {
  ScenarioMode mode = ScenarioMode::kConnected;
  std::string partition_key = "subregion";  // "subregion" or "country"

  std::string label() const;
};

ScenarioMode parse_scenario_mode(std::string_view text);

struct ImpedanceMatrix {
  std::vector<std::string> zone_codes;
  std::string scenario;
  SquareMatrix distances;  // W_ij in km, diagonal = intra-zonal distance
  SquareMatrix values;     // F_ij = W_ij^-beta, zero on severed pairs
};

struct ODMatrix {
  std::vector<std::string> zone_codes;
  std::string purpose;  // purpose tag or "aggregate"
  std::string scenario;
  SquareMatrix values;

  std::size_t size() const { return zone_codes.size(); }
};

inline constexpr std::string_view kAggregatePurpose = "aggregate";

struct StrandedProduction {
  std::string zone_code;
  std::string purpose;
  double lost_trips = 0.0;
};

struct Distribution {
  ODMatrix od;
  std::vector<StrandedProduction> stranded;
};

// Partition value of every zone under the scenario's key. Throws ConfigError
// naming the first zone with an empty value, or on an unknown key.
std::vector<std::string> partition_labels(std::span<const Zone> zones, const ScenarioSpec& scenario);

// W: off-diagonal great-circle distance floored at min_distance_km, diagonal
// from geo::intra_zonal_distance.
SquareMatrix distance_matrix(std::span<const Zone> zones, double min_distance_km);

// F_ij = W_ij^-beta; pairs whose partitions differ are zeroed when
// partitions is non-empty.
SquareMatrix impedance_from_distances(const SquareMatrix& distances, double beta,
                                      std::span<const std::string> partitions = {});

ImpedanceMatrix impedance_matrix(std::span<const Zone> zones, const GravityConfig& config,
                                 const ScenarioSpec& scenario);

// Production-constrained distribution:
//   Q_ij = P_i * A_j * F_ij / sum_x (A_x * F_ix)
// Rows with no reachable attraction are zero and reported as stranded when P_i > 0.
Distribution distribute(const ProductionVector& productions, const AttractionVector& attractions,
                        const ImpedanceMatrix& impedance);

// Elementwise sum; inputs must share zone ordering and scenario.
ODMatrix aggregate(std::span<const ODMatrix> per_purpose);

// Half-away-from-zero rounding of every cell.
ODMatrix round_matrix(const ODMatrix& m);

// Every purpose distributed plus their aggregate, for one scenario.
struct ScenarioRun {
  std::vector<Distribution> per_purpose;
  ODMatrix aggregate;

  std::vector<StrandedProduction> stranded() const;
};

ScenarioRun run_scenario(std::span<const Zone> zones, const DemographicRates& rates,
                         const GravityConfig& config, const ScenarioSpec& scenario);

}  // namespace odflow
