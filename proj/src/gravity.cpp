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

#include "odflow/gravity.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "odflow/error.hpp"

namespace odflow {
namespace {

// Row denominators below this are treated as unreachable.
constexpr double kDenominatorFloor = 1e-300;

std::vector<std::string> codes_of(std::span<const Zone> zones) {
  std::vector<std::string> codes;
  codes.reserve(zones.size());
  for (const Zone& z : zones) codes.push_back(z.code);
  return codes;
}

}  // namespace

void GravityConfig::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw RangeError(fmt::format("beta = {} must be positive", beta));
  }
  if (!(min_distance_km > 0.0) || !std::isfinite(min_distance_km)) {
    throw RangeError(fmt::format("min_distance_km = {} must be positive", min_distance_km));
  }
}

std::string ScenarioSpec::label() const {
  return mode == ScenarioMode::kBarrier ? "barrier" : "connected";
}

ScenarioMode parse_scenario_mode(std::string_view text) {
  if (text == "barrier") return ScenarioMode::kBarrier;
  if (text == "connected") return ScenarioMode::kConnected;
  throw ConfigError(fmt::format("unknown scenario '{}' (expected barrier or connected)", text));
}

std::vector<std::string> partition_labels(std::span<const Zone> zones, const ScenarioSpec& scenario) {
  std::string Zone::*field = nullptr;
  if (scenario.partition_key == "subregion") {
    field = &Zone::subregion;
  } else if (scenario.partition_key == "country") {
    field = &Zone::country;
  } else {
    throw ConfigError(fmt::format("unknown partition key '{}'", scenario.partition_key));
  }
  std::vector<std::string> labels;
  labels.reserve(zones.size());
  for (const Zone& z : zones) {
    if ((z.*field).empty()) {
      throw ConfigError(
          fmt::format("zone '{}' has no {} for the barrier scenario", z.code, scenario.partition_key));
    }
    labels.push_back(z.*field);
  }
  return labels;
}

SquareMatrix distance_matrix(std::span<const Zone> zones, double min_distance_km) {
  const std::size_t n = zones.size();
  if (n < 2) throw ConfigError("impedance needs at least two zones");
  std::vector<geo::Coordinate> coords;
  coords.reserve(n);
  for (const Zone& z : zones) coords.push_back(z.coord);

  SquareMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w(i, i) = geo::intra_zonal_distance(i, coords, min_distance_km);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::max(geo::distance_km(coords[i], coords[j]), min_distance_km);
      w(i, j) = d;
      w(j, i) = d;
    }
  }
  return w;
}

SquareMatrix impedance_from_distances(const SquareMatrix& distances, double beta,
                                      std::span<const std::string> partitions) {
  const std::size_t n = distances.size();
  if (!partitions.empty() && partitions.size() != n) {
    throw ContractError(fmt::format("{} partition labels for {} zones", partitions.size(), n));
  }
  SquareMatrix f(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!partitions.empty() && partitions[i] != partitions[j]) continue;
      f(i, j) = std::pow(distances(i, j), -beta);
    }
  }
  return f;
}

ImpedanceMatrix impedance_matrix(std::span<const Zone> zones, const GravityConfig& config,
                                 const ScenarioSpec& scenario) {
  config.validate();
  std::vector<std::string> partitions;
  if (scenario.mode == ScenarioMode::kBarrier) partitions = partition_labels(zones, scenario);

  ImpedanceMatrix out;
  out.zone_codes = codes_of(zones);
  out.scenario = scenario.label();
  out.distances = distance_matrix(zones, config.min_distance_km);
  out.values = impedance_from_distances(out.distances, config.beta, partitions);
  return out;
}

Distribution distribute(const ProductionVector& productions, const AttractionVector& attractions,
                        const ImpedanceMatrix& impedance) {
  const std::size_t n = impedance.values.size();
  if (productions.values.size() != n || attractions.values.size() != n ||
      impedance.zone_codes.size() != n) {
    throw ContractError(fmt::format("dimension mismatch: P has {}, A has {}, F is {}x{}",
                                    productions.values.size(), attractions.values.size(), n, n));
  }
  if (productions.purpose != attractions.purpose) {
    throw ContractError(fmt::format("purpose mismatch: P is {}, A is {}",
                                    purpose_name(productions.purpose),
                                    purpose_name(attractions.purpose)));
  }

  Distribution out;
  out.od.zone_codes = impedance.zone_codes;
  out.od.purpose = std::string(purpose_name(productions.purpose));
  out.od.scenario = impedance.scenario;
  out.od.values = SquareMatrix(n);

  const auto& a = attractions.values;
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = impedance.values.row(i);
    double denom = 0.0;
    for (std::size_t x = 0; x < n; ++x) denom += a[x] * f[x];

    const double p = productions.values[i];
    if (!(denom >= kDenominatorFloor)) {
      if (p > 0.0) out.stranded.push_back({impedance.zone_codes[i], out.od.purpose, p});
      continue;
    }
    auto q = out.od.values.row(i);
    for (std::size_t j = 0; j < n; ++j) q[j] = p * a[j] * f[j] / denom;
  }
  return out;
}

ODMatrix aggregate(std::span<const ODMatrix> per_purpose) {
  if (per_purpose.empty()) throw ContractError("aggregate needs at least one matrix");
  const ODMatrix& first = per_purpose.front();
  ODMatrix out{first.zone_codes, std::string(kAggregatePurpose), first.scenario,
               SquareMatrix(first.size())};
  for (const ODMatrix& m : per_purpose) {
    if (m.zone_codes != first.zone_codes) {
      throw ContractError(fmt::format("zone ordering of '{}' differs from '{}'", m.purpose, first.purpose));
    }
    if (m.scenario != first.scenario) {
      throw ContractError(
          fmt::format("scenario '{}' differs from '{}'", m.scenario, first.scenario));
    }
    if (m.values.size() != first.size()) {
      throw ContractError(fmt::format("matrix '{}' does not match its zone list", m.purpose));
    }
    auto dst = out.values.values();
    const auto src = m.values.values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  }
  return out;
}

ODMatrix round_matrix(const ODMatrix& m) {
  ODMatrix out = m;
  for (double& v : out.values.values()) v = std::round(v);
  return out;
}

std::vector<StrandedProduction> ScenarioRun::stranded() const {
  std::vector<StrandedProduction> all;
  for (const Distribution& d : per_purpose) all.insert(all.end(), d.stranded.begin(), d.stranded.end());
  return all;
}

ScenarioRun run_scenario(std::span<const Zone> zones, const DemographicRates& rates,
                         const GravityConfig& config, const ScenarioSpec& scenario) {
  rates.validate();
  const ImpedanceMatrix impedance = impedance_matrix(zones, config, scenario);

  ScenarioRun run;
  std::vector<ODMatrix> matrices;
  for (Purpose p : kAllPurposes) {
    run.per_purpose.push_back(
        distribute(productions(zones, rates, p), attraction_vector(zones, p), impedance));
    matrices.push_back(run.per_purpose.back().od);
  }
  run.aggregate = aggregate(matrices);
  return run;
}

}  // namespace odflow
