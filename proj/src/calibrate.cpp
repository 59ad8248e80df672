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

#include "odflow/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "odflow/error.hpp"

namespace odflow {
namespace {

// Precomputed distances and partitions; only F changes with beta.
class SseObjective {
 public:
  SseObjective(const ODMatrix& observed, std::span<const Zone> zones,
               std::span<const ProductionVector> productions,
               std::span<const AttractionVector> attractions, const ScenarioSpec& scenario,
               double min_distance_km)
      : observed_(observed), productions_(productions), attractions_(attractions) {
    if (observed.size() == 0) throw ContractError("observed matrix is empty");
    if (observed.values.size() != observed.size()) {
      throw ContractError("observed matrix does not match its zone list");
    }
    if (observed.size() != zones.size()) {
      throw ContractError(fmt::format("observed matrix has {} zones, zone table has {}",
                                      observed.size(), zones.size()));
    }
    for (std::size_t i = 0; i < zones.size(); ++i) {
      if (observed.zone_codes[i] != zones[i].code) {
        throw ContractError(fmt::format("observed zone {} is '{}', zone table has '{}'", i,
                                        observed.zone_codes[i], zones[i].code));
      }
    }
    if (productions.size() != attractions.size() || productions.empty()) {
      throw ContractError(fmt::format("{} production vectors for {} attraction vectors",
                                      productions.size(), attractions.size()));
    }
    if (!(min_distance_km > 0.0)) throw RangeError("min_distance_km must be positive");

    impedance_.zone_codes = observed.zone_codes;
    impedance_.scenario = scenario.label();
    impedance_.distances = distance_matrix(zones, min_distance_km);
    if (scenario.mode == ScenarioMode::kBarrier) partitions_ = partition_labels(zones, scenario);
  }

  double operator()(double beta) {
    ++evaluations_;
    impedance_.values = impedance_from_distances(impedance_.distances, beta, partitions_);
    SquareMatrix modelled(observed_.size());
    for (std::size_t k = 0; k < productions_.size(); ++k) {
      const Distribution d = distribute(productions_[k], attractions_[k], impedance_);
      auto dst = modelled.values();
      const auto src = d.od.values.values();
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += src[c];
    }
    double sse = 0.0;
    const auto obs = observed_.values.values();
    const auto mod = modelled.values();
    for (std::size_t c = 0; c < obs.size(); ++c) {
      const double e = mod[c] - obs[c];
      sse += e * e;
    }
    return sse;
  }

  int evaluations() const { return evaluations_; }

 private:
  const ODMatrix& observed_;
  std::span<const ProductionVector> productions_;
  std::span<const AttractionVector> attractions_;
  ImpedanceMatrix impedance_;
  std::vector<std::string> partitions_;
  int evaluations_ = 0;
};

}  // namespace

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;
  while (b - a >= tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evaluations;
  }
  const double x = (a + b) / 2.0;
  return {x, f(x), evaluations + 1};
}

double calibration_objective(const ODMatrix& observed, std::span<const Zone> zones,
                             std::span<const ProductionVector> productions,
                             std::span<const AttractionVector> attractions,
                             const ScenarioSpec& scenario, double beta, double min_distance_km) {
  SseObjective objective(observed, zones, productions, attractions, scenario, min_distance_km);
  return objective(beta);
}

CalibrationResult calibrate_beta(const ODMatrix& observed, std::span<const Zone> zones,
                                 std::span<const ProductionVector> productions,
                                 std::span<const AttractionVector> attractions,
                                 const ScenarioSpec& scenario, const CalibrationOptions& options) {
  const double lo = options.range_lo;
  const double hi = options.range_hi;
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && hi > 0.0)) {
    throw RangeError(fmt::format("calibration range [{}, {}] must lie in (0, inf)", lo, hi));
  }
  if (!(lo < hi)) throw RangeError(fmt::format("calibration range [{}, {}] is empty", lo, hi));
  if (!(options.grid_step > 0.0) || !(options.tolerance > 0.0)) {
    throw RangeError("grid step and tolerance must be positive");
  }

  SseObjective objective(observed, zones, productions, attractions, scenario,
                         options.min_distance_km);

  // Grid points are lo + k * step, plus hi itself when the step does not land on it.
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double beta = lo + k * options.grid_step;
    if (beta > hi + 1e-12) break;
    grid.push_back(std::min(beta, hi));
  }
  if (grid.back() < hi - 1e-12) grid.push_back(hi);

  double best_beta = grid.front();
  double best_value = objective(best_beta);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double value = objective(grid[k]);
    if (value < best_value) {
      best_value = value;
      best_beta = grid[k];
    }
  }

  const double a = std::max(lo, best_beta - options.grid_step);
  const double b = std::min(hi, best_beta + options.grid_step);
  const ScalarMinimum refined = golden_section_minimize(
      [&objective](double beta) { return objective(beta); }, a, b, options.tolerance);

  CalibrationResult out;
  out.range_lo = lo;
  out.range_hi = hi;
  if (refined.value < best_value) {
    out.beta_hat = refined.x;
    out.objective = refined.value;
  } else {
    out.beta_hat = best_beta;
    out.objective = best_value;
  }
  out.evaluations = objective.evaluations();
  return out;
}

}  // namespace odflow
