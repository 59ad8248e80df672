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

#include <functional>
#include <span>

#include "odflow/demand.hpp"
#include "odflow/gravity.hpp"

namespace odflow {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

// Golden-section search on [lo, hi] until the bracket is narrower than
// tolerance. Ties keep the lower sub-bracket. Returns the bracket midpoint.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tolerance);

struct CalibrationResult {
  double beta_hat = 0.0;
  double objective = 0.0;  // sum of squared cell errors, trips^2
  int evaluations = 0;
  double range_lo = 0.0;
  double range_hi = 0.0;
};

struct CalibrationOptions {
  double range_lo = kBetaRangeLo;
  double range_hi = kBetaRangeHi;
  double grid_step = 0.05;
  double tolerance = 1e-4;
  double min_distance_km = geo::kDefaultMinDistanceKm;
};

// Sum over cells of (modelled aggregate flow - observed)^2 at the given beta.
double calibration_objective(const ODMatrix& observed, std::span<const Zone> zones,
                             std::span<const ProductionVector> productions,
                             std::span<const AttractionVector> attractions,
                             const ScenarioSpec& scenario, double beta,
                             double min_distance_km = geo::kDefaultMinDistanceKm);

// Fits the decay exponent by a coarse grid over the range followed by
// golden-section refinement around the best grid point. The modelled matrix
// is the sum over the supplied purposes, unrounded.
CalibrationResult calibrate_beta(const ODMatrix& observed, std::span<const Zone> zones,
                                 std::span<const ProductionVector> productions,
                                 std::span<const AttractionVector> attractions,
                                 const ScenarioSpec& scenario,
                                 const CalibrationOptions& options = {});

}  // namespace odflow
