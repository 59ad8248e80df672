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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "odflow/demand.hpp"
#include "odflow/flowmap.hpp"
#include "odflow/gravity.hpp"
#include "odflow/io.hpp"

namespace odflow {

// Every tunable of a run, addressable by a dotted key such as
// "rates.school_days" or "render.breaks". Defaults reproduce the study setup.
struct RunConfig {
  DemographicRates rates;
  GravityConfig gravity;
  ScenarioSpec scenario;
  io::ZoneLoadOptions zones;

  // Render fields left empty are derived from the data at render time.
  std::vector<double> render_breaks;
  int render_classes = flowmap::kDefaultClassCount;
  std::vector<std::string> render_flow_colors;
  std::vector<double> render_widths;
  flowmap::RenderSpec render_base;

  bool include_intrazonal = true;

  double calibrate_range_lo = kBetaRangeLo;
  double calibrate_range_hi = kBetaRangeHi;

  // Throws ConfigError for unknown keys or values of the wrong type.
  void set(std::string_view key, const nlohmann::json& value);

  // Accepts nested objects, dotted top-level keys, or a mix.
  void apply_json(const nlohmann::json& doc);

  // Parses "key=value"; the value is read as JSON, falling back to a string.
  void apply_assignment(std::string_view assignment);

  static std::vector<std::string> keys();

  // Validates every section.
  void validate() const;
};

RunConfig load_run_config(const std::string& path);

}  // namespace odflow
