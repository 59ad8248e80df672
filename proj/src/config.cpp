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

#include "odflow/config.hpp"

#include <functional>
#include <map>

#include <fmt/format.h>

#include "odflow/error.hpp"

namespace odflow {
namespace {

using Json = nlohmann::json;
using Setter = std::function<void(RunConfig&, const Json&)>;

double as_number(std::string_view key, const Json& v) {
  if (!v.is_number()) throw ConfigError(fmt::format("config key '{}' expects a number", key));
  return v.get<double>();
}

int as_int(std::string_view key, const Json& v) {
  if (!v.is_number_integer()) throw ConfigError(fmt::format("config key '{}' expects an integer", key));
  return v.get<int>();
}

bool as_bool(std::string_view key, const Json& v) {
  if (!v.is_boolean()) throw ConfigError(fmt::format("config key '{}' expects true or false", key));
  return v.get<bool>();
}

std::string as_string(std::string_view key, const Json& v) {
  if (!v.is_string()) throw ConfigError(fmt::format("config key '{}' expects a string", key));
  return v.get<std::string>();
}

std::vector<double> as_numbers(std::string_view key, const Json& v) {
  if (!v.is_array()) throw ConfigError(fmt::format("config key '{}' expects an array of numbers", key));
  std::vector<double> out;
  for (const Json& e : v) out.push_back(as_number(key, e));
  return out;
}

std::vector<std::string> as_strings(std::string_view key, const Json& v) {
  if (!v.is_array()) throw ConfigError(fmt::format("config key '{}' expects an array of strings", key));
  std::vector<std::string> out;
  for (const Json& e : v) out.push_back(as_string(key, e));
  return out;
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    const auto rate = [&t](std::string name, double DemographicRates::*field) {
      const std::string key = "rates." + name;
      t.emplace(key, [key, field](RunConfig& c, const Json& v) { c.rates.*field = as_number(key, v); });
    };
    rate("kindergarten_f", &DemographicRates::kindergarten_f);
    rate("kindergarten_m", &DemographicRates::kindergarten_m);
    rate("primary_f", &DemographicRates::primary_f);
    rate("primary_m", &DemographicRates::primary_m);
    rate("secondary_f", &DemographicRates::secondary_f);
    rate("secondary_m", &DemographicRates::secondary_m);
    rate("school_days", &DemographicRates::school_days);
    rate("pregnancy_rate", &DemographicRates::pregnancy_rate);
    rate("visits_per_pregnancy", &DemographicRates::visits_per_pregnancy);
    rate("pregnancy_attendance", &DemographicRates::pregnancy_attendance);
    rate("skilled_birth_share", &DemographicRates::skilled_birth_share);
    rate("under5_share", &DemographicRates::under5_share);
    rate("child_visit_coverage", &DemographicRates::child_visit_coverage);
    rate("tb_rate", &DemographicRates::tb_rate);
    rate("tb_attendance", &DemographicRates::tb_attendance);
    rate("market_share", &DemographicRates::market_share);
    rate("market_days", &DemographicRates::market_days);

    t.emplace("gravity.beta", [](RunConfig& c, const Json& v) { c.gravity.beta = as_number("gravity.beta", v); });
    t.emplace("gravity.min_distance_km", [](RunConfig& c, const Json& v) {
      c.gravity.min_distance_km = as_number("gravity.min_distance_km", v);
    });
    t.emplace("scenario.mode", [](RunConfig& c, const Json& v) {
      c.scenario.mode = parse_scenario_mode(as_string("scenario.mode", v));
    });
    t.emplace("scenario.partition_key", [](RunConfig& c, const Json& v) {
      c.scenario.partition_key = as_string("scenario.partition_key", v);
    });
    t.emplace("zones.female_share_default", [](RunConfig& c, const Json& v) {
      c.zones.female_share_default = as_number("zones.female_share_default", v);
    });

    t.emplace("render.breaks", [](RunConfig& c, const Json& v) { c.render_breaks = as_numbers("render.breaks", v); });
    t.emplace("render.classes", [](RunConfig& c, const Json& v) { c.render_classes = as_int("render.classes", v); });
    t.emplace("render.flow_colors", [](RunConfig& c, const Json& v) {
      c.render_flow_colors = as_strings("render.flow_colors", v);
    });
    t.emplace("render.widths", [](RunConfig& c, const Json& v) { c.render_widths = as_numbers("render.widths", v); });
    t.emplace("render.min_flow", [](RunConfig& c, const Json& v) {
      c.render_base.min_flow = as_number("render.min_flow", v);
    });
    t.emplace("render.node_radii", [](RunConfig& c, const Json& v) {
      const std::vector<double> radii = as_numbers("render.node_radii", v);
      if (radii.size() != c.render_base.node_radii.size()) {
        throw ConfigError(fmt::format("render.node_radii needs {} values", c.render_base.node_radii.size()));
      }
      std::copy(radii.begin(), radii.end(), c.render_base.node_radii.begin());
    });
    t.emplace("render.node_breaks", [](RunConfig& c, const Json& v) {
      c.render_base.node_breaks = as_numbers("render.node_breaks", v);
    });
    t.emplace("render.canvas_width", [](RunConfig& c, const Json& v) {
      c.render_base.canvas_width = as_int("render.canvas_width", v);
    });
    t.emplace("render.canvas_height", [](RunConfig& c, const Json& v) {
      c.render_base.canvas_height = as_int("render.canvas_height", v);
    });
    t.emplace("render.padding", [](RunConfig& c, const Json& v) {
      c.render_base.padding = as_number("render.padding", v);
    });

    t.emplace("metrics.include_intrazonal", [](RunConfig& c, const Json& v) {
      c.include_intrazonal = as_bool("metrics.include_intrazonal", v);
    });
    t.emplace("calibrate.range_lo", [](RunConfig& c, const Json& v) {
      c.calibrate_range_lo = as_number("calibrate.range_lo", v);
    });
    t.emplace("calibrate.range_hi", [](RunConfig& c, const Json& v) {
      c.calibrate_range_hi = as_number("calibrate.range_hi", v);
    });
    return t;
  }();
  return table;
}

void flatten(const Json& node, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  for (const auto& [k, v] : node.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      flatten(v, key, out);
    } else {
      out.emplace_back(key, v);
    }
  }
}

}  // namespace

void RunConfig::set(std::string_view key, const Json& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError(fmt::format("unknown config key '{}'", key));
  it->second(*this, value);
}

void RunConfig::apply_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  std::vector<std::pair<std::string, Json>> entries;
  flatten(doc, "", entries);
  for (const auto& [key, value] : entries) set(key, value);
}

void RunConfig::apply_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError(fmt::format("expected key=value, got '{}'", assignment));
  }
  const std::string_view key = assignment.substr(0, eq);
  const std::string text(assignment.substr(eq + 1));
  Json value = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;
  set(key, value);
}

std::vector<std::string> RunConfig::keys() {
  std::vector<std::string> out;
  for (const auto& [k, _] : setters()) out.push_back(k);
  return out;
}

void RunConfig::validate() const {
  rates.validate();
  gravity.validate();
  if (scenario.partition_key != "subregion" && scenario.partition_key != "country") {
    throw ConfigError(fmt::format("unknown partition key '{}'", scenario.partition_key));
  }
  if (!(zones.female_share_default >= 0.0 && zones.female_share_default <= 1.0)) {
    throw ConfigError("zones.female_share_default must lie in [0, 1]");
  }
  if (render_classes < 2) throw ConfigError("render.classes must be >= 2");
  flowmap::validate_breaks(render_breaks);
}

RunConfig load_run_config(const std::string& path) {
  const std::string text = io::read_file(path);
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ConfigError(fmt::format("'{}' is not valid JSON", path));
  RunConfig config;
  config.apply_json(doc);
  return config;
}

}  // namespace odflow
