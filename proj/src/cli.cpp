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

#include "odflow/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "odflow/calibrate.hpp"
#include "odflow/config.hpp"
#include "odflow/error.hpp"
#include "odflow/flowmap.hpp"
#include "odflow/gravity.hpp"
#include "odflow/io.hpp"
#include "odflow/metrics.hpp"

namespace odflow::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Common {
  std::string config_path;
  std::vector<std::string> assignments;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--config", common.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--set", common.assignments, "Override a config key, e.g. rates.market_days=26");
}

RunConfig build_config(const Common& common) {
  RunConfig config = common.config_path.empty() ? RunConfig{} : load_run_config(common.config_path);
  for (const std::string& a : common.assignments) config.apply_assignment(a);
  return config;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", what, text));
  }
  return v;
}

std::vector<double> parse_breaks(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma), "--breaks"));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// Shortest round-trip form, so integral totals print without decimals.
std::string number(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : "nan";
  return fmt::format("{}", v);
}

std::string fraction(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : "nan";
  return fmt::format("{:.6f}", v);
}

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// --- subcommands ---------------------------------------------------------

struct ValidateArgs {
  Common common;
  std::string zones;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig config = build_config(a.common);
  std::istringstream in(io::read_file(a.zones));
  const io::ZoneParseResult result = io::parse_zones(in, a.zones, config.zones);
  for (const std::string& w : result.table.warnings) out << "warning: " << a.zones << ": " << w << '\n';
  for (const std::string& e : result.errors) out << a.zones << ": " << e << '\n';
  if (!result.ok()) {
    err << fmt::format("ERROR: {}: {} problem(s) found\n", a.zones, result.errors.size());
    return kExitError;
  }
  out << fmt::format("OK: {} zones in {}\n", result.table.zones.size(), a.zones);
  return kExitOk;
}

struct DemandArgs {
  Common common;
  std::string zones;
};

int cmd_demand(const DemandArgs& a, std::ostream& out) {
  const RunConfig config = build_config(a.common);
  config.validate();
  const io::ZoneTable table = io::load_zones(a.zones, config.zones);

  std::vector<ProductionVector> prods;
  for (Purpose p : kAllPurposes) prods.push_back(productions(table.zones, config.rates, p));

  out << "code";
  for (Purpose p : kAllPurposes) out << ',' << purpose_name(p);
  out << ",total\n";
  for (std::size_t i = 0; i < table.zones.size(); ++i) {
    out << io::csv_field(table.zones[i].code);
    double total = 0.0;
    for (const ProductionVector& pv : prods) {
      out << fmt::format(",{:.3f}", pv.values[i]);
      total += pv.values[i];
    }
    out << fmt::format(",{:.3f}\n", total);
  }
  return kExitOk;
}

struct ComputeArgs {
  Common common;
  std::string zones;
  std::optional<std::string> scenario;
  std::optional<double> beta;
  std::optional<double> school_days;
  std::optional<double> market_days;
  std::string out_dir;
};

int cmd_compute(const ComputeArgs& a, std::ostream& out) {
  RunConfig config = build_config(a.common);
  if (a.scenario) config.scenario.mode = parse_scenario_mode(*a.scenario);
  if (a.beta) config.gravity.beta = *a.beta;
  if (a.school_days) config.rates.school_days = *a.school_days;
  if (a.market_days) config.rates.market_days = *a.market_days;
  config.validate();

  const io::ZoneTable table = io::load_zones(a.zones, config.zones);
  const ScenarioRun run = run_scenario(table.zones, config.rates, config.gravity, config.scenario);

  fs::create_directories(a.out_dir);
  for (const Distribution& d : run.per_purpose) {
    io::write_od_csv(round_matrix(d.od), fs::path(a.out_dir) / fmt::format("od_{}.csv", d.od.purpose));
  }
  io::write_od_csv(round_matrix(run.aggregate), fs::path(a.out_dir) / "od_aggregate.csv");

  const std::vector<StrandedProduction> stranded = run.stranded();
  std::string report = "purpose,code,lost_trips\n";
  double lost = 0.0;
  for (const StrandedProduction& s : stranded) {
    report += fmt::format("{},{},{:.3f}\n", s.purpose, io::csv_field(s.zone_code), s.lost_trips);
    lost += s.lost_trips;
  }
  io::write_file(fs::path(a.out_dir) / "stranded.csv", report);

  out << fmt::format("scenario: {}\n", config.scenario.label());
  out << fmt::format("beta: {}\n", number(config.gravity.beta));
  out << fmt::format("zones: {}\n", table.zones.size());
  out << fmt::format("total_trips: {:.3f}\n", total_trips(run.aggregate));
  out << fmt::format("stranded_trips: {:.3f}\n", lost);
  out << fmt::format("stranded_entries: {}\n", stranded.size());
  out << fmt::format("output: {}\n", a.out_dir);
  return kExitOk;
}

struct CompareArgs {
  Common common;
  std::string without;
  std::string with;
  std::string zones;
  bool json = false;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const RunConfig config = build_config(a.common);
  config.validate();
  const io::ZoneTable table = io::load_zones(a.zones, config.zones);
  const ODMatrix without = io::read_od_csv(a.without);
  const ODMatrix with = io::read_od_csv(a.with);
  const ScenarioComparison cmp = scenario_delta(without, with);

  // Country labels are optional in zone tables; report the share as
  // unavailable instead of failing the whole comparison.
  const auto border_share = [&](const ODMatrix& m) -> std::optional<double> {
    try {
      return cross_border_share(m, table.zones, config.include_intrazonal);
    } catch (const ConfigError&) {
      return std::nullopt;
    }
  };
  const std::optional<double> border_without = border_share(without);
  const std::optional<double> border_with = border_share(with);
  const DirectionalShares dir_without = directional_shares(without, table.zones);
  const DirectionalShares dir_with = directional_shares(with, table.zones);

  if (a.json) {
    Json doc;
    doc["total_without"] = cmp.total_without;
    doc["total_with"] = cmp.total_with;
    doc["delta"] = cmp.delta;
    doc["increase_vs_without"] = json_number(cmp.increase_vs_without);
    doc["increase_vs_with"] = json_number(cmp.increase_vs_with);
    doc["cross_border_share_without"] = border_without ? Json(*border_without) : Json(nullptr);
    doc["cross_border_share_with"] = border_with ? Json(*border_with) : Json(nullptr);
    const auto dir_json = [](const DirectionalShares& d) {
      Json j;
      j["west_to_east"] = d.west_to_east;
      j["east_to_west"] = d.east_to_west;
      j["north_to_south"] = d.north_to_south;
      j["south_to_north"] = d.south_to_north;
      return j;
    };
    doc["directional_without"] = dir_json(dir_without);
    doc["directional_with"] = dir_json(dir_with);
    Json rows = Json::object();
    for (std::size_t i = 0; i < with.size(); ++i) rows[with.zone_codes[i]] = cmp.per_zone_row_deltas[i];
    doc["per_zone_row_deltas"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  const auto opt = [](const std::optional<double>& v) { return v ? fraction(*v) : std::string("n/a"); };
  out << "total_without: " << number(cmp.total_without) << '\n';
  out << "total_with: " << number(cmp.total_with) << '\n';
  out << "delta: " << number(cmp.delta) << '\n';
  out << "increase_vs_without: " << fraction(cmp.increase_vs_without) << '\n';
  out << "increase_vs_with: " << fraction(cmp.increase_vs_with) << '\n';
  out << "cross_border_share_without: " << opt(border_without) << '\n';
  out << "cross_border_share_with: " << opt(border_with) << '\n';
  for (const auto& [label, d] : {std::pair{"without", &dir_without}, std::pair{"with", &dir_with}}) {
    out << fmt::format("west_to_east_{}: {}\n", label, fraction(d->west_to_east));
    out << fmt::format("east_to_west_{}: {}\n", label, fraction(d->east_to_west));
    out << fmt::format("north_to_south_{}: {}\n", label, fraction(d->north_to_south));
    out << fmt::format("south_to_north_{}: {}\n", label, fraction(d->south_to_north));
  }
  return kExitOk;
}

struct CalibrateArgs {
  Common common;
  std::string zones;
  std::string observed;
  std::optional<std::string> scenario;
  std::optional<std::string> range;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out) {
  RunConfig config = build_config(a.common);
  if (a.scenario) config.scenario.mode = parse_scenario_mode(*a.scenario);
  if (a.range) {
    const auto colon = a.range->find(':');
    if (colon == std::string::npos) throw ConfigError(fmt::format("--range '{}' must look like lo:hi", *a.range));
    config.calibrate_range_lo = parse_double(std::string_view(*a.range).substr(0, colon), "--range");
    config.calibrate_range_hi = parse_double(std::string_view(*a.range).substr(colon + 1), "--range");
  }
  config.validate();

  const io::ZoneTable table = io::load_zones(a.zones, config.zones);
  const ODMatrix observed = io::read_od_csv(a.observed);
  std::vector<ProductionVector> prods;
  std::vector<AttractionVector> attrs;
  for (Purpose p : kAllPurposes) {
    prods.push_back(productions(table.zones, config.rates, p));
    attrs.push_back(attraction_vector(table.zones, p));
  }
  CalibrationOptions options;
  options.range_lo = config.calibrate_range_lo;
  options.range_hi = config.calibrate_range_hi;
  options.min_distance_km = config.gravity.min_distance_km;
  const CalibrationResult r = calibrate_beta(observed, table.zones, prods, attrs, config.scenario, options);

  out << fmt::format("beta_hat: {:.6f}\n", r.beta_hat);
  out << fmt::format("objective: {}\n", number(r.objective));
  out << fmt::format("evaluations: {}\n", r.evaluations);
  out << fmt::format("range: {}:{}\n", number(r.range_lo), number(r.range_hi));
  return kExitOk;
}

struct RenderArgs {
  Common common;
  std::string od;
  std::string zones;
  std::string out_svg;
  std::optional<std::string> geojson;
  std::optional<std::string> breaks;
  std::optional<double> min_flow;
  std::optional<std::string> shared_with;
};

flowmap::RenderSpec render_spec_for(const RunConfig& config, const ODMatrix& m, const ODMatrix* other,
                                    const std::optional<std::string>& breaks_flag) {
  std::vector<double> breaks = config.render_breaks;
  if (breaks_flag) breaks = parse_breaks(*breaks_flag);
  if (breaks.empty()) breaks = flowmap::default_breaks(m, other ? *other : m, config.render_classes);

  flowmap::RenderSpec spec = config.render_base;
  const flowmap::ClassRamp ramp = flowmap::class_ramp(static_cast<int>(breaks.size()) + 1);
  spec.breaks = std::move(breaks);
  spec.flow_colors = config.render_flow_colors.empty() ? ramp.colors : config.render_flow_colors;
  spec.widths = config.render_widths.empty() ? ramp.widths : config.render_widths;
  return spec;
}

int cmd_render(const RenderArgs& a, std::ostream& out) {
  RunConfig config = build_config(a.common);
  if (a.min_flow) config.render_base.min_flow = *a.min_flow;
  config.validate();

  const io::ZoneTable table = io::load_zones(a.zones, config.zones);
  const ODMatrix m = io::read_od_csv(a.od);
  std::optional<ODMatrix> other;
  if (a.shared_with) other = io::read_od_csv(*a.shared_with);
  const flowmap::RenderSpec spec = render_spec_for(config, m, other ? &*other : nullptr, a.breaks);

  io::write_file(a.out_svg, flowmap::render_svg(m, table.zones, spec));
  if (a.geojson) io::write_file(*a.geojson, flowmap::render_geojson(m, table.zones, spec));

  const std::vector<flowmap::VisibleFlow> flows = flowmap::visible_flows(m, spec);
  out << fmt::format("visible_flows: {}\n", flows.size());
  out << "breaks:";
  for (std::size_t k = 0; k < spec.breaks.size(); ++k) out << (k ? "," : " ") << number(spec.breaks[k]);
  out << '\n';
  out << fmt::format("svg: {}\n", a.out_svg);
  if (a.geojson) out << fmt::format("geojson: {}\n", *a.geojson);
  return kExitOk;
}

struct ExportArgs {
  Common common;
  std::string od;
  std::string zones;
  std::string out_dir;
  double min_flow = 1.0;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
  const RunConfig config = build_config(a.common);
  config.validate();
  const io::ZoneTable table = io::load_zones(a.zones, config.zones);
  const ODMatrix m = io::read_od_csv(a.od);
  const io::FlowInterchange fi = io::export_flow_interchange(m, table.zones, a.min_flow);
  io::write_flow_interchange(fi, a.out_dir);
  out << fmt::format("nodes: {}\n", table.zones.size());
  out << fmt::format("flows: {}\n", fi.flow_rows);
  out << fmt::format("output: {}\n", a.out_dir);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  const std::string error_tag = color ? "\x1b[31mERROR:\x1b[0m" : "ERROR:";

  CLI::App app{"Gravity-model travel demand and flow maps", "odflow"};
  app.require_subcommand(1);

  ValidateArgs validate;
  auto* s_validate = app.add_subcommand("validate", "Check a zone table");
  add_common(s_validate, validate.common);
  s_validate->add_option("--zones", validate.zones, "Zone CSV")->required();

  DemandArgs demand;
  auto* s_demand = app.add_subcommand("demand", "Yearly productions per zone and purpose");
  add_common(s_demand, demand.common);
  s_demand->add_option("--zones", demand.zones, "Zone CSV")->required();

  ComputeArgs compute;
  auto* s_compute = app.add_subcommand("compute", "Distribute trips and write OD matrices");
  add_common(s_compute, compute.common);
  s_compute->add_option("--zones", compute.zones, "Zone CSV")->required();
  s_compute->add_option("--scenario", compute.scenario, "barrier or connected")
      ->check(CLI::IsMember({"barrier", "connected"}));
  s_compute->add_option("--beta", compute.beta, "Distance-decay exponent");
  s_compute->add_option("--school-days", compute.school_days, "School days per year");
  s_compute->add_option("--market-days", compute.market_days, "Market days per year");
  s_compute->add_option("--out", compute.out_dir, "Output directory")->required();

  CompareArgs compare;
  auto* s_compare = app.add_subcommand("compare", "Compare two scenario OD matrices");
  add_common(s_compare, compare.common);
  s_compare->add_option("--without", compare.without, "OD CSV without the link")->required();
  s_compare->add_option("--with", compare.with, "OD CSV with the link")->required();
  s_compare->add_option("--zones", compare.zones, "Zone CSV")->required();
  s_compare->add_flag("--json", compare.json, "Emit JSON");

  CalibrateArgs calibrate;
  auto* s_calibrate = app.add_subcommand("calibrate", "Fit beta to an observed OD matrix");
  add_common(s_calibrate, calibrate.common);
  s_calibrate->add_option("--zones", calibrate.zones, "Zone CSV")->required();
  s_calibrate->add_option("--observed", calibrate.observed, "Observed OD CSV")->required();
  s_calibrate->add_option("--scenario", calibrate.scenario, "barrier or connected")
      ->check(CLI::IsMember({"barrier", "connected"}));
  s_calibrate->add_option("--range", calibrate.range, "Search range lo:hi");

  RenderArgs render;
  auto* s_render = app.add_subcommand("render", "Draw a flow map");
  add_common(s_render, render.common);
  s_render->add_option("--od", render.od, "OD CSV")->required();
  s_render->add_option("--zones", render.zones, "Zone CSV")->required();
  s_render->add_option("--out", render.out_svg, "SVG output path")->required();
  s_render->add_option("--geojson", render.geojson, "GeoJSON output path");
  s_render->add_option("--breaks", render.breaks, "Class breaks b1,b2,...");
  s_render->add_option("--min-flow", render.min_flow, "Smallest drawn flow");
  s_render->add_option("--shared-with", render.shared_with,
                       "Second OD CSV whose cells also shape the default breaks");

  ExportArgs exporter;
  auto* s_export = app.add_subcommand("export-flows", "Write nodes.csv and flows.csv");
  add_common(s_export, exporter.common);
  s_export->add_option("--od", exporter.od, "OD CSV")->required();
  s_export->add_option("--zones", exporter.zones, "Zone CSV")->required();
  s_export->add_option("--out-dir", exporter.out_dir, "Output directory")->required();
  s_export->add_option("--min-flow", exporter.min_flow, "Smallest exported flow");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("odflow");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << error_tag << " usage: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (s_validate->parsed()) return cmd_validate(validate, out, err);
    if (s_demand->parsed()) return cmd_demand(demand, out);
    if (s_compute->parsed()) return cmd_compute(compute, out);
    if (s_compare->parsed()) return cmd_compare(compare, out);
    if (s_calibrate->parsed()) return cmd_calibrate(calibrate, out);
    if (s_render->parsed()) return cmd_render(render, out);
    if (s_export->parsed()) return cmd_export(exporter, out);
  } catch (const std::exception& e) {
    err << error_tag << ' ' << one_line(e.what()) << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace odflow::cli
