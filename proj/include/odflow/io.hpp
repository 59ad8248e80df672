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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odflow/demand.hpp"
#include "odflow/gravity.hpp"

namespace odflow::io {

struct ZoneTable {
  std::vector<Zone> zones;  // file order, defines matrix orientation
  std::string source_path;
  std::vector<std::string> warnings;
};

struct ZoneLoadOptions {
  // Female share used to split a pop_total column.
  double female_share_default = 0.5;
};

// Every problem found in a zone file, with the table built from the rows
// that parsed.
struct ZoneParseResult {
  ZoneTable table;
  std::vector<std::string> errors;

  bool ok() const { return errors.empty(); }
};

// Never throws on content problems; collects one diagnostic per bad row/cell.
ZoneParseResult parse_zones(std::istream& in, std::string_view source,
                            const ZoneLoadOptions& options = {});

// Throws ValidationError carrying the first diagnostic (and the error count).
ZoneTable read_zones(std::istream& in, std::string_view source, const ZoneLoadOptions& options = {});
ZoneTable load_zones(const std::filesystem::path& path, const ZoneLoadOptions& options = {});

// Square CSV with "O\D" in the corner, zone codes along the first row and
// column, and cells rounded half away from zero to integers.
std::string format_od_csv(const ODMatrix& m);
void write_od_csv(const ODMatrix& m, const std::filesystem::path& path);

// Rows may appear in any order but must cover exactly the header codes; the
// result is in header order with purpose "aggregate" and an empty scenario.
ODMatrix parse_od_csv(std::istream& in, std::string_view source);
ODMatrix read_od_csv(const std::filesystem::path& path);

// Node and flow tables in the two-file layout flow-map tools consume.
struct FlowInterchange {
  std::string nodes_csv;  // Code,Name,Lat,Lon
  std::string flows_csv;  // Origin,Dest,Magnitude
  std::size_t flow_rows = 0;
};

// Lists every zone, and every cell (diagonal included) whose rounded value
// is >= min_flow, in origin-major order.
FlowInterchange export_flow_interchange(const ODMatrix& m, std::span<const Zone> zones,
                                        double min_flow);

// Writes nodes.csv and flows.csv into dir, creating it if needed.
void write_flow_interchange(const FlowInterchange& flows, const std::filesystem::path& dir);

// Plain-text helpers shared with the CLI.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_field(std::string_view value);

}  // namespace odflow::io
