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

#include "odflow/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "odflow/error.hpp"

namespace odflow::io {
namespace {

constexpr std::string_view kCorner = "O\\D";

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::int64_t rounded(double v) { return static_cast<std::int64_t>(std::round(v)); }

const std::vector<std::string_view>& required_text_columns() {
  static const std::vector<std::string_view> cols = {"code", "name", "country", "subregion", "lat", "lon"};
  return cols;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(fmt::format("write to '{}' failed", path.string()));
}

ZoneParseResult parse_zones(std::istream& in, std::string_view source, const ZoneLoadOptions& options) {
  if (!(options.female_share_default >= 0.0 && options.female_share_default <= 1.0)) {
    throw ConfigError(
        fmt::format("female_share_default = {} outside [0, 1]", options.female_share_default));
  }

  ZoneParseResult result;
  result.table.source_path = std::string(source);
  auto& errors = result.errors;
  auto& warnings = result.table.warnings;

  std::string line;
  if (!next_line(in, line)) {
    errors.push_back(fmt::format("{}: empty file, expected a header row", source));
    return result;
  }
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

  const std::vector<std::string> header = split_csv_line(line);
  std::map<std::string, std::size_t, std::less<>> column;
  for (std::size_t k = 0; k < header.size(); ++k) {
    const std::string name(trim(header[k]));
    if (!column.emplace(name, k).second) {
      errors.push_back(fmt::format("line 1: duplicate column '{}'", name));
    }
  }

  const bool has_pair = column.contains("pop_female") && column.contains("pop_male");
  const bool has_total = column.contains("pop_total");
  for (std::string_view col : required_text_columns()) {
    if (!column.contains(col)) errors.push_back(fmt::format("line 1: missing required column '{}'", col));
  }
  for (Purpose p : kAllPurposes) {
    if (!column.contains(purpose_name(p))) {
      errors.push_back(fmt::format("line 1: missing required column '{}'", purpose_name(p)));
    }
  }
  if (!has_pair && !has_total) {
    errors.push_back("line 1: missing required columns 'pop_female' and 'pop_male' (or 'pop_total')");
  }
  if (!errors.empty()) return result;

  std::set<std::string, std::less<>> known = {"pop_female", "pop_male", "pop_total"};
  for (std::string_view col : required_text_columns()) known.emplace(col);
  for (Purpose p : kAllPurposes) known.emplace(purpose_name(p));
  for (const auto& [name, idx] : column) {
    if (!known.contains(name)) warnings.push_back(fmt::format("line 1: ignoring unknown column '{}'", name));
  }
  if (has_pair && has_total) warnings.push_back("line 1: ignoring 'pop_total', sex-split columns present");

  std::set<std::string, std::less<>> codes;
  for (int line_no = 2; next_line(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      errors.push_back(
          fmt::format("line {}: expected {} fields, got {}", line_no, header.size(), fields.size()));
      continue;
    }
    const auto field = [&](std::string_view col) { return trim(fields[column.find(col)->second]); };

    bool row_ok = true;
    const auto count = [&](std::string_view col) -> std::int64_t {
      const auto v = parse_int(field(col));
      if (!v) {
        errors.push_back(
            fmt::format("line {}: column '{}': '{}' is not an integer", line_no, col, field(col)));
        row_ok = false;
        return 0;
      }
      if (*v < 0) {
        errors.push_back(fmt::format("line {}: column '{}': negative count {}", line_no, col, *v));
        row_ok = false;
        return 0;
      }
      return *v;
    };

    Zone z;
    z.code = std::string(field("code"));
    z.name = std::string(field("name"));
    z.country = std::string(field("country"));
    z.subregion = std::string(field("subregion"));
    if (z.code.empty()) {
      errors.push_back(fmt::format("line {}: empty zone code", line_no));
      row_ok = false;
    } else if (!codes.insert(z.code).second) {
      errors.push_back(fmt::format("line {}: duplicate zone code '{}'", line_no, z.code));
      row_ok = false;
    }

    try {
      z.coord = geo::parse_dm(field("lat"), field("lon"));
    } catch (const Error& e) {
      errors.push_back(fmt::format("line {}: {}", line_no, e.what()));
      row_ok = false;
    }

    if (has_pair) {
      z.pop_female = count("pop_female");
      z.pop_male = count("pop_male");
    } else {
      const std::int64_t total = count("pop_total");
      z.pop_female = rounded(static_cast<double>(total) * options.female_share_default);
      z.pop_male = total - z.pop_female;
      warnings.push_back(fmt::format("line {}: zone '{}' has pop_total only, split with female share {}",
                                     line_no, z.code, options.female_share_default));
    }
    for (Purpose p : kAllPurposes) z.facility_count(p) = count(purpose_name(p));

    if (row_ok) result.table.zones.push_back(std::move(z));
  }
  return result;
}

ZoneTable read_zones(std::istream& in, std::string_view source, const ZoneLoadOptions& options) {
  ZoneParseResult result = parse_zones(in, source, options);
  if (!result.ok()) {
    std::string msg = fmt::format("{}: {}", source, result.errors.front());
    if (result.errors.size() > 1) msg += fmt::format(" (and {} more)", result.errors.size() - 1);
    throw ValidationError(msg);
  }
  return std::move(result.table);
}

ZoneTable load_zones(const std::filesystem::path& path, const ZoneLoadOptions& options) {
  std::istringstream in(read_file(path));
  return read_zones(in, path.string(), options);
}

std::string format_od_csv(const ODMatrix& m) {
  if (m.values.size() != m.size()) throw ContractError("matrix does not match its zone list");
  std::string out(kCorner);
  for (const std::string& code : m.zone_codes) out += "," + code;
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.zone_codes[i];
    for (double v : m.values.row(i)) out += fmt::format(",{}", rounded(v));
    out += '\n';
  }
  return out;
}

void write_od_csv(const ODMatrix& m, const std::filesystem::path& path) {
  write_file(path, format_od_csv(m));
}

ODMatrix parse_od_csv(std::istream& in, std::string_view source) {
  std::string line;
  if (!next_line(in, line)) throw ParseError(fmt::format("{}: empty OD file", source));
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

  const std::vector<std::string> header = split_csv_line(line);
  if (trim(header.front()) != kCorner) {
    throw ParseError(fmt::format("{}: row 1, column 1: expected '{}', found '{}'", source, kCorner,
                                 header.front()));
  }
  ODMatrix m;
  m.purpose = std::string(kAggregatePurpose);
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t k = 1; k < header.size(); ++k) {
    std::string code(trim(header[k]));
    if (code.empty()) throw ParseError(fmt::format("{}: row 1, column {}: empty zone code", source, k + 1));
    if (!index.emplace(code, k - 1).second) {
      throw ParseError(fmt::format("{}: row 1, column {}: duplicate zone code '{}'", source, k + 1, code));
    }
    m.zone_codes.push_back(std::move(code));
  }
  const std::size_t n = m.zone_codes.size();
  m.values = SquareMatrix(n);

  std::vector<bool> seen(n, false);
  std::size_t rows = 0;
  for (int row_no = 2; next_line(in, line); ++row_no) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != n + 1) {
      throw ParseError(fmt::format("{}: row {}: expected {} cells, got {} (matrix must be square)",
                                   source, row_no, n + 1, fields.size()));
    }
    const std::string_view code = trim(fields.front());
    const auto it = index.find(code);
    if (it == index.end()) {
      throw ParseError(fmt::format("{}: row {}, column 1: unknown zone code '{}'", source, row_no, code));
    }
    const std::size_t i = it->second;
    if (seen[i]) {
      throw ParseError(fmt::format("{}: row {}, column 1: repeated origin '{}'", source, row_no, code));
    }
    seen[i] = true;
    ++rows;
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = parse_number(fields[j + 1]);
      if (!v) {
        throw ParseError(fmt::format("{}: row {}, column {}: '{}' is not a number", source, row_no,
                                     j + 2, fields[j + 1]));
      }
      if (*v < 0.0) {
        throw ParseError(fmt::format("{}: row {}, column {}: negative flow {}", source, row_no, j + 2,
                                     fields[j + 1]));
      }
      m.values(i, j) = *v;
    }
  }
  if (rows != n) {
    throw ParseError(fmt::format("{}: {} origin rows for {} destination columns (matrix must be square)",
                                 source, rows, n));
  }
  return m;
}

ODMatrix read_od_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return parse_od_csv(in, path.string());
}

FlowInterchange export_flow_interchange(const ODMatrix& m, std::span<const Zone> zones, double min_flow) {
  if (!(min_flow >= 0.0)) throw RangeError(fmt::format("min_flow = {} must be >= 0", min_flow));
  std::set<std::string_view> known;
  for (const Zone& z : zones) known.insert(z.code);
  for (const std::string& code : m.zone_codes) {
    if (!known.contains(code)) {
      throw ContractError(fmt::format("matrix zone '{}' is not in the zone table", code));
    }
  }

  FlowInterchange out;
  out.nodes_csv = "Code,Name,Lat,Lon\n";
  for (const Zone& z : zones) {
    out.nodes_csv += fmt::format("{},{},{:.6f},{:.6f}\n", csv_field(z.code), csv_field(z.name),
                                 z.coord.lat, z.coord.lon);
  }
  out.flows_csv = "Origin,Dest,Magnitude\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      const std::int64_t v = rounded(m.values(i, j));
      if (static_cast<double>(v) < min_flow) continue;
      out.flows_csv += fmt::format("{},{},{}\n", csv_field(m.zone_codes[i]), csv_field(m.zone_codes[j]), v);
      ++out.flow_rows;
    }
  }
  return out;
}

void write_flow_interchange(const FlowInterchange& flows, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "nodes.csv", flows.nodes_csv);
  write_file(dir / "flows.csv", flows.flows_csv);
}

}  // namespace odflow::io
