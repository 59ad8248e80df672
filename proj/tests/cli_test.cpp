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

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "odflow/io.hpp"
#include "odflow/metrics.hpp"
#include "test_support.hpp"

namespace odflow::cli {
namespace {

namespace fs = std::filesystem;
using odflow::testing::data_path;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("odflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  const std::string zones_ = data_path("zones_paget_sud.csv").string();
  fs::path dir_;
};

TEST_F(CliTest, ValidateFixture) {
  const Result r = call({"validate", "--zones", zones_});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("OK: 26 zones"), std::string::npos);
}

TEST_F(CliTest, ValidateReportsEveryProblem) {
  io::write_file(path("bad.csv"),
                 "code,name,country,subregion,lat,lon,pop_female,pop_male,kindergarten,primary_school,"
                 "secondary_school,hospital,market\n"
                 "A,One,X,S,12.5,-14.0,10,10,0,0,0,0,0\n"
                 "B,Two,X,S,95.0,-14.0,10,10,0,0,0,0,0\n"
                 "C,Three,X,S,12.5,-14.0,-4,10,0,0,0,0,0\n");
  const Result r = call({"validate", "--zones", path("bad.csv")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.out.find("line 3"), std::string::npos);
  EXPECT_NE(r.out.find("line 4"), std::string::npos);
  EXPECT_EQ(r.err.rfind("ERROR: ", 0), 0u);
}

TEST_F(CliTest, UsageErrors) {
  Result r = call({"compute", "--zones", zones_});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.err.rfind("ERROR: usage:", 0), 0u);
  r = call({"frobnicate"});
  EXPECT_EQ(r.code, kExitUsage);
  r = call({});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(CliTest, RuntimeErrorIsOneLine) {
  const Result r = call({"compute", "--zones", zones_, "--out", path("o"), "--beta", "-1"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_EQ(r.err.rfind("ERROR: ", 0), 0u);
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST_F(CliTest, ComputeBothScenariosThenCompare) {
  ASSERT_EQ(call({"compute", "--zones", zones_, "--scenario", "barrier", "--out", path("barrier")}).code, kExitOk);
  ASSERT_EQ(call({"compute", "--zones", zones_, "--scenario", "connected", "--out", path("connected")}).code,
            kExitOk);
  for (const char* f : {"od_kindergarten.csv", "od_primary_school.csv", "od_secondary_school.csv",
                        "od_hospital.csv", "od_market.csv", "od_aggregate.csv", "stranded.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "connected" / f)) << f;
  }
  const ODMatrix without = io::read_od_csv(path("barrier/od_aggregate.csv"));
  const ODMatrix with = io::read_od_csv(path("connected/od_aggregate.csv"));
  EXPECT_GE(total_trips(with), total_trips(without));
  for (std::size_t i = 0; i < with.size(); ++i) {
    double rw = 0.0, ro = 0.0;
    for (std::size_t j = 0; j < with.size(); ++j) {
      rw += with.values(i, j);
      ro += without.values(i, j);
    }
    // Rounding each cell can move a row total by at most n/2.
    EXPECT_GE(rw + static_cast<double>(with.size()), ro) << with.zone_codes[i];
  }

  // Markets only exist on one side, so the other side strands its market trips.
  const std::string stranded = io::read_file(path("barrier/stranded.csv"));
  EXPECT_NE(stranded.find("market,P,"), std::string::npos);
  EXPECT_EQ(io::read_file(path("connected/stranded.csv")), "purpose,code,lost_trips\n");

  const Result r = call({"compare", "--without", path("barrier/od_aggregate.csv"), "--with",
                         path("connected/od_aggregate.csv"), "--zones", zones_});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("delta: "), std::string::npos);
}

TEST_F(CliTest, ComputeIsDeterministic) {
  ASSERT_EQ(call({"compute", "--zones", zones_, "--out", path("a")}).code, kExitOk);
  ASSERT_EQ(call({"compute", "--zones", zones_, "--out", path("b")}).code, kExitOk);
  EXPECT_EQ(io::read_file(path("a/od_aggregate.csv")), io::read_file(path("b/od_aggregate.csv")));
}

TEST_F(CliTest, CompareFixtures) {
  const Result r = call({"compare", "--without", data_path("od_without.csv").string(), "--with",
                         data_path("od_with.csv").string(), "--zones", zones_});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("total_without: 1371283\n"), std::string::npos);
  EXPECT_NE(r.out.find("total_with: 1657493\n"), std::string::npos);
  EXPECT_NE(r.out.find("delta: 286210\n"), std::string::npos);

  const Result j = call({"compare", "--without", data_path("od_without.csv").string(), "--with",
                         data_path("od_with.csv").string(), "--zones", zones_, "--json"});
  ASSERT_EQ(j.code, kExitOk);
  const nlohmann::json doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["delta"], 286210.0);
  EXPECT_EQ(doc["per_zone_row_deltas"]["A"], 0.0);
}

TEST_F(CliTest, DemandTable) {
  const Result r = call({"demand", "--zones", zones_, "--set", "rates.market_days=26"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("code,kindergarten,primary_school,secondary_school,hospital,market,total\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n' ? 1 : 0;
  EXPECT_EQ(lines, 27u);
}

TEST_F(CliTest, RenderAndExport) {
  Result r = call({"render", "--od", data_path("od_with.csv").string(), "--zones", zones_, "--out",
                   path("m.svg"), "--geojson", path("m.geojson"), "--shared-with",
                   data_path("od_without.csv").string(), "--min-flow", "1000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const odflow::flowmap::RenderSpec spec = odflow::testing::golden_render_spec();
  const io::ZoneTable t = odflow::testing::fixture_zones();
  const ODMatrix with = io::read_od_csv(data_path("od_with.csv"));
  EXPECT_EQ(io::read_file(path("m.svg")), odflow::flowmap::render_svg(with, t.zones, spec));
  EXPECT_EQ(io::read_file(path("m.geojson")), odflow::flowmap::render_geojson(with, t.zones, spec));

  r = call({"render", "--od", data_path("od_with.csv").string(), "--zones", zones_, "--out", path("x.svg"),
            "--breaks", "300,100"});
  EXPECT_EQ(r.code, kExitError);

  r = call({"export-flows", "--od", data_path("od_with.csv").string(), "--zones", zones_, "--out-dir",
            path("ex"), "--min-flow", "1000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::size_t expected = 0;
  for (double v : with.values.values()) expected += v >= 1000.0 ? 1 : 0;
  EXPECT_NE(r.out.find("flows: " + std::to_string(expected) + "\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "ex" / "nodes.csv"));
}

TEST_F(CliTest, CalibrateRecoversSyntheticBeta) {
  ASSERT_EQ(call({"compute", "--zones", zones_, "--beta", "1.3", "--out", path("syn")}).code, kExitOk);
  const Result r = call({"calibrate", "--zones", zones_, "--observed", path("syn/od_aggregate.csv"),
                         "--range", "0.5:3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto pos = r.out.find("beta_hat: ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(pos + 10)), 1.3, 0.02);
}

}  // namespace
}  // namespace odflow::cli
