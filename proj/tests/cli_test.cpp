#include "lcover/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gtest/gtest.h"

namespace lcover::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lcover");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

TEST(CliConstructTest, ThirtyByFive) {
  const Result r = run_cli({"construct", "--n", "30", "--ell", "5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["n"], 30);
  EXPECT_EQ(j["ell"], 5);
  EXPECT_EQ(j["method"], "deterministic");
  EXPECT_GE(j["size"].get<int>(), 8);
  EXPECT_EQ(j["size"].get<std::size_t>(), j["slopes"].size());
  EXPECT_TRUE(j["stats"].contains("patch_count"));
  EXPECT_TRUE(j["stats"].contains("basis_kind"));
  const auto slopes = j["slopes"].get<std::vector<u64>>();
  EXPECT_TRUE(std::is_sorted(slopes.begin(), slopes.end()));
}

TEST(CliConstructTest, KeyOrderIsFixed) {
  const Result r = run_cli({"construct", "--n", "100", "--ell", "20", "--json"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("{\"n\":100,\"ell\":20,\"method\":\"deterministic\",\"size\":", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\"slopes\":["), std::string::npos);
  EXPECT_NE(r.out.find("\"stats\":{\"basis_kind\":"), std::string::npos);
}

TEST(CliConstructTest, Raw) {
  const Result r = run_cli({"construct", "--n", "7", "--ell", "6", "--raw"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "1\n");
}

TEST(CliConstructTest, BadArguments) {
  EXPECT_EQ(run_cli({"construct", "--n", "10", "--ell", "0"}).code, kUsage);
  EXPECT_EQ(run_cli({"construct", "--n", "10", "--ell", "10"}).code, kUsage);
  EXPECT_EQ(run_cli({"construct", "--n", "1", "--ell", "1"}).code, kUsage);
  EXPECT_EQ(run_cli({"construct", "--n", "10"}).code, kUsage);
  EXPECT_EQ(run_cli({"construct", "--n", "10", "--ell", "3", "--mode", "fast"}).code, kUsage);
  EXPECT_EQ(run_cli({"construct", "--n", "10", "--ell", "3", "--raw", "--json"}).code, kUsage);
  EXPECT_EQ(run_cli({"construct", "--n", "ten", "--ell", "3"}).code, kUsage);
  EXPECT_EQ(run_cli({"construct", "--n", "5000000000", "--ell", "3"}).code, kUsage);
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

TEST(CliConstructTest, SeededRunsAreByteIdentical) {
  for (const char* mode : {"det", "rand"}) {
    const std::vector<std::string> args = {"construct", "--n", "30030", "--ell", "500", "--mode", mode, "--seed", "9"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    ASSERT_EQ(a.code, kOk);
    EXPECT_EQ(a.out, b.out);
  }
  const Result s1 = run_cli({"construct", "--n", "30030", "--ell", "500", "--mode", "rand", "--seed", "1"});
  const Result s2 = run_cli({"construct", "--n", "30030", "--ell", "500", "--mode", "rand", "--seed", "2"});
  EXPECT_NE(s1.out, s2.out);
}

TEST(CliVerifyTest, Examples) {
  EXPECT_EQ(run_cli({"verify", "--n", "10", "--ell", "9", "--slopes", "1"}).code, kOk);
  const Result bad = run_cli({"verify", "--n", "10", "--ell", "3", "--slopes", "1,3,7"});
  EXPECT_EQ(bad.code, kNotCovering);
  const auto j = parse(bad.out);
  EXPECT_EQ(j["covered"], false);
  EXPECT_EQ(j["witnesses"], nlohmann::json::array({5, 8}));
  EXPECT_EQ(run_cli({"verify", "--n", "10", "--ell", "3", "--slopes", "1,x"}).code, kUsage);
}

TEST(CliVerifyTest, SlopeFiles) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "lcover_cli_test_good.txt";
  const auto bad = dir / "lcover_cli_test_bad.txt";
  std::ofstream(good) << "1 3,\n7\t9\n";
  std::ofstream(bad) << "1 3 seven\n";
  EXPECT_EQ(run_cli({"verify", "--n", "10", "--ell", "5", "--slopes", good.string()}).code, kOk);
  EXPECT_EQ(run_cli({"verify", "--n", "10", "--ell", "3", "--slopes", bad.string()}).code, kUsage);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST(CliVerifyTest, RoundTripsConstructOutput) {
  for (const auto& [n, ell] : std::vector<std::pair<int, int>>{{30, 5}, {1001, 17}, {65536, 300}, {99991, 1000}}) {
    for (const char* mode : {"det", "rand"}) {
      const Result c = run_cli({"construct", "--n", std::to_string(n), "--ell", std::to_string(ell), "--mode", mode, "--raw"});
      ASSERT_EQ(c.code, kOk);
      const Result v = run_cli({"verify", "--n", std::to_string(n), "--ell", std::to_string(ell), "--slopes", c.out});
      EXPECT_EQ(v.code, kOk) << n << " " << ell << " " << v.out;
    }
  }
}

TEST(ParseSlopesTest, Formats) {
  EXPECT_EQ(parse_slopes("1,2, 3\n4\t5"), (std::vector<u64>{1, 2, 3, 4, 5}));
  EXPECT_TRUE(parse_slopes("  \n").empty());
  EXPECT_THROW(parse_slopes("1;2"), ParseError);
  EXPECT_THROW(parse_slopes("-1"), ParseError);
  EXPECT_THROW(parse_slopes("99999999999999999999999"), ParseError);
}

TEST(CliAnalyzeTest, Examples) {
  const auto phi = parse(run_cli({"analyze", "phi", "--n", "30", "--ell", "5"}).out);
  EXPECT_EQ(phi["phi_rel"], 1);
  EXPECT_EQ(phi["phi"], 8);
  const auto cov = parse(run_cli({"analyze", "coverage", "--n", "12", "--ell", "5", "--y", "2"}).out);
  EXPECT_EQ(cov["count"], 2);
  const auto lb = parse(run_cli({"analyze", "lowerbound", "--k", "3"}).out);
  EXPECT_EQ(lb["n"], 30);
  EXPECT_EQ(lb["ell"], 5);
  EXPECT_EQ(lb["phi"], 8);
  EXPECT_EQ(lb["certificate"], 1);
  const auto basis = parse(run_cli({"analyze", "basis", "--n", "720720", "--ell", "500000"}).out);
  EXPECT_EQ(basis["verified"], true);
  EXPECT_EQ(run_cli({"analyze", "phi", "--n", "30", "--ell", "30"}).code, kUsage);
  EXPECT_EQ(run_cli({"analyze", "coverage", "--n", "12", "--ell", "5", "--y", "12"}).code, kUsage);
  EXPECT_EQ(run_cli({"analyze", "lowerbound", "--k", "0"}).code, kUsage);
  EXPECT_EQ(run_cli({"analyze", "lowerbound", "--k", "16"}).code, kUsage);
  EXPECT_EQ(run_cli({"analyze"}).code, kUsage);
}

TEST(ParseGridTest, Families) {
  EXPECT_EQ(parse_grid("primorial:3;ratio:6", 1), (std::vector<GridInstance>{{30, 5}}));
  EXPECT_EQ(parse_grid("prime:101;ratio:10;fixed:50", 1), (std::vector<GridInstance>{{101, 10}, {101, 50}}));
  EXPECT_EQ(parse_grid("power:2^10;sqrt", 1), (std::vector<GridInstance>{{1024, 32}}));
  // ceil(ln(1000)^5) is far above 1000: dropped.
  EXPECT_TRUE(parse_grid("prime:997;log5", 1).empty());
  EXPECT_EQ(parse_grid("prime:7;fixed:7;fixed:6", 1), (std::vector<GridInstance>{{7, 6}}));
  const auto r = parse_grid("random:20:16;ratio:4", 3);
  EXPECT_EQ(r.size(), 20u);
  for (const auto& g : r) {
    EXPECT_GE(g.n, 4u);
    EXPECT_LT(g.n, 1u << 16);
  }
  EXPECT_EQ(parse_grid("random:20:16;ratio:4", 3), r);
  EXPECT_NE(parse_grid("random:20:16;ratio:4", 4), r);
}

TEST(ParseGridTest, Errors) {
  for (const char* bad : {"", "primorial:3", "ratio:6", "prime:100;ratio:2", "power:2^x;ratio:2",
                          "primorial:16;ratio:2", "random:5;ratio:2", "ratio:0;prime:7", "cube:3;ratio:2"}) {
    EXPECT_THROW(parse_grid(bad, 1), ParseError) << bad;
  }
  EXPECT_EQ(run_cli({"bench", "--grid", "bogus"}).code, kUsage);
  EXPECT_EQ(run_cli({"bench", "--grid", "prime:7;ratio:2", "--modes", "fast"}).code, kUsage);
}

TEST(CliBenchTest, HeaderIsGolden) {
  EXPECT_STREQ(kCsvHeader, "n,ell,method,size,bound_ratio,wall_time_ms,basis_kind,patch_count,seed");
  const Result r = run_cli({"bench", "--grid", "primorial:3;ratio:6", "--modes", "det,rand", "--repeat", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].rfind("30,5,deterministic,", 0), 0u) << rows[0];
  EXPECT_EQ(rows[2].rfind("30,5,randomized,", 0), 0u) << rows[2];
  // Nine columns; deterministic rows leave the seed empty.
  for (const auto& row : rows) EXPECT_EQ(std::count(row.begin(), row.end(), ','), 8);
  EXPECT_EQ(rows[0].back(), ',');
  EXPECT_NE(rows[2].back(), ',');
}

TEST(CliBenchTest, RepeatsDifferOnlyInSeedSizeAndTime) {
  const std::vector<GridInstance> grid = {{1000, 50}, {4096, 100}};
  const auto records = run_bench(grid, {Mode::kRandomized}, 5, 1, ConstructConfig{});
  ASSERT_EQ(records.size(), 10u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& a = records[i - i % 5];
    const auto& b = records[i];
    EXPECT_EQ(a.n, b.n);
    EXPECT_EQ(a.ell, b.ell);
    EXPECT_EQ(a.method, b.method);
    EXPECT_EQ(a.basis_kind, b.basis_kind);
    EXPECT_GE(b.size, (b.n + b.ell) / (b.ell + 1));
    EXPECT_GT(b.bound_ratio, 0.0);
    EXPECT_FALSE(b.seed.empty());
  }
  EXPECT_NE(records[0].seed, records[1].seed);
}

TEST(CliBenchTest, JobsDoNotChangeOutput) {
  const auto grid = parse_grid("primorial:4;primorial:5;prime:1009;ratio:3;ratio:20", 1);
  ConstructConfig base;
  const auto one = run_bench(grid, {Mode::kDeterministic, Mode::kRandomized}, 1, 1, base);
  const auto four = run_bench(grid, {Mode::kDeterministic, Mode::kRandomized}, 1, 4, base);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].n, four[i].n);
    EXPECT_EQ(one[i].size, four[i].size);
    EXPECT_EQ(one[i].seed, four[i].seed);
  }
}

TEST(BoundRatioTest, Formula) {
  EXPECT_DOUBLE_EQ(bound_ratio(30, 5, 12), 12 / (6 * std::log(30.0)));
  EXPECT_DOUBLE_EQ(bound_ratio(2, 1, 1), 1 / 2.0);
}

TEST(CliTablesTest, WritesTables) {
  const auto dir = std::filesystem::temp_directory_path() / "lcover_cli_tables";
  std::filesystem::remove_all(dir);
  const Result r = run_cli({"oracle-tables", "--out", dir.string(), "--scale", "small"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "min_cover.tsv"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace lcover::cli
