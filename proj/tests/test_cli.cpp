#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rimap/cli.hpp"

namespace rimap {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rimap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "rimap");
    out_.str("");
    err_.str("");
    return cli::main_with_args(args, out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST_F(CliTest, GammaFactorizationStableExitsZero) {
  const auto csv = path("p1.csv");
  ASSERT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "-1", "--beta", "-2", "--law", "stable:p=2,c=1", "--out",
                 csv, "--threads", "1"}),
            0)
      << err_.str();
  const auto rows = lines(slurp(csv));
  ASSERT_GT(rows.size(), 1u);
  EXPECT_EQ(rows[0], kCsvHeader);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NE(rows[i].find(",true"), std::string::npos) << rows[i];

  const auto summary = nlohmann::json::parse(slurp(path("p1.summary.json")));
  EXPECT_EQ(summary["exit_code"], 0);
  EXPECT_EQ(summary["totals"]["failed"], 0);
  for (const auto& r : summary["reports"]) EXPECT_LE(r["max_abs_residual"].get<double>(), 1e-8);
}

TEST_F(CliTest, TailIdentityExitsZero) {
  EXPECT_EQ(run({"--command", "tail-identity", "--alpha", "-1", "--beta", "-2", "--out", path("t.csv")}), 0);
  EXPECT_EQ(lines(slurp(path("t.csv"))).size(), 6u);
}

TEST_F(CliTest, ViolatedPreconditionExitsThree) {
  EXPECT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "-2", "--beta", "-1", "--law", "stable:p=2", "--out",
                 path("x.csv")}),
            3);
  EXPECT_NE(err_.str().find("beta < alpha"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(path("x.csv")));
  EXPECT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "-1", "--beta", "-1", "--law", "stable:p=2", "--out",
                 path("x.csv")}),
            3);
}

TEST_F(CliTest, IncompleteOrMalformedConfigExitsThree) {
  const auto out = path("x.csv");
  EXPECT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "-1", "--beta", "-2", "--out", out}), 3);
  EXPECT_NE(err_.str().find("--law"), std::string::npos);
  EXPECT_EQ(run({"--command", "verify-beta-factorization", "--alpha", "-1", "--beta", "-2", "--law", "stable:p=2", "--out", out}),
            3);
  EXPECT_EQ(run({"--command", "no-such-command", "--out", out}), 3);
  EXPECT_EQ(run({"--out", out}), 3);
  EXPECT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "-1", "--beta", "-2", "--law", "stable:q=2", "--out", out}),
            3);
  EXPECT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "-1", "--beta", "-2", "--law", "weird:p=2", "--out", out}),
            3);
  EXPECT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "x", "--beta", "-2", "--law", "stable:p=2", "--out", out}),
            3);
  EXPECT_EQ(run({"--command", "verify-gamma-chain", "--alphas", "-1,-2,-3,-4,-5", "--law", "stable:p=2", "--out", out}), 3);
  EXPECT_EQ(run({"--command", "verify-beta-chain", "--alphas", "-1,-2", "--law", "stable:p=2", "--out", out}), 3);
  EXPECT_EQ(run({"--command", "simulate", "--alpha", "-1", "--law", "stable:p=2", "--out", out}), 3);
  EXPECT_EQ(run({"--command", "tail-identity", "--alpha", "-1", "--beta", "-2", "--law", "stable:p=2", "--out", out}),
            3);
  EXPECT_EQ(run({"--unknown-flag", "1"}), 3);
}

TEST_F(CliTest, UnwritableOutputExitsFour) {
  EXPECT_EQ(run({"--command", "tail-identity", "--alpha", "-1", "--beta", "-2", "--out", path("missing/dir/t.csv")}),
            4);
  EXPECT_EQ(run({"--config", path("missing.json")}), 4);
}

TEST_F(CliTest, DomainExclusionOnlyExitsTwo) {
  // p = 0.4 <= alpha = 0.5: the improper integral diverges at 0.
  EXPECT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "0.5", "--beta", "-1", "--law", "stable:p=0.4", "--y-grid",
                 "1", "--out", path("d.csv"), "--threads", "1"}),
            2)
      << out_.str() << err_.str();
  const auto summary = nlohmann::json::parse(slurp(path("d.summary.json")));
  EXPECT_EQ(summary["totals"]["outside_numeric_domain"], 3);
  EXPECT_EQ(summary["reports"][0]["status"], "outside numeric domain");
}

TEST_F(CliTest, ResidualFailureExitsOne) {
  EXPECT_EQ(run({"--command", "verify-gamma-factorization", "--alpha", "-1", "--beta", "-2", "--law",
                 "cpoisson:rate=1,atoms=-1@0.5;1@0.5", "--tol", "1e-17", "--out", path("f.csv")}),
            1);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  const auto cfg = path("run.json");
  std::ofstream(cfg) << R"({"command": "verify-beta-factorization", "alpha": -1, "beta": -2, "gamma": -3,
                           "law": ["cpoisson:rate=1,atoms=-1@0.5;1@0.5"], "y_grid": [0.5, 2], "tol": 1e-8,
                           "out": ")" + path("from_config.csv") + R"("})";
  ASSERT_EQ(run({"--config", cfg, "--threads", "1"}), 0) << err_.str();
  EXPECT_EQ(lines(slurp(path("from_config.csv"))).size(), 1u + 3u * 2u);
  // Inline flags win.
  ASSERT_EQ(run({"--config", cfg, "--y-grid", "1", "--out", path("inline.csv")}), 0) << err_.str();
  EXPECT_EQ(lines(slurp(path("inline.csv"))).size(), 1u + 3u);

  std::ofstream(path("bad.json")) << R"({"command": "verify-gamma-factorization", "colour": 1})";
  EXPECT_EQ(run({"--config", path("bad.json")}), 3);
  std::ofstream(path("broken.json")) << "{not json";
  EXPECT_EQ(run({"--config", path("broken.json")}), 3);
}

TEST_F(CliTest, SameConfigGivesIdenticalBytes) {
  const std::vector<std::string> base = {"--command", "simulate", "--alpha", "-1", "--law",
                                         "cpoisson:rate=1,atoms=-1@0.5;1@0.5", "--samples", "2000", "--seed", "5"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  };
  ASSERT_EQ(run(with({"--out", path("a.csv"), "--threads", "1"})), 0) << out_.str();
  ASSERT_EQ(run(with({"--out", path("b.csv"), "--threads", "3"})), 0) << out_.str();
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));

  const std::vector<std::string> p2 = {"--command", "verify-beta-factorization", "--alpha", "0.7", "--beta", "0.2",
                                       "--gamma", "-0.4", "--law", "stable:p=1.5"};
  auto a = p2;
  a.insert(a.end(), {"--out", path("c.csv"), "--threads", "1"});
  auto b = p2;
  b.insert(b.end(), {"--out", path("d.csv"), "--threads", "4"});
  ASSERT_EQ(run(a), 0) << out_.str();
  ASSERT_EQ(run(b), 0) << out_.str();
  EXPECT_EQ(slurp(path("c.csv")), slurp(path("d.csv")));
}

TEST_F(CliTest, CommuteAndChains) {
  EXPECT_EQ(run({"--command", "verify-commute", "--alpha", "-1", "--beta", "-2", "--law",
                 "cpoisson:rate=1,atoms=-1@0.5;1@0.5", "--tol", "1e-6", "--out", path("c.csv")}),
            0)
      << out_.str();
  EXPECT_EQ(run({"--command", "verify-gamma-chain", "--alphas", "-1,-2,-3", "--law", "stable:p=2", "--out", path("k.csv")}),
            0)
      << out_.str();
  EXPECT_EQ(run({"--command", "verify-beta-chain", "--alphas", "0.9,0.3,-0.5", "--law", "stable:p=1.4", "--y-grid", "1,3",
                 "--out", path("k2.csv")}),
            0)
      << out_.str();
}

TEST_F(CliTest, ShortCommandNamesAreAliases) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"verify-prop1", "verify-gamma-factorization"}, {"verify-prop2", "verify-beta-factorization"},
      {"verify-cor1", "verify-gamma-chain"}, {"verify-cor2", "verify-beta-chain"}};
  for (const auto& [alias, name] : pairs) EXPECT_EQ(cli::canonical_command(alias), name);
  EXPECT_EQ(run({"--command", "verify-prop1", "--alpha", "-1", "--beta", "-2", "--law", "stable:p=2,c=1", "--out",
                 path("alias.csv"), "--threads", "1"}),
            0);
  const auto summary = nlohmann::json::parse(slurp(path("alias.summary.json")));
  EXPECT_EQ(summary["command"], "verify-gamma-factorization");
}

TEST(CsvRows, SortedAndQuoted) {
  VerificationReport r;
  r.identity = "x";
  r.law = "cpoisson:rate=1,atoms=1@1";
  r.params = {-1.0, -2.0};
  r.route = Route::ExponentQuadrature;
  for (double y : {2.0, -1.0, 0.5}) {
    ResidualRow row;
    row.y = {y};
    row.passed = true;
    r.rows.push_back(row);
  }
  std::ostringstream os;
  write_csv(os, {r});
  const auto ls = lines(os.str());
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[1].rfind("\"x @ cpoisson:rate=1,atoms=1@1\",exponent_quadrature,-1;-2,-1,", 0), 0u) << ls[1];
  EXPECT_NE(ls[2].find(",0.5,"), std::string::npos);
  EXPECT_NE(ls[3].find(",2,"), std::string::npos);
}

TEST(LawStrings, RoundTrip) {
  for (const char* text : {"stable:p=1.5,c=2", "gaussian:mean=0.5,var=2", "cpoisson:rate=1,atoms=-1@0.5;1@0.5",
                           "gamma:shape=2,rate=3", "delta0", "gaussian:shift=0|1,cov=1|0|0|2",
                           "triplet:shift=0,cov=1,atoms=0.5@1;-2@0.3"}) {
    EXPECT_EQ(describe_law(parse_law(text)), text);
  }
  EXPECT_EQ(describe_law(cli::parse_law_list("stable:p=2,c=1 * gaussian:mean=0,var=1")),
            "stable:p=2,c=1 * gaussian:mean=0,var=1");
  EXPECT_THROW(parse_law("cpoisson:rate=1,atoms=-1@0.5;1@0.6"), DomainError);
  EXPECT_THROW(parse_law("cpoisson:rate=1"), ConfigError);
  EXPECT_THROW(parse_law("stable:p=1,p=2"), ConfigError);
}

TEST(YGrid, Parsing) {
  const auto g = cli::parse_y_grid("1|0,0|1");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[1], (Vector{0.0, 1.0}));
  EXPECT_THROW(cli::parse_y_grid("1|0,1"), ConfigError);
  EXPECT_THROW(cli::parse_y_grid("1,,2"), ConfigError);
}

} // namespace
} // namespace rimap
