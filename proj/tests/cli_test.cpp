#include "rlsforecast/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

namespace rlsforecast::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rlsforecast_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int invoke(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, PredictDefaultsAreTheReferenceSetup) {
  const auto cfg = parse_args({"predict", "--input", "prices.csv"});
  EXPECT_EQ(cfg.command, Command::Predict);
  EXPECT_EQ(cfg.predictor.n_coeffs, 100);
  EXPECT_EQ(cfg.predictor.window, 16);
  EXPECT_EQ(cfg.predictor.lambda, 0.98);
  EXPECT_EQ(cfg.predictor.delta, 0.01);
  EXPECT_EQ(cfg.output, "-");
  EXPECT_EQ(std::get<std::string>(cfg.csv.column), "price");
}

TEST_F(CliTest, LambdaOutOfRangeIsReportedFirst) {
  try {
    (void)parse_args({"predict", "--lambda", "1.5"});
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("--lambda"), std::string::npos) << e.what();
  }
  EXPECT_EQ(invoke({"predict", "--lambda", "1.5"}), kExitUsage);
  EXPECT_NE(err_.str().find("--lambda"), std::string::npos);
}

TEST_F(CliTest, SweepRanges) {
  const auto cfg = parse_args({"sweep", "--input", "p.csv", "--l-range", "1:30", "--n-range", "5:100:5"});
  EXPECT_EQ(cfg.sweep.n_values.size(), 20u);
  EXPECT_EQ(cfg.sweep.l_values.size(), 30u);
  EXPECT_EQ(cfg.sweep.n_values.front(), 5);
  EXPECT_EQ(cfg.sweep.n_values.back(), 100);
  EXPECT_EQ(cfg.sweep.l_values.back(), 30);
  EXPECT_EQ(parse_range("3:10:4"), (std::vector<int>{3, 7}));
  EXPECT_THROW(parse_range("5"), UsageError);
  EXPECT_THROW(parse_range("5:1"), UsageError);
  EXPECT_THROW(parse_range("0:4"), UsageError);
  EXPECT_THROW(parse_range("1:4:0"), UsageError);
  EXPECT_THROW(parse_range("a:4"), UsageError);
  try {
    (void)parse_args({"sweep", "--input", "p.csv", "--n-range", "9:1"});
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("--n-range"), std::string::npos);
  }
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_THROW(parse_args({}), UsageError);
  EXPECT_THROW(parse_args({"predict", "--input", "p.csv", "--bogus", "1"}), UsageError);
  EXPECT_THROW(parse_args({"predict"}), UsageError);
  EXPECT_THROW(parse_args({"predict", "--input", "p.csv", "--coeffs", "0"}), UsageError);
  EXPECT_THROW(parse_args({"predict", "--input", "p.csv", "--delta", "0"}), UsageError);
  EXPECT_THROW(parse_args({"predict", "--input", "p.csv", "--format", "xml"}), UsageError);
  EXPECT_THROW(parse_args({"backtest", "--input", "p.csv", "--buy-index", "3"}), UsageError);
  EXPECT_THROW(parse_args({"table", "--input", "p.csv", "--rows", "60-20"}), UsageError);
  EXPECT_THROW(parse_args({"synth", "--length", "0"}), UsageError);
  EXPECT_EQ(parse_rows("60:20,80:16").size(), 2u);
}

TEST_F(CliTest, HelpDocumentsExitStatuses) {
  EXPECT_EQ(invoke({"--help"}), kExitOk);
  EXPECT_NE(out_.str().find("Exit status"), std::string::npos);
  EXPECT_EQ(invoke({"sweep", "--help"}), kExitOk);
  EXPECT_NE(out_.str().find("--n-range"), std::string::npos);
}

TEST_F(CliTest, SynthIsDeterministic) {
  const std::vector<std::string> base{"synth", "--ar", "0.9", "--noise", "0.1", "--length", "2000", "--seed", "7"};
  auto a = base;
  a.insert(a.end(), {"--output", path("a.csv")});
  auto b = base;
  b.insert(b.end(), {"--output", path("b.csv")});
  ASSERT_EQ(invoke(a), kExitOk) << err_.str();
  ASSERT_EQ(invoke(b), kExitOk) << err_.str();
  const auto text = slurp(path("a.csv"));
  EXPECT_EQ(text, slurp(path("b.csv")));
  EXPECT_EQ(text.substr(0, 12), "index,price\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2001);
}

TEST_F(CliTest, RepeatedArFlagsBuildHigherOrder) {
  const auto cfg = parse_args({"synth", "--ar", "0.5", "--ar", "-0.2", "--length", "10"});
  EXPECT_EQ(cfg.synth.ar, (std::vector<double>{0.5, -0.2}));
}

TEST_F(CliTest, PredictOnTooShortFileNamesTheBound) {
  {
    std::ofstream f(path("short.csv"));
    f << "price\n1\n2\n3\n4\n5\n";
  }
  EXPECT_EQ(invoke({"predict", "--input", path("short.csv")}), kExitPrecondition);
  EXPECT_NE(err_.str().find("N+L+1"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("117"), std::string::npos) << err_.str();
}

TEST_F(CliTest, MissingInputAndBadDataMapToDistinctStatuses) {
  EXPECT_EQ(invoke({"predict", "--input", path("nope.csv")}), kExitIo);
  {
    std::ofstream f(path("bad.csv"));
    f << "price\n1\nabc\n";
  }
  EXPECT_EQ(invoke({"predict", "--input", path("bad.csv")}), kExitData);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos);
}

TEST_F(CliTest, PredictWritesTraceAndSnapshots) {
  ASSERT_EQ(invoke({"synth", "--ar", "0.9", "--length", "300", "--seed", "1", "-o", path("s.csv")}), kExitOk);
  ASSERT_EQ(invoke({"predict", "-i", path("s.csv"), "--coeffs", "8", "--window", "3", "--snapshot-output",
                    path("w.csv")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(out_.str().substr(0, 30), "index,desired,predicted,error\n");
  const auto snaps = slurp(path("w.csv"));
  EXPECT_EQ(snaps.substr(0, 24), "index,w0,w1,w2,w3,w4,w5,");
  // stride 1: one snapshot per prediction
  const auto trace = out_.str();
  EXPECT_EQ(std::count(snaps.begin(), snaps.end(), '\n'), std::count(trace.begin(), trace.end(), '\n'));
}

TEST_F(CliTest, JsonAndCsvCarryIdenticalValues) {
  ASSERT_EQ(invoke({"synth", "--ar", "0.9", "--length", "400", "--seed", "3", "-o", path("s.csv")}), kExitOk);
  ASSERT_EQ(invoke({"sweep", "-i", path("s.csv"), "--n-range", "4:8:2", "--l-range", "1:3", "--eval-from",
                    "300", "--eval-to", "399", "-o", path("surface.csv")}),
            kExitOk)
      << err_.str();
  ASSERT_EQ(invoke({"sweep", "-i", path("s.csv"), "--n-range", "4:8:2", "--l-range", "1:3", "--eval-from",
                    "300", "--eval-to", "399", "--format", "json", "-o", path("surface.json"), "--jobs", "3"}),
            kExitOk)
      << err_.str();
  std::ifstream js(path("surface.json"));
  const auto doc = nlohmann::json::parse(js);
  std::istringstream csv(slurp(path("surface.csv")));
  std::string line;
  std::getline(csv, line);
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    const auto& cell = doc["surface"][i++];
    const auto last = line.rfind(',');
    EXPECT_EQ(std::stod(line.substr(last + 1)), cell["correlation"].get<double>());
  }
  EXPECT_EQ(i, 9u);
  EXPECT_EQ(doc["profile_n"].size(), 3u);
  EXPECT_EQ(doc["profile_l"].size(), 3u);
}

TEST_F(CliTest, SweepWritesProfilesAndDefaultWindow) {
  ASSERT_EQ(invoke({"synth", "--ar", "0.9", "--length", "200", "--seed", "3", "-o", path("s.csv")}), kExitOk);
  ASSERT_EQ(invoke({"sweep", "-i", path("s.csv"), "--n-range", "2:6:2", "--l-range", "1:4", "--profile-n",
                    path("pn.csv"), "--profile-l", path("pl.csv")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(slurp(path("pn.csv")).substr(0, 18), "n,max_correlation\n");
  EXPECT_EQ(slurp(path("pl.csv")).substr(0, 18), "l,max_correlation\n");
  EXPECT_EQ(invoke({"sweep", "-i", path("s.csv"), "--n-range", "180:190", "--l-range", "1:4"}),
            kExitPrecondition);
  EXPECT_NE(err_.str().find("N=180"), std::string::npos) << err_.str();
}

TEST_F(CliTest, BacktestWithExplicitDays) {
  {
    std::ofstream f(path("p.csv"));
    f << "37.86\n39.00\n41.05\n";
  }
  ASSERT_EQ(invoke({"backtest", "-i", path("p.csv"), "--no-header", "--buy-index", "0", "--sell-index", "2"}),
            kExitOk)
      << err_.str();
  EXPECT_NE(out_.str().find(",0,2,37.86,41.05,8.43\n"), std::string::npos) << out_.str();
  EXPECT_EQ(invoke({"backtest", "-i", path("p.csv"), "--no-header", "--buy-index", "0", "--sell-index", "5"}),
            kExitPrecondition);
}

TEST_F(CliTest, TableOnSyntheticData) {
  ASSERT_EQ(invoke({"synth", "--ar", "0.95", "--noise", "0.3", "--length", "2600", "--seed", "17", "--offset",
                    "40", "-o", path("s.csv")}),
            kExitOk);
  ASSERT_EQ(invoke({"table", "-i", path("s.csv"), "--jobs", "4"}), kExitOk) << err_.str();
  std::istringstream lines(out_.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,l,buy_index,sell_index,buy_price,sell_price,profit_pct");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 9);

  // Anchor past the data: every row fails, the table is still written.
  EXPECT_EQ(invoke({"table", "-i", path("s.csv"), "--rows", "10:5", "--anchor", "2598"}), kExitPrecondition);
  EXPECT_NE(out_.str().find("10,5,,,,,error"), std::string::npos) << out_.str();
}

TEST_F(CliTest, NoTradeExitsZeroWithMarker) {
  {
    std::ofstream f(path("down.csv"));
    f << "price\n";
    for (int k = 0; k < 600; ++k) f << 100.0 - 0.05 * k << '\n';
  }
  EXPECT_EQ(invoke({"backtest", "-i", path("down.csv"), "--coeffs", "4", "--window", "6", "--anchor", "580"}),
            kExitOk)
      << err_.str();
  EXPECT_NE(out_.str().find("4,6,,,,,no_trade"), std::string::npos) << out_.str();
}

TEST_F(CliTest, ForecastEmitsWindowRows) {
  ASSERT_EQ(invoke({"synth", "--ar", "0.9", "--length", "300", "--seed", "2", "-o", path("s.csv")}), kExitOk);
  ASSERT_EQ(invoke({"forecast", "-i", path("s.csv"), "--coeffs", "10", "--window", "5", "--format", "json"}),
            kExitOk);
  const auto doc = nlohmann::json::parse(out_.str());
  ASSERT_EQ(doc.size(), 5u);
  EXPECT_EQ(doc[0]["index"], 300);
  EXPECT_EQ(doc[4]["index"], 304);
}

}  // namespace
}  // namespace rlsforecast::cli
