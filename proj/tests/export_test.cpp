#include "rlsforecast/export.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "rlsforecast/format.hpp"

namespace rlsforecast {
namespace {

TEST(TraceCsvTest, HeaderAndRows) {
  PredictionTrace t;
  t.first_index = 5;
  t.desired = {2.0, 3.0};
  t.predicted = {1.5, 3.25};
  t.error = {0.5, -0.25};
  t.final_weights = Eigen::Vector2d(0.1, 0.2);
  t.weight_snapshots.push_back({5, Eigen::Vector2d(0.5, -1.0)});
  std::ostringstream out;
  write_trace_csv(out, t);
  EXPECT_EQ(out.str(), "index,desired,predicted,error\n5,2,1.5,0.5\n6,3,3.25,-0.25\n");
  std::ostringstream snaps;
  write_snapshots_csv(snaps, t);
  EXPECT_EQ(snaps.str(), "index,w0,w1\n5,0.5,-1\n");
}

TEST(TraceCsvTest, DesiredColumnLoadsBack) {
  const std::vector<double> ar{0.9};
  const auto s = synth_ar(ar, 0.1, 200, 1, 50.0);
  PredictorConfig cfg;
  cfg.n_coeffs = 5;
  cfg.window = 2;
  const auto trace = run_prediction(s, cfg);
  std::ostringstream out;
  write_trace_csv(out, trace);
  std::istringstream in(out.str());
  CsvOptions o;
  o.column = std::string("desired");
  const auto back = parse_csv(in, o);
  ASSERT_EQ(back.size(), trace.size());
  for (std::size_t j = 0; j < trace.size(); ++j) {
    EXPECT_EQ(back.values()[j], round_significant(trace.desired[j], kSignalDigits));
  }
}

TEST(SurfaceCsvTest, UndefinedCellsAreEmptyAndRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  CorrelationSurface s({5, 10, 15}, {1, 2});
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      if (r != 1 || c != 0) s.at(r, c) = round_significant(u(rng), kSignalDigits);
    }
  }
  std::ostringstream out;
  write_surface_csv(out, s);
  EXPECT_NE(out.str().find("\n10,1,\n"), std::string::npos) << out.str();
  std::istringstream in(out.str());
  EXPECT_EQ(read_surface_csv(in), s);

  const auto js = surface_json(s);
  ASSERT_EQ(js.size(), 6u);
  EXPECT_TRUE(js[2]["correlation"].is_null());
  EXPECT_EQ(js[0]["correlation"].get<double>(), *s.at(0, 0));
}

TEST(SurfaceCsvTest, RejectsMalformedInput) {
  std::istringstream bad_header("a,b,c\n");
  EXPECT_THROW(read_surface_csv(bad_header), Error);
  std::istringstream ragged("n,l,correlation\n1,1,0.5\n2,1,0.4\n2,2,0.1\n");
  EXPECT_THROW(read_surface_csv(ragged), Error);
}

TEST(ProfileCsvTest, KeyColumn) {
  const std::vector<ProfilePoint> p{{1, 0.5}, {2, std::nullopt}};
  std::ostringstream out;
  write_profile_csv(out, p, "l");
  EXPECT_EQ(out.str(), "l,max_correlation\n1,0.5\n2,\n");
  const auto j = profile_json(p, "l");
  EXPECT_EQ(j[0]["l"], 1);
  EXPECT_TRUE(j[1]["max_correlation"].is_null());
}

TEST(TableCsvTest, MirrorsTableColumnsAndMarksNoTrade) {
  std::vector<TableRow> rows(3);
  rows[0].n_coeffs = 80;
  rows[0].window = 16;
  rows[0].status = RowStatus::Traded;
  rows[0].plan = TradePlan{2476, 2486, {}};
  rows[0].result = BacktestResult{*rows[0].plan, 37.86, 41.05, profit_percent(37.86, 41.05)};
  rows[1].n_coeffs = 60;
  rows[1].window = 20;
  rows[1].status = RowStatus::NoTrade;
  rows[2].n_coeffs = 65;
  rows[2].window = 19;
  rows[2].status = RowStatus::Failed;
  rows[2].message = "series too short";
  std::ostringstream out;
  write_table_csv(out, rows);
  EXPECT_EQ(out.str(),
            "n,l,buy_index,sell_index,buy_price,sell_price,profit_pct\n"
            "80,16,2476,2486,37.86,41.05,8.43\n"
            "60,20,,,,,no_trade\n"
            "65,19,,,,,error\n");
  const auto j = table_json(rows);
  EXPECT_EQ(j[0]["profit_pct"].get<double>(), 8.43);
  EXPECT_EQ(j[1]["status"], "no_trade");
  EXPECT_EQ(j[2]["message"], "series too short");
}

TEST(JsonTest, SeriesAndForecastCarryCsvValues) {
  const PriceSeries s({37.861234567, 41.05}, 3, {"a", "b"});
  const auto j = series_json(s);
  EXPECT_EQ(j[0]["price"].get<double>(), 37.8612);
  EXPECT_EQ(j[0]["index"], 3);
  EXPECT_EQ(j[1]["date"], "b");
  const std::vector<ForecastPoint> f{{10, 1.0 / 3.0}};
  std::ostringstream out;
  write_forecast_csv(out, f);
  EXPECT_EQ(out.str(), "index,predicted\n10,0.3333333333\n");
  EXPECT_EQ(forecast_json(f)[0]["predicted"].get<double>(), 0.3333333333);
}

}  // namespace
}  // namespace rlsforecast
