#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rlsforecast/error.hpp"
#include "rlsforecast/predictor.hpp"
#include "rlsforecast/timeseries.hpp"

namespace rlsforecast {

/// Which forecast produced a plan. Zero fields mean "not recorded".
struct TradeSource {
  int n_coeffs = 0;
  int window = 0;
  double lambda = 0.0;
  DayIndex window_from = 0;
  DayIndex window_to = 0;

  friend bool operator==(const TradeSource&, const TradeSource&) = default;
};

/// One long round trip: buy at buy_index, sell at sell_index > buy_index.
struct TradePlan {
  DayIndex buy_index = 0;
  DayIndex sell_index = 0;
  TradeSource source;

  friend bool operator==(const TradePlan&, const TradePlan&) = default;
};

struct BacktestResult {
  TradePlan plan;
  double buy_price = 0.0;
  double sell_price = 0.0;
  double profit_pct = 0.0;  // full precision; exports round to 2 decimals
};

/// Percent gain on the invested amount: 100 (sell - buy) / buy.
double profit_percent(double buy_price, double sell_price);

/// Buy at the earliest minimum of the forecast, sell at the earliest maximum
/// strictly after it. Returns nullopt ("no trade") when the minimum is the
/// last point. Needs at least two forecast points.
std::optional<TradePlan> plan_trade(std::span<const ForecastPoint> forecast);

/// Prices the plan against actual closes.
BacktestResult backtest(const TradePlan& plan, const PriceSeries& actual);

enum class RowStatus { Traded, NoTrade, Failed };

struct TableRow {
  int n_coeffs = 0;
  int window = 0;
  RowStatus status = RowStatus::Failed;
  std::optional<TradePlan> plan;
  std::optional<BacktestResult> result;
  std::optional<ErrorKind> error;  // set when status == Failed
  std::string message;
};

struct TableRowSpec {
  int n_coeffs;
  int window;
};

/// The nine (N, L) pairs of the reference profit table.
std::vector<TableRowSpec> reference_table_rows();

inline constexpr DayIndex kReferenceAnchor = 2472;

/// For each (N, L): train on prices up to forecast_anchor, forecast L days,
/// plan a trade and price it against `series`. A failing row is recorded
/// in the row and does not stop the table.
std::vector<TableRow> table_sweep(const PriceSeries& series, std::span<const TableRowSpec> rows,
                                  double lambda, double delta, DayIndex forecast_anchor, int jobs = 1);

}  // namespace rlsforecast
