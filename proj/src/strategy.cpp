#include "rlsforecast/strategy.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "rlsforecast/error.hpp"

namespace rlsforecast {

double profit_percent(double buy_price, double sell_price) {
  return 100.0 * (sell_price - buy_price) / buy_price;
}

std::optional<TradePlan> plan_trade(std::span<const ForecastPoint> forecast) {
  if (forecast.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "trade planning needs at least 2 forecast points");
  }
  const auto by_price = [](const ForecastPoint& a, const ForecastPoint& b) { return a.price < b.price; };
  // min_element returns the first of equal minima.
  const auto buy = std::min_element(forecast.begin(), forecast.end(), by_price);
  if (buy + 1 == forecast.end()) return std::nullopt;
  // max_element returns the first of equal maxima as well.
  const auto sell = std::max_element(buy + 1, forecast.end(), by_price);

  TradePlan plan;
  plan.buy_index = buy->index;
  plan.sell_index = sell->index;
  plan.source.window_from = forecast.front().index;
  plan.source.window_to = forecast.back().index;
  return plan;
}

BacktestResult backtest(const TradePlan& plan, const PriceSeries& actual) {
  if (plan.buy_index >= plan.sell_index) {
    throw Error(ErrorKind::InvalidArgument, "trade plan must buy before it sells");
  }
  BacktestResult result;
  result.plan = plan;
  result.buy_price = actual.at(plan.buy_index);
  result.sell_price = actual.at(plan.sell_index);
  result.profit_pct = profit_percent(result.buy_price, result.sell_price);
  return result;
}

std::vector<TableRowSpec> reference_table_rows() {
  return {{60, 20}, {65, 19}, {70, 18}, {75, 17}, {80, 16},
          {85, 15}, {90, 16}, {95, 17}, {100, 18}};
}

namespace {

TableRow evaluate_row(const PriceSeries& series, const TableRowSpec& spec, double lambda, double delta,
                      DayIndex anchor) {
  TableRow row;
  row.n_coeffs = spec.n_coeffs;
  row.window = spec.window;
  try {
    PredictorConfig cfg;
    cfg.n_coeffs = spec.n_coeffs;
    cfg.window = spec.window;
    cfg.lambda = lambda;
    cfg.delta = delta;
    const auto training = slice(series, series.start_index(), anchor);
    const auto forecast = forecast_future(training, cfg);
    auto plan = plan_trade(forecast);
    if (!plan) {
      row.status = RowStatus::NoTrade;
      return row;
    }
    plan->source.n_coeffs = spec.n_coeffs;
    plan->source.window = spec.window;
    plan->source.lambda = lambda;
    row.plan = plan;
    row.result = backtest(*plan, series);
    row.status = RowStatus::Traded;
  } catch (const Error& e) {
    row.status = RowStatus::Failed;
    row.plan.reset();
    row.result.reset();
    row.error = e.kind();
    row.message = e.what();
  }
  return row;
}

}  // namespace

std::vector<TableRow> table_sweep(const PriceSeries& series, std::span<const TableRowSpec> rows,
                                  double lambda, double delta, DayIndex forecast_anchor, int jobs) {
  std::vector<TableRow> table(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      table[i] = evaluate_row(series, rows[i], lambda, delta, forecast_anchor);
    }
  };
  const auto threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1,
                                               std::max<std::size_t>(rows.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return table;
}

}  // namespace rlsforecast
