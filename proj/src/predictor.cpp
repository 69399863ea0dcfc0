#include "rlsforecast/predictor.hpp"

#include <string>

#include "rlsforecast/error.hpp"

namespace rlsforecast {

void PredictorConfig::validate() const {
  if (n_coeffs < 1) {
    throw Error(ErrorKind::InvalidArgument, "coefficient count must be >= 1, got " + std::to_string(n_coeffs));
  }
  if (window < 1) {
    throw Error(ErrorKind::InvalidArgument, "prediction window must be >= 1, got " + std::to_string(window));
  }
  if (snapshot_stride < 0) {
    throw Error(ErrorKind::InvalidArgument, "snapshot stride must be >= 0");
  }
  // Range checks for lambda and delta live in init_filter.
  (void)init_filter(1, lambda, delta);
}

namespace {

void require_length(const PriceSeries& series, const PredictorConfig& config) {
  if (series.size() < config.min_length()) {
    throw Error(ErrorKind::Precondition,
                "series too short: N+L+1 = " + std::to_string(config.n_coeffs) + "+" +
                    std::to_string(config.window) + "+1 = " + std::to_string(config.min_length()) +
                    " samples required, got " + std::to_string(series.size()));
  }
}

// Fills `x` with the N samples ending at position `newest`, most recent first.
void delay_line(std::span<const double> s, std::size_t newest, std::vector<double>& x) {
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = s[newest - j];
}

}  // namespace

PredictionTrace run_prediction(const PriceSeries& series, const PredictorConfig& config) {
  config.validate();
  require_length(series, config);

  const auto s = series.values();
  const auto n = static_cast<std::size_t>(config.n_coeffs);
  const auto l = static_cast<std::size_t>(config.window);
  const std::size_t first = n - 1 + l;

  FilterState state = init_filter(config.n_coeffs, config.lambda, config.delta);
  PredictionTrace trace;
  trace.first_index = series.start_index() + static_cast<DayIndex>(first);
  const std::size_t count = s.size() - first;
  trace.desired.reserve(count);
  trace.predicted.reserve(count);
  trace.error.reserve(count);

  std::vector<double> x(n);
  for (std::size_t k = first; k < s.size(); ++k) {
    delay_line(s, k - l, x);
    const auto out = rls_step(state, x, s[k]);
    trace.desired.push_back(s[k]);
    trace.predicted.push_back(out.output);
    trace.error.push_back(out.prior_error);
    if (config.snapshot_stride > 0 &&
        state.samples_seen % config.snapshot_stride == 0) {
      trace.weight_snapshots.push_back(
          {series.start_index() + static_cast<DayIndex>(k), state.weights});
    }
  }
  trace.final_weights = std::move(state.weights);
  return trace;
}

std::vector<ForecastPoint> forecast_future(const PriceSeries& series, const PredictorConfig& config) {
  PredictorConfig training = config;
  training.snapshot_stride = 0;
  const auto trace = run_prediction(series, training);

  const auto s = series.values();
  const auto n = static_cast<std::size_t>(config.n_coeffs);
  const auto l = static_cast<std::size_t>(config.window);
  const std::size_t t = s.size() - 1;

  std::vector<ForecastPoint> out;
  out.reserve(l);
  std::vector<double> x(n);
  for (std::size_t j = 1; j <= l; ++j) {
    delay_line(s, t - l + j, x);
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(n));
    out.push_back({series.end_index() + static_cast<DayIndex>(j), trace.final_weights.dot(xv)});
  }
  return out;
}

}  // namespace rlsforecast
