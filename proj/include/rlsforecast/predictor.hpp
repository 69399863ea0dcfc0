#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rlsforecast/rls.hpp"
#include "rlsforecast/timeseries.hpp"

namespace rlsforecast {

struct PredictorConfig {
  int n_coeffs = 100;      // N, number of FIR taps
  int window = 16;         // L, prediction window in trading days
  double lambda = 0.98;
  double delta = kDefaultDelta;
  int snapshot_stride = 0;  // 0 disables weight snapshots

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
  /// Minimum series length a run needs: N + L + 1.
  std::size_t min_length() const noexcept {
    return static_cast<std::size_t>(n_coeffs) + static_cast<std::size_t>(window) + 1;
  }
};

struct WeightSnapshot {
  DayIndex index;
  Eigen::VectorXd weights;
};

/// Per-day record of an adaptive run. Entry j belongs to trading day
/// first_index + j, and error[j] == desired[j] - predicted[j].
struct PredictionTrace {
  DayIndex first_index = 0;
  std::vector<double> desired;
  std::vector<double> predicted;
  std::vector<double> error;
  std::vector<WeightSnapshot> weight_snapshots;
  /// Weights after the last update; these drive forecast_future().
  Eigen::VectorXd final_weights;

  std::size_t size() const noexcept { return desired.size(); }
  DayIndex last_index() const noexcept {
    return first_index + static_cast<DayIndex>(desired.size()) - 1;
  }
};

/// Runs the L-step-ahead predictor over the whole series.
///
/// At day k the input is the delay line [s(k-L), s(k-L-1), ..., s(k-L-N+1)]
/// and the desired response is s(k), so y(k) only uses prices at least L
/// days old. The first prediction is at day start + N - 1 + L; earlier days
/// are skipped rather than zero-padded.
PredictionTrace run_prediction(const PriceSeries& series, const PredictorConfig& config);

struct ForecastPoint {
  DayIndex index;
  double price;
};

/// Trains over the full series, then freezes the weights and predicts the
/// L days after the last observation. Day t + j uses the delay line ending
/// at t - L + j, so every input is an observed price.
std::vector<ForecastPoint> forecast_future(const PriceSeries& series, const PredictorConfig& config);

}  // namespace rlsforecast
