#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rlsforecast/predictor.hpp"
#include "rlsforecast/rls.hpp"
#include "rlsforecast/timeseries.hpp"

namespace rlsforecast {

/// Sample Pearson correlation. Throws Numerical ("undefined correlation")
/// when either operand is constant, InvalidArgument on length mismatch or
/// fewer than two samples. The result is clamped to [-1, 1].
double correlation(std::span<const double> a, std::span<const double> b);

struct SweepConfig {
  std::vector<int> n_values;
  std::vector<int> l_values;
  double lambda = 0.98;
  double delta = kDefaultDelta;
  DayIndex eval_from = 0;
  DayIndex eval_to = 0;
};

/// Correlation grid r[N][L]; a cell is empty when the correlation is
/// undefined on the evaluation window.
class CorrelationSurface {
 public:
  CorrelationSurface(std::vector<int> n_values, std::vector<int> l_values);

  const std::vector<int>& n_values() const noexcept { return n_values_; }
  const std::vector<int>& l_values() const noexcept { return l_values_; }
  std::size_t rows() const noexcept { return n_values_.size(); }
  std::size_t cols() const noexcept { return l_values_.size(); }

  const std::optional<double>& at(std::size_t row, std::size_t col) const {
    return cells_.at(row * cols() + col);
  }
  std::optional<double>& at(std::size_t row, std::size_t col) { return cells_.at(row * cols() + col); }

  /// Cell by axis value; throws InvalidArgument if N or L is not on the grid.
  const std::optional<double>& cell(int n, int l) const;

  friend bool operator==(const CorrelationSurface&, const CorrelationSurface&) = default;

 private:
  std::vector<int> n_values_;
  std::vector<int> l_values_;
  std::vector<std::optional<double>> cells_;
};

/// Checks the grid and window against `series`; throws naming the first
/// offending (N, L) pair.
void validate_sweep(const PriceSeries& series, const SweepConfig& config);

/// Correlation of predicted vs desired over [eval_from, eval_to] for a
/// single (N, L); nullopt when undefined.
std::optional<double> window_correlation(const PriceSeries& series, int n, int l, double lambda,
                                         double delta, DayIndex eval_from, DayIndex eval_to);

/// Evaluates every cell. `jobs` > 1 spreads cells over worker threads; the
/// result does not depend on the job count or evaluation order.
CorrelationSurface sweep_surface(const PriceSeries& series, const SweepConfig& config, int jobs = 1);

struct ProfilePoint {
  int key;  // N for profile_by_n, L for profile_by_l
  std::optional<double> max_correlation;
};

/// Per-N maximum over L (side view of the surface).
std::vector<ProfilePoint> profile_by_n(const CorrelationSurface& surface);
/// Per-L maximum over N (front view of the surface).
std::vector<ProfilePoint> profile_by_l(const CorrelationSurface& surface);

}  // namespace rlsforecast
