#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rlsforecast {

/// State of an exponentially weighted RLS filter with N taps.
///
/// `inv_corr` is the inverse of the regularized weighted input correlation
///   R(k) = sum_{i<=k} lambda^(k-i) x(i) x(i)^T + lambda^(k+1) delta I
/// and is kept exactly symmetric.
struct FilterState {
  Eigen::VectorXd weights;
  Eigen::MatrixXd inv_corr;
  double lambda = 0.98;
  double delta = 0.01;
  long samples_seen = 0;

  Eigen::Index taps() const noexcept { return weights.size(); }
};

struct RegressionSample {
  Eigen::VectorXd input;
  double desired = 0.0;
};

/// Filter output before adaptation and the a priori error d - y.
struct UpdateOutput {
  double output = 0.0;
  double prior_error = 0.0;
};

struct UpdateResult {
  FilterState state;
  UpdateOutput output;
};

inline constexpr double kDefaultDelta = 0.01;

/// Zero weights, inv_corr = I / delta. Requires n_coeffs >= 1,
/// 0 < lambda < 1, delta > 0.
FilterState init_filter(int n_coeffs, double lambda, double delta = kDefaultDelta);

/// One RLS step in place. `input` must have N entries; all values finite.
UpdateOutput rls_step(FilterState& state, std::span<const double> input, double desired);

/// Value-semantics form of rls_step.
UpdateResult rls_update(FilterState state, const RegressionSample& sample);

/// Direct dense solve of the regularized weighted normal equations
///   (sum lambda^(k-i) x x^T + lambda^(k+1) delta I) w = sum lambda^(k-i) x d
/// over the whole history. This is the closed form the recursion tracks.
Eigen::VectorXd batch_solve(std::span<const RegressionSample> history, double lambda, double delta);

/// Weighted squared a posteriori error sum_i lambda^(k-i) (d(i) - x(i)^T w)^2.
double objective(std::span<const RegressionSample> history, const Eigen::VectorXd& weights,
                 double lambda);

/// objective() plus the initialization penalty lambda^(k+1) delta |w|^2;
/// batch_solve() minimizes exactly this function.
double regularized_objective(std::span<const RegressionSample> history,
                             const Eigen::VectorXd& weights, double lambda, double delta);

}  // namespace rlsforecast
