#include "rlsforecast/rls.hpp"

#include <cmath>
#include <string>

#include "rlsforecast/error.hpp"

namespace rlsforecast {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "forgetting factor must satisfy 0 < lambda < 1, got " + std::to_string(lambda));
  }
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::InvalidArgument,
                "regularization delta must be finite and > 0, got " + std::to_string(delta));
  }
}

Eigen::Index history_taps(std::span<const RegressionSample> history) {
  if (history.empty()) throw Error(ErrorKind::InvalidArgument, "regression history is empty");
  const auto n = history.front().input.size();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "regression inputs are empty");
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (history[i].input.size() != n) {
      throw Error(ErrorKind::InvalidArgument,
                  "regression sample " + std::to_string(i) + " has " +
                      std::to_string(history[i].input.size()) + " inputs, expected " +
                      std::to_string(n));
    }
  }
  return n;
}

}  // namespace

FilterState init_filter(int n_coeffs, double lambda, double delta) {
  if (n_coeffs < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "filter needs at least one coefficient, got " + std::to_string(n_coeffs));
  }
  check_lambda(lambda);
  check_delta(delta);
  FilterState state;
  state.weights = Eigen::VectorXd::Zero(n_coeffs);
  state.inv_corr = Eigen::MatrixXd::Identity(n_coeffs, n_coeffs) / delta;
  state.lambda = lambda;
  state.delta = delta;
  state.samples_seen = 0;
  return state;
}

UpdateOutput rls_step(FilterState& state, std::span<const double> input, double desired) {
  const auto n = state.taps();
  if (static_cast<Eigen::Index>(input.size()) != n) {
    throw Error(ErrorKind::InvalidArgument, "input has " + std::to_string(input.size()) +
                                                " entries, filter has " + std::to_string(n) +
                                                " taps");
  }
  if (!std::isfinite(desired)) throw Error(ErrorKind::Numerical, "desired value is not finite");
  for (double v : input) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Numerical, "input value is not finite");
  }
  const Eigen::Map<const Eigen::VectorXd> x(input.data(), n);
  auto& p = state.inv_corr;

  UpdateOutput out;
  out.output = state.weights.dot(x);
  out.prior_error = desired - out.output;

  const Eigen::VectorXd px = p * x;
  const Eigen::RowVectorXd xp = x.transpose() * p;
  const double denom = state.lambda + x.dot(px);
  const Eigen::VectorXd gain = px / denom;

  state.weights.noalias() += gain * out.prior_error;
  p.noalias() -= gain * xp;
  p /= state.lambda;
  // Re-symmetrize: (M + M^T) / 2, written so both triangles get the same bits.
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double avg = 0.5 * (p(r, c) + p(c, r));
      p(r, c) = avg;
      p(c, r) = avg;
    }
  }
  ++state.samples_seen;
  return out;
}

UpdateResult rls_update(FilterState state, const RegressionSample& sample) {
  const auto out = rls_step(state, std::span<const double>(sample.input.data(),
                                                           static_cast<std::size_t>(sample.input.size())),
                            sample.desired);
  return {std::move(state), out};
}

Eigen::VectorXd batch_solve(std::span<const RegressionSample> history, double lambda, double delta) {
  check_lambda(lambda);
  check_delta(delta);
  const auto n = history_taps(history);
  const auto k = static_cast<double>(history.size() - 1);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double w = std::pow(lambda, k - static_cast<double>(i));
    const auto& x = history[i].input;
    a.noalias() += w * x * x.transpose();
    b.noalias() += (w * history[i].desired) * x;
  }
  a.diagonal().array() += std::pow(lambda, k + 1.0) * delta;

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (!qr.isInvertible()) {
    throw Error(ErrorKind::Numerical, "weighted normal equations are singular");
  }
  return qr.solve(b);
}

double objective(std::span<const RegressionSample> history, const Eigen::VectorXd& weights,
                 double lambda) {
  const auto n = history_taps(history);
  if (weights.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "weight vector has " + std::to_string(weights.size()) +
                                                " entries, samples have " + std::to_string(n));
  }
  const auto k = static_cast<double>(history.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double e = history[i].desired - history[i].input.dot(weights);
    total += std::pow(lambda, k - static_cast<double>(i)) * e * e;
  }
  return total;
}

double regularized_objective(std::span<const RegressionSample> history,
                             const Eigen::VectorXd& weights, double lambda, double delta) {
  const auto k = static_cast<double>(history.size()) - 1.0;
  return objective(history, weights, lambda) +
         std::pow(lambda, k + 1.0) * delta * weights.squaredNorm();
}

}  // namespace rlsforecast
