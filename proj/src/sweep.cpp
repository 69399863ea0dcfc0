#include "rlsforecast/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "rlsforecast/error.hpp"

namespace rlsforecast {

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidArgument, "correlation operands differ in length (" +
                                                std::to_string(a.size()) + " vs " +
                                                std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) throw Error(ErrorKind::InvalidArgument, "correlation needs at least 2 samples");

  // Exact test: a mean of identical values can be off by an ulp, which would
  // otherwise leave a spurious nonzero variance.
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(a) || constant(b)) {
    throw Error(ErrorKind::Numerical, "undefined correlation: operand has zero variance");
  }

  const auto n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw Error(ErrorKind::Numerical, "undefined correlation: operand has zero variance");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

CorrelationSurface::CorrelationSurface(std::vector<int> n_values, std::vector<int> l_values)
    : n_values_(std::move(n_values)),
      l_values_(std::move(l_values)),
      cells_(n_values_.size() * l_values_.size()) {}

const std::optional<double>& CorrelationSurface::cell(int n, int l) const {
  const auto row = std::find(n_values_.begin(), n_values_.end(), n);
  const auto col = std::find(l_values_.begin(), l_values_.end(), l);
  if (row == n_values_.end() || col == l_values_.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "(N=" + std::to_string(n) + ", L=" + std::to_string(l) + ") is not on the grid");
  }
  return at(static_cast<std::size_t>(row - n_values_.begin()),
            static_cast<std::size_t>(col - l_values_.begin()));
}

namespace {

void check_axis(const std::vector<int>& axis, const char* name) {
  if (axis.empty()) throw Error(ErrorKind::InvalidArgument, std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (axis[i] < 1) {
      throw Error(ErrorKind::InvalidArgument, std::string(name) + " values must be >= 1");
    }
    if (i > 0 && axis[i] <= axis[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, std::string(name) + " values must be strictly ascending");
    }
  }
}

}  // namespace

void validate_sweep(const PriceSeries& series, const SweepConfig& config) {
  check_axis(config.n_values, "N");
  check_axis(config.l_values, "L");
  (void)init_filter(1, config.lambda, config.delta);
  if (config.eval_from >= config.eval_to) {
    throw Error(ErrorKind::InvalidArgument, "evaluation window needs eval_from < eval_to");
  }
  if (!series.contains(config.eval_from) || !series.contains(config.eval_to)) {
    throw Error(ErrorKind::Precondition,
                "evaluation window [" + std::to_string(config.eval_from) + ", " +
                    std::to_string(config.eval_to) + "] is outside the series [" +
                    std::to_string(series.start_index()) + ", " + std::to_string(series.end_index()) + "]");
  }
  // Axes are ascending, so the largest N + L is the binding pair.
  for (int n : config.n_values) {
    for (int l : config.l_values) {
      const DayIndex first = series.start_index() + n - 1 + l;
      if (first > config.eval_from) {
        throw Error(ErrorKind::Precondition,
                    "(N=" + std::to_string(n) + ", L=" + std::to_string(l) +
                        ") first predicts day " + std::to_string(first) +
                        ", after eval_from " + std::to_string(config.eval_from) +
                        "; N+L+1 = " + std::to_string(n + l + 1) + " samples must precede the window");
      }
    }
  }
}

std::optional<double> window_correlation(const PriceSeries& series, int n, int l, double lambda,
                                         double delta, DayIndex eval_from, DayIndex eval_to) {
  // Predictions at day k never read past k, so the tail after eval_to is dropped.
  const auto history = slice(series, series.start_index(), eval_to);
  PredictorConfig cfg;
  cfg.n_coeffs = n;
  cfg.window = l;
  cfg.lambda = lambda;
  cfg.delta = delta;
  const auto trace = run_prediction(history, cfg);
  if (eval_from < trace.first_index) {
    throw Error(ErrorKind::Precondition, "(N=" + std::to_string(n) + ", L=" + std::to_string(l) +
                                             ") has no prediction at eval_from");
  }
  const auto offset = static_cast<std::size_t>(eval_from - trace.first_index);
  const auto count = static_cast<std::size_t>(eval_to - eval_from + 1);
  const std::span<const double> predicted(trace.predicted.data() + offset, count);
  const std::span<const double> desired(trace.desired.data() + offset, count);
  try {
    return correlation(predicted, desired);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Numerical) return std::nullopt;
    throw;
  }
}

CorrelationSurface sweep_surface(const PriceSeries& series, const SweepConfig& config, int jobs) {
  validate_sweep(series, config);
  CorrelationSurface surface(config.n_values, config.l_values);
  const std::size_t total = surface.rows() * surface.cols();

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < total; cell = next++) {
      const std::size_t row = cell / surface.cols();
      const std::size_t col = cell % surface.cols();
      surface.at(row, col) =
          window_correlation(series, config.n_values[row], config.l_values[col], config.lambda,
                             config.delta, config.eval_from, config.eval_to);
    }
  };

  const auto threads = static_cast<std::size_t>(std::clamp<long>(jobs, 1, static_cast<long>(total)));
  if (threads <= 1) {
    worker();
    return surface;
  }
  // Cells are distinct slots; only the work counter is shared.
  std::vector<std::jthread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        worker();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return surface;
}

namespace {

std::optional<double> max_defined(std::optional<double> best, const std::optional<double>& v) {
  if (v && (!best || *v > *best)) return v;
  return best;
}

}  // namespace

std::vector<ProfilePoint> profile_by_n(const CorrelationSurface& surface) {
  if (surface.rows() == 0 || surface.cols() == 0) {
    throw Error(ErrorKind::InvalidArgument, "correlation surface is empty");
  }
  std::vector<ProfilePoint> out;
  out.reserve(surface.rows());
  for (std::size_t r = 0; r < surface.rows(); ++r) {
    std::optional<double> best;
    for (std::size_t c = 0; c < surface.cols(); ++c) best = max_defined(best, surface.at(r, c));
    out.push_back({surface.n_values()[r], best});
  }
  return out;
}

std::vector<ProfilePoint> profile_by_l(const CorrelationSurface& surface) {
  if (surface.rows() == 0 || surface.cols() == 0) {
    throw Error(ErrorKind::InvalidArgument, "correlation surface is empty");
  }
  std::vector<ProfilePoint> out;
  out.reserve(surface.cols());
  for (std::size_t c = 0; c < surface.cols(); ++c) {
    std::optional<double> best;
    for (std::size_t r = 0; r < surface.rows(); ++r) best = max_defined(best, surface.at(r, c));
    out.push_back({surface.l_values()[c], best});
  }
  return out;
}

}  // namespace rlsforecast
