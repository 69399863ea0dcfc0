#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rlsforecast {

/// Trading-day index: 0-based count of exchange sessions since the first
/// sample of a history. Calendar dates never enter any computation.
using DayIndex = std::int64_t;

/// Ordered closing prices on consecutive trading days.
///
/// Every price is finite and strictly positive, there is at least one sample,
/// and labels (calendar dates, informational only) are either absent or have
/// exactly one entry per price. The constructor enforces all of this, so a
/// PriceSeries value is always valid.
class PriceSeries {
 public:
  explicit PriceSeries(std::vector<double> values, DayIndex start_index = 0,
                       std::vector<std::string> labels = {});

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }

  std::size_t size() const noexcept { return values_.size(); }
  DayIndex start_index() const noexcept { return start_index_; }
  /// Index of the last sample (inclusive).
  DayIndex end_index() const noexcept {
    return start_index_ + static_cast<DayIndex>(values_.size()) - 1;
  }
  bool contains(DayIndex index) const noexcept {
    return index >= start_index_ && index <= end_index();
  }

  /// Price on trading day `index`. Throws Precondition outside the series.
  double at(DayIndex index) const;

  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

 private:
  std::vector<double> values_;
  DayIndex start_index_;
  std::vector<std::string> labels_;
};

/// Column selector: header name or 0-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

struct CsvOptions {
  ColumnRef column = std::size_t{0};
  bool has_header = true;
  std::optional<ColumnRef> date_column;
};

/// Reads one price per data row. Blank rows, unparseable cells and
/// non-positive prices are errors that name the 1-based file line.
PriceSeries load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
PriceSeries parse_csv(std::istream& in, const CsvOptions& options = {});

/// Writes `index,price[,date]` with prices at 6 significant digits.
void write_csv(std::ostream& out, const PriceSeries& series);

/// Inclusive sub-series [from, to]; the result starts at `from`.
PriceSeries slice(const PriceSeries& series, DayIndex from, DayIndex to);

/// Autoregressive synthetic prices:
///   z(t) = sum_j coeffs[j] * z(t-1-j) + noise_std * N(0,1),  z(t<0) = 0
///   price(t) = z(t) + offset
/// Deterministic for a given seed. Stability of the AR polynomial is the
/// caller's business; a non-positive price is reported as a Data error.
PriceSeries synth_ar(std::span<const double> coeffs, double noise_std, std::size_t length,
                     std::uint64_t seed, double offset);

}  // namespace rlsforecast
