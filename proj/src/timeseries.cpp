#include "rlsforecast/timeseries.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <string_view>

#include "rlsforecast/error.hpp"
#include "rlsforecast/format.hpp"

namespace rlsforecast {

PriceSeries::PriceSeries(std::vector<double> values, DayIndex start_index,
                         std::vector<std::string> labels)
    : values_(std::move(values)), start_index_(start_index), labels_(std::move(labels)) {
  if (values_.empty()) {
    throw Error(ErrorKind::Data, "price series is empty");
  }
  if (!labels_.empty() && labels_.size() != values_.size()) {
    throw Error(ErrorKind::Data, "price series has " + std::to_string(values_.size()) +
                                     " values but " + std::to_string(labels_.size()) + " labels");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      throw Error(ErrorKind::Data, "price at index " + std::to_string(start_index_ + i) +
                                       " is not a finite positive number");
    }
  }
}

double PriceSeries::at(DayIndex index) const {
  if (!contains(index)) {
    throw Error(ErrorKind::Precondition, "trading day " + std::to_string(index) +
                                             " is outside the series [" +
                                             std::to_string(start_index_) + ", " +
                                             std::to_string(end_index()) + "]");
  }
  return values_[static_cast<std::size_t>(index - start_index_)];
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string_view>& header,
                           const char* what) {
  if (const auto* pos = std::get_if<std::size_t>(&ref)) return *pos;
  const auto& name = std::get<std::string>(ref);
  if (header.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " column '" + name + "' selected by name but the file has no header");
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorKind::Data, std::string(what) + " column '" + name + "' not found in header");
}

std::optional<double> parse_decimal(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

PriceSeries parse_csv(std::istream& in, const CsvOptions& options) {
  std::vector<double> values;
  std::vector<std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> price_col;
  std::optional<std::size_t> date_col;
  std::vector<std::string> header_storage;

  if (options.has_header) {
    if (!std::getline(in, line)) throw Error(ErrorKind::Data, "CSV input is empty");
    ++line_no;
    // BOM
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    for (auto f : split_fields(line)) header_storage.emplace_back(f);
  }
  const std::vector<std::string_view> header(header_storage.begin(), header_storage.end());
  price_col = resolve_column(options.column, header, "price");
  if (options.date_column) date_col = resolve_column(*options.date_column, header, "date");

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.size() == 1 && fields[0].empty()) {
      throw Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": blank row");
    }
    if (*price_col >= fields.size()) {
      throw Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": missing price column " +
                                       std::to_string(*price_col));
    }
    const auto value = parse_decimal(fields[*price_col]);
    if (!value) {
      throw Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": cannot parse price '" +
                                       std::string(fields[*price_col]) + "'");
    }
    if (!std::isfinite(*value) || *value <= 0.0) {
      throw Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": price " +
                                       std::string(fields[*price_col]) + " is not positive");
    }
    values.push_back(*value);
    if (date_col) {
      if (*date_col >= fields.size()) {
        throw Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": missing date column");
      }
      labels.emplace_back(fields[*date_col]);
    }
  }
  if (values.empty()) throw Error(ErrorKind::Data, "CSV input has no data rows");
  return PriceSeries(std::move(values), 0, std::move(labels));
}

PriceSeries load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return parse_csv(in, options);
}

void write_csv(std::ostream& out, const PriceSeries& series) {
  out << (series.has_labels() ? "index,price,date\n" : "index,price\n");
  const auto values = series.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << series.start_index() + static_cast<DayIndex>(i) << ','
        << format_significant(values[i], kPriceDigits);
    if (series.has_labels()) out << ',' << series.labels()[i];
    out << '\n';
  }
}

PriceSeries slice(const PriceSeries& series, DayIndex from, DayIndex to) {
  if (from > to || !series.contains(from) || !series.contains(to)) {
    throw Error(ErrorKind::Precondition, "slice [" + std::to_string(from) + ", " +
                                             std::to_string(to) + "] is outside the series [" +
                                             std::to_string(series.start_index()) + ", " +
                                             std::to_string(series.end_index()) + "]");
  }
  const auto first = static_cast<std::size_t>(from - series.start_index());
  const auto count = static_cast<std::size_t>(to - from + 1);
  const auto values = series.values();
  std::vector<double> out(values.begin() + first, values.begin() + first + count);
  std::vector<std::string> labels;
  if (series.has_labels()) {
    labels.assign(series.labels().begin() + first, series.labels().begin() + first + count);
  }
  return PriceSeries(std::move(out), from, std::move(labels));
}

PriceSeries synth_ar(std::span<const double> coeffs, double noise_std, std::size_t length,
                     std::uint64_t seed, double offset) {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "synthetic length must be at least 1");
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
    throw Error(ErrorKind::InvalidArgument, "noise standard deviation must be finite and >= 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> z(length, 0.0);
  std::vector<double> prices(length);
  for (std::size_t t = 0; t < length; ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < coeffs.size() && j < t; ++j) acc += coeffs[j] * z[t - 1 - j];
    // The draw is skipped when noise_std == 0 so the noiseless path is exact.
    if (noise_std > 0.0) acc += noise_std * gauss(rng);
    z[t] = acc;
    prices[t] = acc + offset;
    if (!(prices[t] > 0.0) || !std::isfinite(prices[t])) {
      throw Error(ErrorKind::Data, "synthetic price at index " + std::to_string(t) +
                                       " is not positive; increase the offset");
    }
  }
  return PriceSeries(std::move(prices));
}

}  // namespace rlsforecast
