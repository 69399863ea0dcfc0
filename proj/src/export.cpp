#include "rlsforecast/export.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "rlsforecast/error.hpp"
#include "rlsforecast/format.hpp"

namespace rlsforecast {

using nlohmann::json;

namespace {

std::string sig(double v) { return format_significant(v, kSignalDigits); }
std::string price(double v) { return format_significant(v, kPriceDigits); }

json opt_json(const std::optional<double>& v) {
  return v ? json(round_significant(*v, kSignalDigits)) : json(nullptr);
}

}  // namespace

const char* row_status_name(RowStatus status) {
  switch (status) {
    case RowStatus::Traded: return "traded";
    case RowStatus::NoTrade: return "no_trade";
    case RowStatus::Failed: return "error";
  }
  return "error";
}

void write_trace_csv(std::ostream& out, const PredictionTrace& trace) {
  out << "index,desired,predicted,error\n";
  for (std::size_t j = 0; j < trace.size(); ++j) {
    out << trace.first_index + static_cast<DayIndex>(j) << ',' << sig(trace.desired[j]) << ','
        << sig(trace.predicted[j]) << ',' << sig(trace.error[j]) << '\n';
  }
}

void write_snapshots_csv(std::ostream& out, const PredictionTrace& trace) {
  const auto n = trace.final_weights.size();
  out << "index";
  for (Eigen::Index i = 0; i < n; ++i) out << ",w" << i;
  out << '\n';
  for (const auto& snap : trace.weight_snapshots) {
    out << snap.index;
    for (Eigen::Index i = 0; i < snap.weights.size(); ++i) out << ',' << sig(snap.weights[i]);
    out << '\n';
  }
}

void write_forecast_csv(std::ostream& out, std::span<const ForecastPoint> forecast) {
  out << "index,predicted\n";
  for (const auto& p : forecast) out << p.index << ',' << sig(p.price) << '\n';
}

void write_surface_csv(std::ostream& out, const CorrelationSurface& surface) {
  out << "n,l,correlation\n";
  for (std::size_t r = 0; r < surface.rows(); ++r) {
    for (std::size_t c = 0; c < surface.cols(); ++c) {
      out << surface.n_values()[r] << ',' << surface.l_values()[c] << ',';
      if (const auto& v = surface.at(r, c)) out << sig(*v);
      out << '\n';
    }
  }
}

void write_profile_csv(std::ostream& out, std::span<const ProfilePoint> profile, std::string_view key) {
  out << key << ",max_correlation\n";
  for (const auto& p : profile) {
    out << p.key << ',';
    if (p.max_correlation) out << sig(*p.max_correlation);
    out << '\n';
  }
}

void write_table_csv(std::ostream& out, std::span<const TableRow> table) {
  out << "n,l,buy_index,sell_index,buy_price,sell_price,profit_pct\n";
  for (const auto& row : table) {
    out << row.n_coeffs << ',' << row.window << ',';
    if (row.status == RowStatus::Traded && row.result) {
      const auto& r = *row.result;
      out << r.plan.buy_index << ',' << r.plan.sell_index << ',' << price(r.buy_price) << ','
          << price(r.sell_price) << ',' << format_fixed(r.profit_pct, kProfitDecimals) << '\n';
    } else {
      out << ",,,," << row_status_name(row.status) << '\n';
    }
  }
}

CorrelationSurface read_surface_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n,l,correlation", 0) != 0) {
    throw Error(ErrorKind::Data, "surface CSV must start with header 'n,l,correlation'");
  }
  std::vector<std::tuple<int, int, std::optional<double>>> cells;
  std::vector<int> ns;
  std::vector<int> ls;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string n_text, l_text, r_text;
    if (!std::getline(fields, n_text, ',') || !std::getline(fields, l_text, ',')) {
      throw Error(ErrorKind::Data, "surface CSV line " + std::to_string(line_no) + " is malformed");
    }
    std::getline(fields, r_text);
    try {
      const int n = std::stoi(n_text);
      const int l = std::stoi(l_text);
      std::optional<double> r;
      if (!r_text.empty()) r = std::stod(r_text);
      if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
      if (std::find(ls.begin(), ls.end(), l) == ls.end()) ls.push_back(l);
      cells.emplace_back(n, l, r);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Data, "surface CSV line " + std::to_string(line_no) + " is malformed");
    }
  }
  CorrelationSurface surface(ns, ls);
  if (cells.size() != ns.size() * ls.size()) {
    throw Error(ErrorKind::Data, "surface CSV does not describe a full grid");
  }
  for (const auto& [n, l, r] : cells) {
    const auto row = static_cast<std::size_t>(std::find(ns.begin(), ns.end(), n) - ns.begin());
    const auto col = static_cast<std::size_t>(std::find(ls.begin(), ls.end(), l) - ls.begin());
    surface.at(row, col) = r;
  }
  return surface;
}

json series_json(const PriceSeries& series) {
  json rows = json::array();
  const auto values = series.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    json row = {{"index", series.start_index() + static_cast<DayIndex>(i)},
                {"price", round_significant(values[i], kPriceDigits)}};
    if (series.has_labels()) row["date"] = series.labels()[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

json trace_json(const PredictionTrace& trace) {
  json rows = json::array();
  for (std::size_t j = 0; j < trace.size(); ++j) {
    rows.push_back({{"index", trace.first_index + static_cast<DayIndex>(j)},
                    {"desired", round_significant(trace.desired[j], kSignalDigits)},
                    {"predicted", round_significant(trace.predicted[j], kSignalDigits)},
                    {"error", round_significant(trace.error[j], kSignalDigits)}});
  }
  json doc = {{"trace", std::move(rows)}};
  if (!trace.weight_snapshots.empty()) {
    json snaps = json::array();
    for (const auto& s : trace.weight_snapshots) {
      json w = json::array();
      for (Eigen::Index i = 0; i < s.weights.size(); ++i) w.push_back(round_significant(s.weights[i], kSignalDigits));
      snaps.push_back({{"index", s.index}, {"weights", std::move(w)}});
    }
    doc["weight_snapshots"] = std::move(snaps);
  }
  return doc;
}

json forecast_json(std::span<const ForecastPoint> forecast) {
  json rows = json::array();
  for (const auto& p : forecast) {
    rows.push_back({{"index", p.index}, {"predicted", round_significant(p.price, kSignalDigits)}});
  }
  return rows;
}

json surface_json(const CorrelationSurface& surface) {
  json rows = json::array();
  for (std::size_t r = 0; r < surface.rows(); ++r) {
    for (std::size_t c = 0; c < surface.cols(); ++c) {
      rows.push_back({{"n", surface.n_values()[r]},
                      {"l", surface.l_values()[c]},
                      {"correlation", opt_json(surface.at(r, c))}});
    }
  }
  return rows;
}

json profile_json(std::span<const ProfilePoint> profile, std::string_view key) {
  json rows = json::array();
  for (const auto& p : profile) {
    rows.push_back({{std::string(key), p.key}, {"max_correlation", opt_json(p.max_correlation)}});
  }
  return rows;
}

json table_json(std::span<const TableRow> table) {
  json rows = json::array();
  for (const auto& row : table) {
    json j = {{"n", row.n_coeffs}, {"l", row.window}, {"status", row_status_name(row.status)}};
    if (row.status == RowStatus::Traded && row.result) {
      const auto& r = *row.result;
      j["buy_index"] = r.plan.buy_index;
      j["sell_index"] = r.plan.sell_index;
      j["buy_price"] = round_significant(r.buy_price, kPriceDigits);
      j["sell_price"] = round_significant(r.sell_price, kPriceDigits);
      j["profit_pct"] = round_fixed(r.profit_pct, kProfitDecimals);
    }
    if (!row.message.empty()) j["message"] = row.message;
    rows.push_back(std::move(j));
  }
  return rows;
}

}  // namespace rlsforecast
