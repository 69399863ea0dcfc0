#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rlsforecast/predictor.hpp"
#include "rlsforecast/strategy.hpp"
#include "rlsforecast/sweep.hpp"
#include "rlsforecast/timeseries.hpp"

namespace rlsforecast {

// Plot-ready long-form CSV writers. Each has a JSON twin holding the same
// rounded numbers; undefined correlations are empty CSV fields / JSON null.

void write_trace_csv(std::ostream& out, const PredictionTrace& trace);
void write_snapshots_csv(std::ostream& out, const PredictionTrace& trace);
void write_forecast_csv(std::ostream& out, std::span<const ForecastPoint> forecast);
void write_surface_csv(std::ostream& out, const CorrelationSurface& surface);
/// `key` is the first column name, "n" or "l".
void write_profile_csv(std::ostream& out, std::span<const ProfilePoint> profile, std::string_view key);
/// Rows that did not trade carry empty numeric fields and `no_trade` or
/// `error` in the profit column.
void write_table_csv(std::ostream& out, std::span<const TableRow> table);

/// Reads back write_surface_csv output.
CorrelationSurface read_surface_csv(std::istream& in);

nlohmann::json series_json(const PriceSeries& series);
nlohmann::json trace_json(const PredictionTrace& trace);
nlohmann::json forecast_json(std::span<const ForecastPoint> forecast);
nlohmann::json surface_json(const CorrelationSurface& surface);
nlohmann::json profile_json(std::span<const ProfilePoint> profile, std::string_view key);
nlohmann::json table_json(std::span<const TableRow> table);

const char* row_status_name(RowStatus status);

}  // namespace rlsforecast
